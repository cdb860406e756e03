#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modwij/bigint.hpp"
#include "modwij/modulus.hpp"
#include "modwij/natset.hpp"

namespace modwij {

inline double natural_density_ratio(const NatSet& k, std::uint64_t n) {
    if (n < 1) throw std::domain_error("natural_density_ratio: n must be >= 1");
    return static_cast<double>(k.count_upto64(n)) / static_cast<double>(n);
}

/// f(|K(n)|) / f(n) for an unbounded modulus f. When f is exactly linear the
/// coefficient cancels and the plain counting ratio is returned, exactly.
inline double f_density_ratio(const NatSet& k, const Modulus& f, std::uint64_t n) {
    if (n < 1) throw std::domain_error("f_density_ratio: n must be >= 1");
    if (!f.claims().unbounded)
        throw std::invalid_argument("f_density_ratio: modulus '" + f.name() +
                                    "' is not claimed unbounded");
    const auto count = k.count_upto64(n);
    if (f.is_linear()) return static_cast<double>(count) / static_cast<double>(n);
    return f(static_cast<double>(count)) / f(static_cast<double>(n));
}

/// Exact-rational variant; requires f to carry an exact form.
inline BigRat f_density_ratio_exact(const NatSet& k, const Modulus& f, const BigInt& n) {
    if (n < 1) throw std::domain_error("f_density_ratio_exact: n must be >= 1");
    return f.eval_exact(k.count_upto(n)) / f.eval_exact(n);
}

enum class TrendVerdict { consistent, inconclusive, diverging };

/// Finite-horizon stand-in for a limit: sampled values along a horizon grid
/// plus a verdict. "consistent" never means "equals"; it is always relative
/// to the recorded grid and tolerance.
struct RatioTrace {
    std::vector<std::uint64_t> grid;
    std::vector<BigInt> counts;   // |K(n)| per grid point (empty for non-density traces)
    std::vector<double> values;
    TrendVerdict verdict = TrendVerdict::inconclusive;
    std::optional<double> limit;  // candidate the verdict refers to
    double tol = 0.01;
    int trend = 0;                // sign of the last-window slope
    double last_window_oscillation = 0;

    static constexpr std::size_t window = 4;
};

namespace detail {

/// Shared verdict rule. With a candidate limit: consistent iff the last value
/// is within tol and the last window is settled; diverging iff the distance
/// to the candidate grows monotonically across the window and ends beyond
/// tol. Without a candidate: consistent around the last value iff settled;
/// diverging iff the window grows monotonically and has at least doubled.
inline void assign_verdict(RatioTrace& t, std::optional<double> candidate) {
    const auto n = t.values.size();
    if (n == 0) return;
    const std::size_t w = std::min(RatioTrace::window, n);
    const std::size_t start = n - w;
    double lo = t.values[start], hi = t.values[start];
    for (std::size_t i = start; i < n; ++i) {
        lo = std::min(lo, t.values[i]);
        hi = std::max(hi, t.values[i]);
    }
    t.last_window_oscillation = hi - lo;
    const double slope = t.values[n - 1] - t.values[start];
    t.trend = slope > 0 ? 1 : (slope < 0 ? -1 : 0);
    const double last = t.values[n - 1];

    if (candidate) {
        t.limit = candidate;
        if (std::abs(last - *candidate) <= t.tol && t.last_window_oscillation <= t.tol) {
            t.verdict = TrendVerdict::consistent;
            return;
        }
        bool moving_away = true;
        for (std::size_t i = start; i + 1 < n; ++i)
            if (std::abs(t.values[i + 1] - *candidate) <= std::abs(t.values[i] - *candidate))
                moving_away = false;
        t.verdict = (moving_away && std::abs(last - *candidate) > t.tol)
                        ? TrendVerdict::diverging
                        : TrendVerdict::inconclusive;
        return;
    }

    if (t.last_window_oscillation <= t.tol) {
        t.verdict = TrendVerdict::consistent;
        t.limit = last;
        return;
    }
    bool increasing = true;
    for (std::size_t i = start; i + 1 < n; ++i)
        if (t.values[i + 1] <= t.values[i]) increasing = false;
    t.verdict = (increasing && last >= 2.0 * t.values[start]) ? TrendVerdict::diverging
                                                              : TrendVerdict::inconclusive;
}

}  // namespace detail

/// Fills in verdict, trend and oscillation fields of a trace whose grid and
/// values are already populated.
inline void finish_ratio_trace(RatioTrace& trace, std::optional<double> candidate) {
    detail::assign_verdict(trace, candidate);
}

/// Density ratios along a geometric horizon grid with a trend verdict.
/// `f` may be null for the natural density; `candidate` is the limit the
/// verdict is tested against (pass nullopt to let the trace self-report).
inline RatioTrace density_trend(const NatSet& k, const Modulus* f,
                                const std::vector<std::uint64_t>& grid,
                                std::optional<double> candidate = std::nullopt,
                                double tol = 0.01) {
    if (grid.size() < 4) throw std::invalid_argument("density_trend: need >= 4 grid points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("density_trend: grid must increase");
    RatioTrace t;
    t.tol = tol;
    t.grid = grid;
    for (auto n : grid) {
        t.counts.emplace_back(k.count_upto(BigInt(n)));
        const auto c = t.counts.back().convert_to<std::uint64_t>();
        if (f == nullptr || f->is_linear())
            t.values.push_back(static_cast<double>(c) / static_cast<double>(n));
        else
            t.values.push_back((*f)(static_cast<double>(c)) / (*f)(static_cast<double>(n)));
    }
    detail::assign_verdict(t, candidate);
    return t;
}

/// Default horizon grid: 2^j for j = 4..20.
inline std::vector<std::uint64_t> default_density_grid() {
    std::vector<std::uint64_t> g;
    for (unsigned j = 4; j <= 20; ++j) g.push_back(std::uint64_t{1} << j);
    return g;
}

}  // namespace modwij
