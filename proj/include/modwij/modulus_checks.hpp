#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modwij/grid.hpp"
#include "modwij/modulus.hpp"

namespace modwij {

/// Float slack for checks against exact formulas.
inline double exact_tol(double scale) { return 1e-12 * (scale + 1.0); }
/// Float slack for values that went through composed evaluations.
inline double composed_tol(double scale) { return 1e-9 * (scale + 1.0); }

struct AxiomCounterexample {
    double x = 0, y = 0;
    double lhs = 0, rhs = 0;
};

/// Refutation-only report: a failed flag carries a concrete counterexample;
/// a passing flag means "no violation found on this grid".
struct AxiomReport {
    bool zero_ok = false;
    bool monotone_ok = false;
    bool subadditive_ok = false;
    bool continuity_ok = false;
    double value_at_zero = 0;
    std::optional<AxiomCounterexample> monotone_counterexample;
    std::optional<AxiomCounterexample> subadditive_counterexample;
    // Max adjacent-point oscillation on the grid and on two half-spacing
    // refinements; continuity_ok iff the sequence does not grow.
    double oscillation[3] = {0, 0, 0};

    bool all_ok() const { return zero_ok && monotone_ok && subadditive_ok && continuity_ok; }
};

namespace detail {

inline double max_adjacent_oscillation(const Modulus& m, const std::vector<double>& grid) {
    double osc = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        osc = std::max(osc, std::abs(m(grid[i + 1]) - m(grid[i])));
    return osc;
}

}  // namespace detail

inline AxiomReport check_axioms(const Modulus& m, const std::vector<double>& grid,
                                std::size_t max_pairs = 10000) {
    if (grid.empty()) throw std::invalid_argument("check_axioms: empty grid");
    for (double x : grid)
        if (!(x >= 0)) throw std::invalid_argument("check_axioms: grid must be nonnegative");
    std::vector<double> g = grid;
    std::sort(g.begin(), g.end());

    AxiomReport rep;
    rep.value_at_zero = m(0.0);
    rep.zero_ok = rep.value_at_zero == 0.0;

    rep.monotone_ok = true;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double fx = m(g[i]), fy = m(g[i + 1]);
        if (fy < fx - exact_tol(std::abs(fx))) {
            rep.monotone_ok = false;
            rep.monotone_counterexample = {g[i], g[i + 1], fx, fy};
            break;
        }
    }

    rep.subadditive_ok = true;
    auto check_pair = [&](double x, double y) {
        const double fx = m(x), fy = m(y), fxy = m(x + y);
        if (fxy > fx + fy + exact_tol(fx + fy)) {
            rep.subadditive_ok = false;
            rep.subadditive_counterexample = {x, y, fxy, fx + fy};
            return false;
        }
        return true;
    };
    if (g.size() * g.size() <= 2 * max_pairs) {
        for (std::size_t i = 0; i < g.size() && rep.subadditive_ok; ++i)
            for (std::size_t j = i; j < g.size(); ++j)
                if (!check_pair(g[i], g[j])) break;
    } else {
        std::mt19937_64 rng(20240915);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (std::size_t t = 0; t < max_pairs && rep.subadditive_ok; ++t)
            check_pair(g[pick(rng)], g[pick(rng)]);
    }

    // Continuity protocol: refine the grid spacing twice; the observed
    // max adjacent oscillation must not grow.
    std::vector<double> g1 = refine_grid(g), g2 = refine_grid(g1);
    rep.oscillation[0] = detail::max_adjacent_oscillation(m, g);
    rep.oscillation[1] = detail::max_adjacent_oscillation(m, g1);
    rep.oscillation[2] = detail::max_adjacent_oscillation(m, g2);
    const double slack = exact_tol(rep.oscillation[0]);
    rep.continuity_ok = rep.oscillation[1] <= rep.oscillation[0] + slack &&
                        rep.oscillation[2] <= rep.oscillation[1] + slack;
    return rep;
}

struct BetaEstimate {
    double beta_estimate = 0;   // f(t_max) / t_max
    double inf_estimate = 0;    // min over grid of f(t)/t
    double gap = 0;             // |beta_estimate - inf_estimate|
    bool ratios_nonincreasing = false;
};

/// Finite-grid estimate of lim f(t)/t = inf f(t)/t over t > 0.
inline BetaEstimate beta_limit(const Modulus& m, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("beta_limit: empty grid");
    for (double t : grid)
        if (!(t > 0)) throw std::invalid_argument("beta_limit: grid must be positive");
    BetaEstimate est;
    est.inf_estimate = HUGE_VAL;
    est.ratios_nonincreasing = true;
    double prev = HUGE_VAL;
    for (double t : grid) {
        const double r = m(t) / t;
        est.inf_estimate = std::min(est.inf_estimate, r);
        if (r > prev + composed_tol(prev)) est.ratios_nonincreasing = false;
        prev = r;
        est.beta_estimate = r;
    }
    est.gap = std::abs(est.beta_estimate - est.inf_estimate);
    return est;
}

struct SlowVariationRow {
    double a = 0;
    std::vector<double> x;       // grid points actually used
    std::vector<double> ratio;   // f(a*x)/f(x)
    std::vector<double> skipped; // grid points with f(x) == 0
    bool monotone_towards_one = false;
    double final_ratio = 0;
    bool consistent = false;
};

struct SlowVariationProfile {
    std::vector<SlowVariationRow> rows;
    double tol = 0.2;
    bool consistent = false;  // all rows consistent
};

/// Tabulates f(a x)/f(x) along x_grid for each a. A row is "consistent with
/// slowly varying" iff the final ratio is within tol of 1 and, for a > 1,
/// the ratios approach 1 monotonically.
inline SlowVariationProfile slow_variation_profile(const Modulus& m,
                                                   const std::vector<double>& a_list,
                                                   const std::vector<double>& x_grid,
                                                   double tol = 0.2) {
    SlowVariationProfile prof;
    prof.tol = tol;
    prof.consistent = true;
    for (double a : a_list) {
        if (!(a > 0)) throw std::invalid_argument("slow_variation_profile: a must be positive");
        SlowVariationRow row;
        row.a = a;
        for (double x : x_grid) {
            const double fx = m(x);
            if (fx == 0.0) {
                row.skipped.push_back(x);
                continue;
            }
            row.x.push_back(x);
            row.ratio.push_back(m(a * x) / fx);
        }
        if (!row.ratio.empty()) {
            row.final_ratio = row.ratio.back();
            row.monotone_towards_one = true;
            for (std::size_t i = 0; i + 1 < row.ratio.size(); ++i) {
                const double d0 = std::abs(row.ratio[i] - 1.0);
                const double d1 = std::abs(row.ratio[i + 1] - 1.0);
                if (d1 > d0 + composed_tol(d0)) row.monotone_towards_one = false;
            }
            row.consistent = std::abs(row.final_ratio - 1.0) <= tol &&
                             (a <= 1.0 || row.monotone_towards_one);
        }
        prof.consistent = prof.consistent && row.consistent;
        prof.rows.push_back(std::move(row));
    }
    return prof;
}

/// Default x-grid for slow-variation profiling: the exact-form knot
/// abscissas when available (scaling stays within one segment there and the
/// ratios decay coherently), else a geometric grid.
inline std::vector<double> slow_variation_grid(const Modulus& m, double lo = 1.0, double hi = 1e6,
                                               double factor = 10.0) {
    if (m.has_exact_form()) {
        const auto& xs = m.exact_form().knots_x();
        std::vector<double> g;
        for (std::size_t k = 1; k + 2 < xs.size(); ++k) {
            const double xd = xs[k].convert_to<double>();
            if (std::isfinite(xd) && xd >= lo) g.push_back(xd);
        }
        if (g.size() >= 2) return g;
    }
    return geometric_grid(lo, hi, factor);
}

/// Searches the grid for a midpoint concavity violation
/// m((x+y)/2) < (m(x)+m(y))/2; pairs are scanned in lexicographic order.
/// For moduli with an exact piecewise-affine form, slope monotonicity is
/// checked exactly instead.
inline std::optional<std::pair<double, double>> concavity_witness(
    const Modulus& m, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("concavity_witness: empty grid");
    if (m.has_exact_form()) {
        const auto& pwa = m.exact_form();
        if (auto seg = pwa.first_slope_increase()) {
            return std::make_pair(pwa.knots_x()[*seg].convert_to<double>(),
                                  pwa.knots_x()[*seg + 2].convert_to<double>());
        }
        return std::nullopt;
    }
    std::vector<double> g = grid;
    std::sort(g.begin(), g.end());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const double mid = 0.5 * (g[i] + g[j]);
            const double avg = 0.5 * (m(g[i]) + m(g[j]));
            if (m(mid) < avg - composed_tol(avg)) return std::make_pair(g[i], g[j]);
        }
    }
    return std::nullopt;
}

/// Builds a modulus as the windowed oscillation of a uniformly continuous g:
/// f(t) = max |g(x) - g(y)| over x, y in [0, W] with |x - y| <= t, tabulated
/// at multiples of h and interpolated. This is exact only when g attains its
/// oscillation inside the window; beyond W the table's last value extends.
inline Modulus modulus_from_uniform_function(const std::function<double(double)>& g, double window,
                                             double step) {
    if (!(window > 0) || !(step > 0) || step > window)
        throw std::invalid_argument("modulus_from_uniform_function: need 0 < step <= window");
    const auto n = static_cast<std::size_t>(window / step + 0.5);
    std::vector<double> samples(n + 1);
    for (std::size_t i = 0; i <= n; ++i) samples[i] = g(static_cast<double>(i) * step);

    // osc(L) = max |g((i+L)h) - g(ih)|; f at lag t = Lh is the running max.
    std::vector<double> table(n + 1, 0.0);
    for (std::size_t lag = 1; lag <= n; ++lag) {
        double osc = 0;
        for (std::size_t i = 0; i + lag <= n; ++i)
            osc = std::max(osc, std::abs(samples[i + lag] - samples[i]));
        table[lag] = std::max(table[lag - 1], osc);
    }
    if (table[n] == 0.0)
        throw std::invalid_argument(
            "modulus_from_uniform_function: g is constant on the window");

    auto tab = std::make_shared<std::vector<double>>(std::move(table));
    auto eval = [tab, step](double t) {
        const double pos = t / step;
        const auto lo = static_cast<std::size_t>(pos);
        if (lo + 1 >= tab->size()) return tab->back();
        const double frac = pos - static_cast<double>(lo);
        return (*tab)[lo] + frac * ((*tab)[lo + 1] - (*tab)[lo]);
    };
    // The window bound makes the result bounded, hence slowly varying.
    return Modulus("osc(g)", eval,
                   {.unbounded = false, .concave = false, .slowly_varying = true});
}

}  // namespace modwij
