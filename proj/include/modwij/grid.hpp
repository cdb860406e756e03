#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace modwij {

/// Geometric grid of reals: lo, lo*factor, ... capped at hi (hi always included).
inline std::vector<double> geometric_grid(double lo, double hi, double factor) {
    if (lo <= 0 || hi < lo || factor <= 1.0)
        throw std::invalid_argument("geometric_grid: need 0 < lo <= hi, factor > 1");
    std::vector<double> g;
    for (double x = lo; x < hi; x *= factor) g.push_back(x);
    g.push_back(hi);
    return g;
}

/// Geometric grid of integer horizons; consecutive duplicates collapsed.
inline std::vector<std::uint64_t> geometric_int_grid(std::uint64_t lo, std::uint64_t hi,
                                                     double factor) {
    if (lo < 1 || hi < lo || factor <= 1.0)
        throw std::invalid_argument("geometric_int_grid: need 1 <= lo <= hi, factor > 1");
    std::vector<std::uint64_t> g;
    double x = static_cast<double>(lo);
    while (x < static_cast<double>(hi)) {
        auto n = static_cast<std::uint64_t>(x);
        if (g.empty() || n > g.back()) g.push_back(n);
        x *= factor;
    }
    if (g.empty() || hi > g.back()) g.push_back(hi);
    return g;
}

/// Uniform grid lo, lo+step, ... (hi included; final point clamped to hi).
inline std::vector<double> linear_grid(double lo, double hi, double step) {
    if (step <= 0 || hi < lo) throw std::invalid_argument("linear_grid: need step > 0, hi >= lo");
    std::vector<double> g;
    const auto n = static_cast<std::size_t>((hi - lo) / step + 0.5);
    g.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
    if (g.back() < hi) g.push_back(hi);
    if (g.back() > hi) g.back() = hi;
    return g;
}

/// Halves the spacing of a sorted grid by inserting midpoints.
inline std::vector<double> refine_grid(const std::vector<double>& g) {
    std::vector<double> r;
    r.reserve(g.size() * 2);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        r.push_back(g[i]);
        r.push_back(0.5 * (g[i] + g[i + 1]));
    }
    if (!g.empty()) r.push_back(g.back());
    return r;
}

struct GridSpec {
    double lo = 1;
    double hi = 1 << 20;
    double factor_or_step = 2;
    bool geometric = true;

    std::vector<double> points() const {
        return geometric ? geometric_grid(lo, hi, factor_or_step)
                         : linear_grid(lo, hi, factor_or_step);
    }
};

}  // namespace modwij
