#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modwij {

/// A metric space over points of type P, with a finite list of witness
/// points standing in for "each x in X" in the convergence definitions.
template <class P>
struct MetricSpace {
    std::string name;
    std::function<double(const P&, const P&)> dist;
    std::vector<P> witness_points;
};

/// A non-empty closed set, represented by its distance oracle x -> d(x, A).
template <class P>
struct ClosedSet {
    std::string name;
    std::function<double(const P&)> dist_to;

    double operator()(const P& x) const { return dist_to(x); }
};

/// An indexed family k -> A_k of closed sets, k >= 1.
template <class P>
struct SetSequence {
    std::string name;
    std::function<ClosedSet<P>(std::uint64_t)> at;

    double dist(const P& x, std::uint64_t k) const { return at(k).dist_to(x); }
};

template <class P>
ClosedSet<P> singleton(const MetricSpace<P>& space, P p, std::string name = "") {
    auto d = space.dist;
    if (name.empty()) name = "singleton";
    return ClosedSet<P>{std::move(name), [d, p](const P& x) { return d(x, p); }};
}

template <class P>
ClosedSet<P> finite_closed_set(const MetricSpace<P>& space, std::vector<P> points,
                               std::string name = "finite_set") {
    if (points.empty())
        throw std::invalid_argument("finite_closed_set: a closed set must be non-empty");
    auto d = space.dist;
    return ClosedSet<P>{std::move(name), [d, points](const P& x) {
                            double best = d(x, points.front());
                            for (std::size_t i = 1; i < points.size(); ++i)
                                best = std::min(best, d(x, points[i]));
                            return best;
                        }};
}

/// Circle |z - center| = radius in a space whose metric is induced by a
/// norm-like dist (exact formula |dist(x, center) - radius|).
template <class P>
ClosedSet<P> circle(const MetricSpace<P>& space, P center, double radius,
                    std::string name = "circle") {
    if (!(radius > 0)) throw std::invalid_argument("circle: radius must be positive");
    auto d = space.dist;
    return ClosedSet<P>{std::move(name), [d, center, radius](const P& x) {
                            return std::abs(d(x, center) - radius);
                        }};
}

inline MetricSpace<double> real_line() {
    return {"R", [](double a, double b) { return std::abs(a - b); }, {0.0, 1.0, -2.5}};
}

inline MetricSpace<double> half_line() {
    // [0, infinity); witness points are clamped nonnegative.
    return {"[0,inf)", [](double a, double b) { return std::abs(a - b); }, {0.0, 1.0, 10.0}};
}

inline MetricSpace<std::complex<double>> complex_plane() {
    return {"C",
            [](const std::complex<double>& a, const std::complex<double>& b) {
                return std::abs(a - b);
            },
            {{0.0, 0.0}, {1.0, 0.0}, {-2.5, 0.0}}};
}

struct MetricSanity {
    bool symmetric = true;
    bool zero_self_distance = true;
    bool triangle = true;
    bool ok() const { return symmetric && zero_self_distance && triangle; }
};

/// Checks the metric axioms on all witness-point triples.
template <class P>
MetricSanity metric_sanity(const MetricSpace<P>& space, double tol = 1e-12) {
    MetricSanity s;
    const auto& w = space.witness_points;
    for (const auto& a : w) {
        if (std::abs(space.dist(a, a)) > tol) s.zero_self_distance = false;
        for (const auto& b : w) {
            if (std::abs(space.dist(a, b) - space.dist(b, a)) > tol) s.symmetric = false;
            for (const auto& c : w)
                if (space.dist(a, c) > space.dist(a, b) + space.dist(b, c) + tol)
                    s.triangle = false;
        }
    }
    return s;
}

}  // namespace modwij
