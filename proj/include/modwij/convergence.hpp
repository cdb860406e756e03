#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "modwij/metric.hpp"
#include "modwij/modulus.hpp"

namespace modwij {

/// One witnessed deviation question: how often is |d(x, A_k) - d(x, A)|
/// at least epsilon?
template <class P>
struct DeviationSpec {
    P x;
    double epsilon;
    ClosedSet<P> limit;

    DeviationSpec(P point, double eps, ClosedSet<P> a)
        : x(std::move(point)), epsilon(eps), limit(std::move(a)) {
        if (!(epsilon > 0)) throw std::invalid_argument("DeviationSpec: epsilon must be > 0");
    }

    double deviation(const SetSequence<P>& seq, std::uint64_t k) const {
        return std::abs(seq.dist(x, k) - limit.dist_to(x));
    }
};

template <class P>
std::uint64_t deviation_count(const SetSequence<P>& seq, const DeviationSpec<P>& spec,
                              std::uint64_t n) {
    if (n < 1) throw std::domain_error("deviation_count: n must be >= 1");
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (spec.deviation(seq, k) >= spec.epsilon) ++c;
    return c;
}

template <class P>
double stat_ratio(const SetSequence<P>& seq, const DeviationSpec<P>& spec, std::uint64_t n) {
    return static_cast<double>(deviation_count(seq, spec, n)) / static_cast<double>(n);
}

template <class P>
double f_stat_ratio(const SetSequence<P>& seq, const DeviationSpec<P>& spec, const Modulus& f,
                    std::uint64_t n) {
    if (!f.claims().unbounded)
        throw std::invalid_argument("f_stat_ratio: modulus '" + f.name() +
                                    "' is not claimed unbounded");
    const auto c = deviation_count(seq, spec, n);
    if (f.is_linear()) return static_cast<double>(c) / static_cast<double>(n);
    return f(static_cast<double>(c)) / f(static_cast<double>(n));
}

template <class P>
double cesaro_mean(const SetSequence<P>& seq, const P& x, std::uint64_t n) {
    if (n < 1) throw std::domain_error("cesaro_mean: n must be >= 1");
    double sum = 0;
    for (std::uint64_t k = 1; k <= n; ++k) sum += seq.dist(x, k);
    return sum / static_cast<double>(n);
}

template <class P>
double strong_cesaro_mean(const SetSequence<P>& seq, const P& x, const ClosedSet<P>& a,
                          std::uint64_t n) {
    if (n < 1) throw std::domain_error("strong_cesaro_mean: n must be >= 1");
    const double da = a.dist_to(x);
    double sum = 0;
    for (std::uint64_t k = 1; k <= n; ++k) sum += std::abs(seq.dist(x, k) - da);
    return sum / static_cast<double>(n);
}

template <class P>
double strong_cesaro_f_mean(const SetSequence<P>& seq, const P& x, const ClosedSet<P>& a,
                            const Modulus& f, std::uint64_t n) {
    if (n < 1) throw std::domain_error("strong_cesaro_f_mean: n must be >= 1");
    const double da = a.dist_to(x);
    double sum = 0;
    for (std::uint64_t k = 1; k <= n; ++k) sum += f(std::abs(seq.dist(x, k) - da));
    return sum / static_cast<double>(n);
}

/// Mean of |d(x, A_k) - d(x, A)| over the dyadic block k in [2^r, 2^{r+1}-1],
/// optionally pushed through a modulus. This is the window the dyadic-block
/// summability criterion looks at.
template <class P>
double dyadic_block_mean(const SetSequence<P>& seq, const P& x, const ClosedSet<P>& a,
                         const Modulus* f, unsigned r) {
    const double da = a.dist_to(x);
    const std::uint64_t lo = std::uint64_t{1} << r;
    double sum = 0;
    for (std::uint64_t k = lo; k < 2 * lo; ++k) {
        const double dev = std::abs(seq.dist(x, k) - da);
        sum += f ? (*f)(dev) : dev;
    }
    return sum / static_cast<double>(lo);
}

struct BoundedProbe {
    double sup = 0;             // max of d(x, A_k) for k <= n
    std::uint64_t argmax = 0;
    double sup_half = 0;        // same over k <= n/2
    bool growth = false;        // sup grew materially from n/2 to n
};

/// Finite-horizon boundedness probe. The growth flag is a heuristic
/// unboundedness signal: the sup over k <= n exceeds the sup over k <= n/2
/// by more than 1%.
template <class P>
BoundedProbe bounded_probe(const SetSequence<P>& seq, const P& x, std::uint64_t n) {
    if (n < 1) throw std::domain_error("bounded_probe: n must be >= 1");
    BoundedProbe p;
    const std::uint64_t half = n / 2;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const double d = seq.dist(x, k);
        if (d > p.sup) {
            p.sup = d;
            p.argmax = k;
        }
        if (k == half) p.sup_half = p.sup;
    }
    if (half == 0) p.sup_half = p.sup;
    p.growth = p.sup > 1.01 * p.sup_half;
    return p;
}

}  // namespace modwij
