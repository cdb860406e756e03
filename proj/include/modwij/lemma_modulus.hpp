#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modwij/bigint.hpp"
#include "modwij/modulus.hpp"
#include "modwij/natset.hpp"
#include "modwij/piecewise_affine.hpp"

namespace modwij {

/// Thrown when the source set runs out of elements (or out of scannable
/// horizon) before the requested number of knots is reached.
class LemmaConstructionError : public std::runtime_error {
public:
    LemmaConstructionError(const std::string& what, unsigned achieved)
        : std::runtime_error(what), achieved_knots(achieved) {}
    unsigned achieved_knots;
};

/// Knot schedule n_0 = 0 < n_1 < n_2 < ... driving the piecewise-affine
/// modulus adapted to a set K, together with the exact counts |K(n_k)|.
struct KnotSchedule {
    std::vector<BigInt> knots;   // n_0 .. n_k_max
    std::vector<BigInt> counts;  // counts[k] = |{m in K : m <= n_k}|

    std::size_t knot_count() const { return knots.size(); }

    bool gaps_strictly_increasing() const {
        for (std::size_t k = 0; k + 2 < knots.size(); ++k)
            if (!(knots[k + 1] - knots[k] < knots[k + 2] - knots[k + 1])) return false;
        return true;
    }
    bool doubling() const {  // 2 n_k < n_{k+1} for k >= 1
        for (std::size_t k = 1; k + 1 < knots.size(); ++k)
            if (!(2 * knots[k] < knots[k + 1])) return false;
        return true;
    }
    bool growth_factor_at_least_index() const {  // n_{k+1} >= k * n_k for k >= 1
        for (std::size_t k = 1; k + 1 < knots.size(); ++k)
            if (!(knots[k + 1] >= BigInt(k) * knots[k])) return false;
        return true;
    }
    bool count_exceeds_previous_knot() const {  // |K(n_{k+1})| > n_k for k >= 1
        for (std::size_t k = 1; k + 1 < knots.size(); ++k)
            if (!(counts[k + 1] > knots[k])) return false;
        return true;
    }
    bool all_invariants() const {
        return gaps_strictly_increasing() && doubling() && growth_factor_at_least_index() &&
               count_exceeds_previous_knot();
    }
};

struct LemmaModulusResult {
    Modulus modulus;
    KnotSchedule schedule;

    /// Exact f(|K(n_k)|) / f(n_k) at a knot index k >= 1.
    BigRat density_ratio_at_knot(std::size_t k) const {
        return modulus.eval_exact(schedule.counts[k]) / BigRat(BigInt(k));
    }

    /// Exact f(a * n_k) / f(n_k) for integer a >= 1 (k >= 1). Meaningful while
    /// a * n_k stays inside the stored schedule span.
    BigRat scale_ratio_at_knot(unsigned a, std::size_t k) const {
        return modulus.eval_exact(BigInt(a) * schedule.knots[k]) / BigRat(BigInt(k));
    }
};

/// Builds the unbounded, concave, slowly varying piecewise-affine modulus
/// under which K has full density. The schedule is the deterministic greedy
/// rule: n_{k+1} is the smallest integer m with m >= k*n_k, m > 2*n_k,
/// m - n_k > n_k - n_{k-1}, and at least n_k + 1 elements of K <= m;
/// n_1 is the smallest m >= 2 with an element of K <= m. All arithmetic is
/// exact.
inline LemmaModulusResult lemma_modulus(const NatSet& K, unsigned k_max) {
    if (k_max < 3) throw std::invalid_argument("lemma_modulus: k_max must be >= 3");

    KnotSchedule sched;
    sched.knots = {BigInt(0)};
    sched.counts = {BigInt(0)};

    auto element_or_fail = [&](const BigInt& j, unsigned achieved) {
        std::optional<BigInt> e;
        try {
            e = K.element(j);
        } catch (const SetExhausted&) {
            e = std::nullopt;
        }
        if (!e)
            throw LemmaConstructionError("lemma_modulus: set '" + K.name() +
                                             "' exhausted; achieved " +
                                             std::to_string(achieved) + " knots of " +
                                             std::to_string(k_max),
                                         achieved);
        return *e;
    };

    const BigInt e1 = element_or_fail(1, 0);
    sched.knots.push_back(e1 > 2 ? e1 : BigInt(2));
    sched.counts.push_back(K.count_upto(sched.knots[1]));

    sched.knots.reserve(k_max + 1);
    sched.counts.reserve(k_max + 1);
    for (unsigned k = 1; k < k_max; ++k) {
        const BigInt nk = sched.knots[k];
        const BigInt nk1 = sched.knots[k - 1];
        const BigInt e = element_or_fail(nk + 1, k);
        BigInt m = BigInt(k) * nk;
        if (m < 2 * nk + 1) m = 2 * nk + 1;
        if (m < 2 * nk - nk1 + 1) m = 2 * nk - nk1 + 1;
        const bool element_binds = e >= m;
        if (element_binds) m = e;
        sched.knots.push_back(m);
        if (element_binds) {
            sched.counts.push_back(nk + 1);  // elements of K <= e_{n_k+1} number exactly n_k+1
        } else {
            try {
                sched.counts.push_back(K.count_upto(m));
            } catch (const SetExhausted&) {
                throw LemmaConstructionError(
                    "lemma_modulus: set '" + K.name() + "' not countable up to " + m.str() +
                        "; achieved " + std::to_string(k) + " knots of " + std::to_string(k_max),
                    k);
            }
        }
    }

    std::vector<BigRat> ys;
    ys.reserve(sched.knots.size());
    for (std::size_t k = 0; k < sched.knots.size(); ++k) ys.emplace_back(BigInt(k));
    auto pwa = std::make_shared<const PiecewiseAffine>(sched.knots, std::move(ys));

    const std::string name = "lemma(" + K.name() + "," + std::to_string(k_max) + ")";
    auto eval = [pwa](double x) { return (*pwa)(x); };
    Modulus m(name, eval, {.unbounded = true, .concave = true, .slowly_varying = true}, pwa);
    return LemmaModulusResult{std::move(m), std::move(sched)};
}

}  // namespace modwij
