#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "modwij/convergence.hpp"
#include "modwij/metric.hpp"
#include "modwij/modulus.hpp"

namespace modwij {

/// Finite-horizon exceptional set: a sparse index set off which the distance
/// sequence stays close to the candidate limit, with its f-density at the
/// horizon certified.
struct ExceptionalSetResult {
    std::vector<std::uint64_t> set;       // sorted indices in [1, horizon]
    std::vector<unsigned> levels;         // thresholds j_1 < j_2 < ... used
    std::vector<std::uint64_t> cuts;      // prefix cut n_k per level
    double f_density_ratio_at_horizon = 0;
    double max_deviation_outside = 0;
    double target = 0;
    bool target_missed = false;  // certificate failed: escaped level-1 deviators
                                 // outside the set, or ratio above target
};

/// Builds the layered exceptional set. Level sets B_j collect indices with
/// deviation >= 1/j; layer k keeps B_{j_k} - B_{j_{k-1}} from its cut n_k
/// onward, where n_k is the smallest cut whose tail contributes f-density
/// at most target * 2^(1-k) at the horizon.
template <class P>
ExceptionalSetResult exceptional_set(const SetSequence<P>& seq, const P& x, const ClosedSet<P>& a,
                                     const Modulus& f, std::uint64_t horizon,
                                     const std::vector<unsigned>& levels, double target = 0.01) {
    if (horizon < 1) throw std::domain_error("exceptional_set: horizon must be >= 1");
    if (levels.empty()) throw std::invalid_argument("exceptional_set: need at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1 || (i > 0 && levels[i] <= levels[i - 1]))
            throw std::invalid_argument(
                "exceptional_set: levels must be strictly increasing positive integers");
    }
    if (!(target > 0)) throw std::invalid_argument("exceptional_set: target must be positive");

    ExceptionalSetResult res;
    res.levels = levels;
    res.target = target;

    const double da = a.dist_to(x);
    std::vector<double> dev(horizon + 1, 0.0);
    for (std::uint64_t k = 1; k <= horizon; ++k) dev[k] = std::abs(seq.dist(x, k) - da);

    const double fH =
        f.is_linear() ? static_cast<double>(horizon) : f(static_cast<double>(horizon));
    auto tail_ratio = [&](std::uint64_t count) {
        if (f.is_linear()) return static_cast<double>(count) / static_cast<double>(horizon);
        return f(static_cast<double>(count)) / fH;
    };

    std::vector<char> in_set(horizon + 1, 0);
    double level_target = target;
    std::uint64_t prev_cut = 0;
    double prev_threshold = HUGE_VAL;  // deviation upper bound of earlier layers
    for (unsigned j : levels) {
        const double threshold = 1.0 / static_cast<double>(j);
        // Layer members: indices in B_j not captured by earlier levels.
        std::vector<std::uint64_t> layer;
        for (std::uint64_t k = 1; k <= horizon; ++k)
            if (dev[k] >= threshold && dev[k] < prev_threshold) layer.push_back(k);

        // Smallest cut > prev_cut whose tail keeps f-density within the
        // layer target; the tail count is nonincreasing in the cut.
        std::uint64_t cut = prev_cut + 1;
        if (!layer.empty()) {
            std::uint64_t lo = prev_cut, hi = horizon;  // invariant: hi valid, lo unknown
            auto tail_count = [&](std::uint64_t c) {
                return static_cast<std::uint64_t>(
                    layer.end() - std::upper_bound(layer.begin(), layer.end(), c));
            };
            if (tail_ratio(tail_count(lo)) <= level_target) {
                cut = prev_cut + 1;
            } else {
                while (lo + 1 < hi) {
                    const std::uint64_t mid = lo + (hi - lo) / 2;
                    (tail_ratio(tail_count(mid)) <= level_target ? hi : lo) = mid;
                }
                cut = std::max(hi, prev_cut + 1);
            }
            for (auto k : layer)
                if (k > cut) in_set[k] = 1;
        }
        res.cuts.push_back(cut);
        prev_cut = cut;
        prev_threshold = threshold;
        level_target *= 0.5;
    }

    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        if (in_set[k]) {
            res.set.push_back(k);
            ++count;
        } else {
            res.max_deviation_outside = std::max(res.max_deviation_outside, dev[k]);
        }
    }
    res.f_density_ratio_at_horizon = tail_ratio(count);
    const double level1 = 1.0 / static_cast<double>(levels.front());
    res.target_missed =
        res.max_deviation_outside >= level1 || res.f_density_ratio_at_horizon > target;
    return res;
}

}  // namespace modwij
