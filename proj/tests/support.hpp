#pragma once

// Shared test utilities: independent oracles and synthetic sequence
// generators. Everything here is deliberately brute-force and kept separate
// from the library's own computation paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "modwij/bigint.hpp"
#include "modwij/metric.hpp"
#include "modwij/modulus.hpp"

namespace testsupport {

/// Cantor function evaluated with exact rational ternary digits; independent
/// of the double-based scan in the library.
inline modwij::BigRat cantor_rational(const modwij::BigRat& x, int max_digits = 120) {
    using modwij::BigInt;
    using modwij::BigRat;
    if (x == BigRat(1)) return BigRat(1);
    BigRat t = x;
    BigRat result(0);
    BigRat bit(BigInt(1), BigInt(2));
    for (int i = 0; i < max_digits; ++i) {
        if (t.num() == 0) break;
        t = t * BigRat(3);
        BigInt digit = t.num() / t.den();  // floor for nonnegative t
        t = t - BigRat(digit);
        if (digit == 1) {
            result = result + bit;
            break;
        }
        if (digit == 2) result = result + bit;
        bit = bit * BigRat(BigInt(1), BigInt(2));
    }
    return result;
}

/// Brute-force count |{k <= n : member(k)}|.
template <class Pred>
std::uint64_t brute_count(Pred member, std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k) c += member(k) ? 1 : 0;
    return c;
}

/// A synthetic real-line sequence of singletons {base + delta_k}; delta
/// pattern supplied explicitly so tests control boundedness and deviations.
inline modwij::SetSequence<double> singleton_sequence(double base, std::vector<double> deltas) {
    auto space = modwij::real_line();
    auto data = std::make_shared<std::vector<double>>(std::move(deltas));
    return {"synthetic", [space, base, data](std::uint64_t k) {
                const double d = k <= data->size() ? (*data)[k - 1] : 0.0;
                return modwij::singleton(space, base + d, "{p}");
            }};
}

/// Deviation pattern: mostly zero, occasional bounded bumps; index 1 is
/// always exact so the candidate distance is attained in every prefix.
inline std::vector<double> bumpy_deltas(std::mt19937_64& rng, std::size_t n, double bump_scale,
                                        double bump_prob) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> bump(-bump_scale, bump_scale);
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        if (unif(rng) < bump_prob) d[i] = bump(rng);
    return d;
}

/// Pool of genuine moduli for randomized property tests.
inline std::vector<modwij::Modulus> modulus_pool() {
    using namespace modwij;
    return {identity_modulus(),
            scale_modulus(0.5),
            scale_modulus(3.0),
            power_modulus(0.5),
            power_modulus(0.25),
            log1p_modulus(),
            max_modulus(identity_modulus(), log1p_modulus()),
            linear_combination(1.0, identity_modulus(), 2.0, log1p_modulus()),
            compose_modulus(log1p_modulus(), log1p_modulus()),
            extended_cantor_modulus()};
}

/// Subset of the pool with concave claims (f(t)/t nonincreasing holds).
inline std::vector<modwij::Modulus> concave_modulus_pool() {
    std::vector<modwij::Modulus> out;
    for (auto& m : modulus_pool())
        if (m.claims().concave) out.push_back(m);
    return out;
}

}  // namespace testsupport
