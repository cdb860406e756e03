#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "modwij/bigint.hpp"

namespace modwij {

/// Ternary Cantor function on [0,1]. Every double is a dyadic rational, so
/// the ternary digits are extracted exactly from the integer mantissa:
/// digits 0/2 map to binary digits 0/1, the first digit 1 contributes a
/// final binary 1 and stops the scan. The only rounding is the final
/// truncation past 150 digits.
inline double cantor(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("cantor: x must be in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    int exp = 0;
    const double f = std::frexp(x, &exp);           // x = f * 2^exp, f in [0.5, 1)
    const auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
    const int shift = 53 - exp;                     // x = mant / 2^shift
    BigInt m = mant;
    double result = 0.0, bit = 0.5;
    for (int i = 0; i < 150 && m != 0; ++i) {
        m *= 3;
        const int d = static_cast<int>((m >> shift).convert_to<std::int64_t>());
        m -= BigInt(d) << shift;
        if (d == 1) return result + bit;
        if (d == 2) result += bit;
        bit *= 0.5;
    }
    return result;
}

/// Extension of the Cantor function to [0, infinity): on [0, 3^k] the graph
/// is the [0,1] graph scaled by 3^k horizontally and 2^k vertically; the
/// pieces agree on overlaps because cantor(x/3) == cantor(x)/2. Instead of
/// dividing by 3^k (which would round), the integer part's ternary digits
/// feed the scan directly.
inline double extended_cantor(double x) {
    if (!(x >= 0.0)) throw std::domain_error("extended_cantor: x must be >= 0");
    if (x <= 1.0) return cantor(x);
    double pow3 = 1.0, scale = 1.0;
    int k = 0;
    while (x > pow3) {
        pow3 *= 3.0;
        scale *= 2.0;
        ++k;
    }
    if (x == pow3 || k > 40) return scale;  // beyond 2^53 doubles are integers anyway
    auto ipart = static_cast<std::uint64_t>(x);
    const double frac = x - static_cast<double>(ipart);
    int digits[41];
    for (int j = 0; j < k; ++j) {
        digits[j] = static_cast<int>(ipart % 3);
        ipart /= 3;
    }
    double result = 0.0, bit = 0.5 * scale;
    for (int j = k - 1; j >= 0; --j) {
        if (digits[j] == 1) return result + bit;
        if (digits[j] == 2) result += bit;
        bit *= 0.5;
    }
    return result + 2.0 * bit * cantor(frac);
}

}  // namespace modwij
