#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "modwij/metric.hpp"
#include "modwij/natset.hpp"

namespace modwij {

/// A set sequence bundled with its space, the candidate limit (when one is
/// expected), and default witness points.
template <class P>
struct SequenceCase {
    MetricSpace<P> space;
    SetSequence<P> sequence;
    std::optional<ClosedSet<P>> candidate_limit;
};

/// Circles |z - 1| = 1/k at square indices, {0} otherwise; candidate {0}.
inline SequenceCase<std::complex<double>> sequence_R03() {
    auto space = complex_plane();
    const std::complex<double> origin{0.0, 0.0}, one{1.0, 0.0};
    auto zero_set = singleton(space, origin, "{0}");
    SetSequence<std::complex<double>> seq{
        "R03", [space, one, zero_set](std::uint64_t k) {
            const std::uint64_t r = isqrt64(k);
            if (r * r == k)
                return circle(space, one, 1.0 / static_cast<double>(k), "circle(1,1/k)");
            return zero_set;
        }};
    return {space, seq, zero_set};
}

/// {k} at square indices, {0} otherwise, on the real line; candidate {0}.
inline SequenceCase<double> sequence_E2() {
    auto space = real_line();
    auto zero_set = singleton(space, 0.0, "{0}");
    SetSequence<double> seq{"E2", [space, zero_set](std::uint64_t k) {
                                const std::uint64_t r = isqrt64(k);
                                if (r * r == k)
                                    return singleton(space, static_cast<double>(k), "{k}");
                                return zero_set;
                            }};
    return {space, seq, zero_set};
}

/// {-1} at even indices, {1} at odd ones; no candidate limit exists.
inline SequenceCase<double> sequence_E4() {
    auto space = real_line();
    space.witness_points = {0.0, 2.0, -0.5};
    auto minus = singleton(space, -1.0, "{-1}");
    auto plus = singleton(space, 1.0, "{1}");
    SetSequence<double> seq{"E4", [minus, plus](std::uint64_t k) {
                                return k % 2 == 0 ? minus : plus;
                            }};
    return {space, seq, std::nullopt};
}

/// {k} at k = 2^r (r >= 1), {0} otherwise, on [0, infinity); candidate {0}.
inline SequenceCase<double> sequence_E3() {
    auto space = half_line();
    auto zero_set = singleton(space, 0.0, "{0}");
    SetSequence<double> seq{"E3", [space, zero_set](std::uint64_t k) {
                                if (k >= 2 && (k & (k - 1)) == 0)
                                    return singleton(space, static_cast<double>(k), "{k}");
                                return zero_set;
                            }};
    return {space, seq, zero_set};
}

using AnySequenceCase = std::variant<SequenceCase<double>, SequenceCase<std::complex<double>>>;

/// Built-in example sequences by id.
inline AnySequenceCase builtin_sequence(const std::string& id) {
    if (id == "R03") return sequence_R03();
    if (id == "E2") return sequence_E2();
    if (id == "E4") return sequence_E4();
    if (id == "E3") return sequence_E3();
    throw std::invalid_argument("unknown sequence id '" + id + "' (known: R03, E2, E4, E3)");
}

}  // namespace modwij
