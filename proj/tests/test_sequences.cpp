#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "modwij/convergence.hpp"
#include "modwij/metric.hpp"
#include "modwij/sequences.hpp"
#include "support.hpp"

using namespace modwij;

TEST_CASE("metric spaces satisfy the axioms on witness triples") {
    CHECK(metric_sanity(real_line()).ok());
    CHECK(metric_sanity(half_line()).ok());
    CHECK(metric_sanity(complex_plane()).ok());
}

TEST_CASE("closed-set distance formulas") {
    auto space = complex_plane();
    auto c = circle(space, {1.0, 0.0}, 0.25);
    CHECK(c.dist_to({0.0, 0.0}) == 0.75);

    auto rspace = real_line();
    CHECK(singleton(rspace, 0.0).dist_to(-3.0) == 3.0);
    CHECK(finite_closed_set(rspace, {-1.0, 1.0}).dist_to(0.0) == 1.0);

    CHECK_THROWS_AS(circle(space, {1.0, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(finite_closed_set(rspace, {}), std::invalid_argument);
}

TEST_CASE("distance oracles are 1-Lipschitz in the witness point") {
    std::mt19937_64 rng(31415);
    std::uniform_real_distribution<double> unif(-20.0, 20.0);
    auto rspace = real_line();
    auto sets = {singleton(rspace, 1.5), finite_closed_set(rspace, {-3.0, 0.0, 7.0})};
    for (const auto& s : sets) {
        for (int i = 0; i < 1000; ++i) {
            const double x = unif(rng), y = unif(rng);
            REQUIRE(std::abs(s.dist_to(x) - s.dist_to(y)) <= std::abs(x - y) + 1e-12);
        }
    }
    auto cspace = complex_plane();
    auto circ = circle(cspace, {1.0, 0.0}, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const std::complex<double> x{unif(rng), unif(rng)}, y{unif(rng), unif(rng)};
        REQUIRE(std::abs(circ.dist_to(x) - circ.dist_to(y)) <= std::abs(x - y) + 1e-12);
    }
}

TEST_CASE("sequence catalog dispatch") {
    CHECK(std::holds_alternative<SequenceCase<std::complex<double>>>(builtin_sequence("R03")));
    CHECK(std::holds_alternative<SequenceCase<double>>(builtin_sequence("E2")));
    CHECK_THROWS_AS(builtin_sequence("nope"), std::invalid_argument);
}

TEST_CASE("R03 distances") {
    auto c = sequence_R03();
    const std::complex<double> zero{0.0, 0.0};
    // every non-square index carries the candidate set itself
    bool nonsquares_exact = true;
    for (std::uint64_t k = 1; k <= 10000; ++k) {
        const std::uint64_t r = isqrt64(k);
        if (r * r == k) continue;
        if (c.sequence.dist(zero, k) != c.candidate_limit->dist_to(zero))
            nonsquares_exact = false;
    }
    CHECK(nonsquares_exact);
    CHECK(c.sequence.dist(zero, 1) == 0.0);  // circle of radius 1 around 1 passes the origin
    CHECK(c.sequence.dist(zero, 4) == 0.75);
    CHECK(c.sequence.dist(zero, 9) == Catch::Approx(1.0 - 1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("E2 distances") {
    auto c = sequence_E2();
    CHECK(c.sequence.dist(0.0, 9) == 9.0);
    CHECK(c.sequence.dist(0.0, 8) == 0.0);
    CHECK(c.sequence.dist(1.0, 16) == 15.0);
}

TEST_CASE("E4 distances") {
    auto c = sequence_E4();
    CHECK(c.sequence.dist(2.0, 2) == 3.0);
    CHECK(c.sequence.dist(2.0, 3) == 1.0);
    CHECK_FALSE(c.candidate_limit.has_value());
}

TEST_CASE("E3 distances follow the power-of-two case split") {
    auto c = sequence_E3();
    CHECK(c.sequence.dist(0.0, 8) == 8.0);
    CHECK(c.sequence.dist(0.0, 7) == 0.0);
    CHECK(c.sequence.dist(0.0, 1) == 0.0);  // 1 is not an admissible power index
    CHECK(c.sequence.dist(10.0, 16) == 6.0);
    CHECK(c.sequence.dist(10.0, 15) == 10.0);
}

TEST_CASE("E4 Cesaro means match the finite-k closed form") {
    auto c = sequence_E4();
    for (double x : c.space.witness_points) {
        const bool inside = x >= -1.0 && x <= 1.0;
        for (std::uint64_t k = 1; k <= 1000; ++k) {
            const double mean = cesaro_mean(c.sequence, x, k);
            double expected;
            if (k % 2 == 0) {
                expected = inside ? 1.0 : std::abs(x);
            } else {
                // odd prefix has one extra {1} term: mean = max(|x|,1) - x/k
                // inside [-1,1], and |x - 1/k| outside
                expected = inside ? 1.0 - x / static_cast<double>(k)
                                  : std::abs(x - 1.0 / static_cast<double>(k));
            }
            REQUIRE(std::abs(mean - expected) <= 1e-12);
        }
    }
}

TEST_CASE("E4 mean limits: |x| outside [-1,1], 1 inside") {
    auto c = sequence_E4();
    for (double x : {-3.0, -0.5, 0.0, 0.7, 2.0, 11.5}) {
        const double limit = (x >= -1.0 && x <= 1.0) ? 1.0 : std::abs(x);
        CHECK(cesaro_mean(c.sequence, x, 100000) == Catch::Approx(limit).margin(1e-4));
        CHECK(cesaro_mean(c.sequence, x, 100000 + 1) == Catch::Approx(limit).margin(1e-4));
    }
}

TEST_CASE("E4 obstruction: pointwise mean limits admit no limiting set") {
    // Any candidate A would need d(x0, A) = 0 at some x0 in A while every
    // pointwise mean limit is >= 1.
    auto c = sequence_E4();
    for (double x : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
        const double limit = (x >= -1.0 && x <= 1.0) ? 1.0 : std::abs(x);
        CHECK(limit >= 1.0);
    }
}
