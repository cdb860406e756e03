#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "modwij/lemma_modulus.hpp"
#include "modwij/modulus_checks.hpp"
#include "modwij/natset.hpp"
#include "modwij/serialize.hpp"
#include "support.hpp"

using namespace modwij;

namespace {

/// Independent schedule oracle: the same greedy rule evaluated by scanning
/// the membership predicate directly, no closed forms involved. Only viable
/// while the knots stay small.
template <class Pred>
std::vector<std::uint64_t> schedule_oracle(Pred member, unsigned k_max) {
    auto element = [&](std::uint64_t j) {
        std::uint64_t seen = 0;
        for (std::uint64_t m = 1;; ++m)
            if (member(m) && ++seen == j) return m;
    };
    std::vector<std::uint64_t> n{0};
    n.push_back(std::max<std::uint64_t>(2, element(1)));
    for (unsigned k = 1; k < k_max; ++k) {
        std::uint64_t m = std::max<std::uint64_t>(
            {k * n[k], 2 * n[k] + 1, 2 * n[k] - n[k - 1] + 1, element(n[k] + 1)});
        n.push_back(m);
    }
    return n;
}

}  // namespace

TEST_CASE("schedule matches the brute-force oracle on small sets") {
    auto is_square = [](std::uint64_t m) {
        std::uint64_t r = isqrt64(m);
        return r * r == m;
    };
    auto oracle_sq = schedule_oracle(is_square, 5);
    auto lm = lemma_modulus(squares_set(), 5);
    REQUIRE(lm.schedule.knot_count() == 6);
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(lm.schedule.knots[k] == BigInt(oracle_sq[k]));

    auto oracle_ev = schedule_oracle([](std::uint64_t m) { return m % 2 == 0; }, 8);
    auto lme = lemma_modulus(evens_set(), 8);
    for (std::size_t k = 0; k < 9; ++k)
        CHECK(lme.schedule.knots[k] == BigInt(oracle_ev[k]));

    // the 4th knot for powers of two is 2^513: closed forms only from there on
    auto oracle_p2 = schedule_oracle([](std::uint64_t m) { return m >= 2 && (m & (m - 1)) == 0; }, 3);
    auto lmp = lemma_modulus(powers_of_two_set(), 3);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(lmp.schedule.knots[k] == BigInt(oracle_p2[k]));
    CHECK(lemma_modulus(powers_of_two_set(), 4).schedule.knots[4] == BigInt(1) << 513);
}

TEST_CASE("frozen schedule prefix for the squares") {
    auto lm = lemma_modulus(squares_set(), 6);
    const std::vector<std::string> expected = {"0",     "2",        "9",
                                               "100",   "10201",    "104080804",
                                               "10832813969448025"};
    REQUIRE(lm.schedule.knot_count() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k)
        CHECK(lm.schedule.knots[k].str() == expected[k]);
}

TEST_CASE("schedule invariants hold exactly for k_max = 20") {
    auto lm = lemma_modulus(squares_set(), 20);
    CHECK(lm.schedule.gaps_strictly_increasing());
    CHECK(lm.schedule.doubling());
    CHECK(lm.schedule.growth_factor_at_least_index());
    CHECK(lm.schedule.count_exceeds_previous_knot());

    // counts are genuine: element(count) <= knot < element(count + 1)
    const auto sq = squares_set();
    for (std::size_t k = 1; k < lm.schedule.knot_count(); ++k) {
        const BigInt& c = lm.schedule.counts[k];
        CHECK(*sq.element(c) <= lm.schedule.knots[k]);
        CHECK(*sq.element(c + 1) > lm.schedule.knots[k]);
    }
}

TEST_CASE("knot identities and concavity") {
    auto lm = lemma_modulus(squares_set(), 12);
    for (std::size_t k = 0; k < lm.schedule.knot_count(); ++k) {
        CHECK(lm.modulus.eval_exact(lm.schedule.knots[k]) == BigRat(BigInt(k)));
    }
    CHECK(lm.modulus.exact_form().slopes_strictly_decreasing());
    CHECK_FALSE(lm.modulus.exact_form().first_slope_increase().has_value());
    CHECK(lm.modulus.claims().unbounded);
    CHECK(lm.modulus.claims().concave);
    CHECK(lm.modulus.claims().slowly_varying);
}

TEST_CASE("interior evaluations are exact rationals") {
    auto lm = lemma_modulus(squares_set(), 5);
    // segment [2, 9]: f(x) = (x - 2)/7 + 1
    CHECK(lm.modulus.eval_exact(BigInt(5)) == BigRat(BigInt(10), BigInt(7)));
    // segment [9, 100]: f(x) = (x - 9)/91 + 2
    CHECK(lm.modulus.eval_exact(BigInt(50)) == BigRat(BigInt(2 * 91 + 41), BigInt(91)));
    // beyond the last knot the final slope extends
    const BigInt last = lm.schedule.knots[5];
    const BigInt gap = lm.schedule.knots[5] - lm.schedule.knots[4];
    CHECK(lm.modulus.eval_exact(last + gap) == BigRat(BigInt(6)));
    // double evaluation agrees with the exact form
    CHECK(lm.modulus(50.0) == Catch::Approx((2.0 * 91 + 41) / 91).epsilon(1e-15));
}

TEST_CASE("density ratio at knots approaches one") {
    auto lm = lemma_modulus(squares_set(), 20);
    const BigRat r20 = lm.density_ratio_at_knot(20);
    CHECK(r20 >= BigRat(BigInt(18), BigInt(20)));
    CHECK(r20 <= BigRat(1));
    // the ratio is sandwiched by the paper-style bracket (k-2)/k at every knot
    for (std::size_t k = 3; k <= 20; ++k) {
        const BigRat r = lm.density_ratio_at_knot(k);
        CHECK(r >= BigRat(BigInt(k - 2), BigInt(k)));
        CHECK(r <= BigRat(1));
    }
}

TEST_CASE("slow variation at the deepest in-span knots") {
    auto lm = lemma_modulus(squares_set(), 20);
    for (unsigned a : {2u, 10u}) {
        for (std::size_t k : {18u, 19u}) {
            const BigRat r = lm.scale_ratio_at_knot(a, k);
            CHECK(r >= BigRat(1));
            CHECK(r <= BigRat(BigInt(5), BigInt(4)));
        }
    }
    // scaling by 2 near knot k costs at most f(x) + 2 in value
    for (std::size_t k = 2; k <= 19; ++k) {
        const BigRat f2 = lm.modulus.eval_exact(2 * lm.schedule.knots[k]);
        CHECK(f2 <= BigRat(BigInt(k + 2)));
    }
}

TEST_CASE("slow variation profile over the knot grid is consistent") {
    auto lm = lemma_modulus(squares_set(), 12);
    const auto grid = slow_variation_grid(lm.modulus);
    REQUIRE(grid.size() >= 2);
    const auto prof = slow_variation_profile(lm.modulus, {2.0, 10.0}, grid);
    CHECK(prof.consistent);
    for (const auto& row : prof.rows) CHECK(std::abs(row.final_ratio - 1.0) <= 0.01);
}

TEST_CASE("exact f-density of the source set stays where the construction pins it") {
    auto sq = squares_set();
    auto lm = lemma_modulus(sq, 14);
    const BigRat r = f_density_ratio_exact(sq, lm.modulus, lm.schedule.knots[14]);
    CHECK(r == lm.density_ratio_at_knot(14));
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(lemma_modulus(squares_set(), 2), std::invalid_argument);

    try {
        lemma_modulus(finite_set_of({1, 2, 3}), 4);
        FAIL("expected LemmaConstructionError");
    } catch (const LemmaConstructionError& e) {
        CHECK(e.achieved_knots >= 1);
        CHECK(e.achieved_knots < 4);
    }

    // predicate-only sets work while the scan suffices, then report exhaustion
    auto odd_pred = set_from_predicate("odd-ish", [](std::uint64_t n) { return n % 2 == 1; });
    odd_pred.set_scan_cap(1000);
    auto lm = lemma_modulus(odd_pred, 5);
    CHECK(lm.schedule.all_invariants());
    CHECK_THROWS_AS(lemma_modulus(odd_pred, 12), LemmaConstructionError);
}

TEST_CASE("piecewise-affine serialization") {
    auto lm = lemma_modulus(squares_set(), 4);
    auto j = to_json(lm.modulus.exact_form());
    REQUIRE(j.size() == 5);
    CHECK(j[0][0] == "0");
    CHECK(j[0][1] == "0");
    CHECK(j[0][2] == "1");
    CHECK(j[3][0] == "100");
    CHECK(j[3][1] == "3");
    CHECK(j[4][0] == "10201");
    CHECK(j[4][1] == "4");
    CHECK(j[4][2] == "1");
}

TEST_CASE("big integer square root") {
    CHECK(isqrt(BigInt(0)) == 0);
    CHECK(isqrt(BigInt(1)) == 1);
    CHECK(isqrt(BigInt(3)) == 1);
    CHECK(isqrt(BigInt(4)) == 2);
    CHECK(isqrt(BigInt(99)) == 9);
    for (int bits : {64, 200, 1000, 5000}) {
        const BigInt v = (BigInt(1) << bits) + 12345;
        const BigInt r = isqrt(v);
        CHECK(r * r <= v);
        CHECK((r + 1) * (r + 1) > v);
    }
}
