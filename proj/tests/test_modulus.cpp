#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "modwij/grid.hpp"
#include "modwij/modulus.hpp"
#include "modwij/modulus_checks.hpp"
#include "support.hpp"

using namespace modwij;

TEST_CASE("evaluation of built-ins") {
    CHECK(identity_modulus()(7.0) == 7.0);
    CHECK(log1p_modulus()(0.0) == 0.0);
    CHECK(scale_modulus(2.5)(4.0) == 10.0);
    CHECK(power_modulus(0.5)(16.0) == 4.0);
    CHECK_THROWS_AS(identity_modulus()(-1.0), std::domain_error);
    CHECK_THROWS_AS(scale_modulus(0.0), std::invalid_argument);
    CHECK_THROWS_AS(power_modulus(1.5), std::invalid_argument);
}

TEST_CASE("combinators") {
    auto lin = linear_combination(1.0, identity_modulus(), 1.0, identity_modulus());
    CHECK(lin(3.0) == 6.0);
    CHECK(lin.claims().unbounded);

    auto mx = max_modulus(identity_modulus(), log1p_modulus());
    CHECK(mx(1.0) == 1.0);  // max(1, log 2)
    CHECK(mx(1.0) > std::log1p(1.0));

    auto comp = compose_modulus(power_modulus(0.5), power_modulus(0.5));
    CHECK(comp(16.0) == Catch::Approx(2.0).margin(1e-12));

    CHECK_THROWS_AS(linear_combination(-1.0, identity_modulus(), 1.0, identity_modulus()),
                    std::invalid_argument);
    CHECK_THROWS_AS(linear_combination(1.0, identity_modulus(), 0.0, identity_modulus()),
                    std::invalid_argument);
}

TEST_CASE("axiom checks refute the square function") {
    Modulus square("square", [](double x) { return x * x; },
                   {.unbounded = true, .concave = false, .slowly_varying = false});
    auto rep = check_axioms(square, linear_grid(0.0, 10.0, 0.5));
    CHECK(rep.zero_ok);
    CHECK(rep.monotone_ok);
    CHECK_FALSE(rep.subadditive_ok);
    REQUIRE(rep.subadditive_counterexample.has_value());
    auto cx = *rep.subadditive_counterexample;
    CHECK(square(cx.x + cx.y) > square(cx.x) + square(cx.y));
}

TEST_CASE("axiom checks pass for genuine moduli") {
    for (const auto& m : testsupport::modulus_pool()) {
        INFO(m.name());
        auto rep = check_axioms(m, linear_grid(0.0, 20.0, 0.25));
        CHECK(rep.zero_ok);
        CHECK(rep.monotone_ok);
        CHECK(rep.subadditive_ok);
        CHECK(rep.continuity_ok);
    }
}

TEST_CASE("modulus invariants on a geometric grid with random pairs") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.0, 1000.0);
    auto grid = geometric_grid(1e-3, 1e6, std::pow(10.0, 9.0 / 999.0));
    for (const auto& m : testsupport::modulus_pool()) {
        INFO(m.name());
        CHECK(m(0.0) == 0.0);
        double prev = 0.0;
        bool monotone = true;
        for (double x : grid) {
            const double v = m(x);
            if (v < prev - exact_tol(prev)) monotone = false;
            prev = v;
        }
        CHECK(monotone);
        bool subadd = true;
        for (int i = 0; i < 10000; ++i) {
            const double x = unif(rng), y = unif(rng);
            if (m(x + y) > m(x) + m(y) + composed_tol(m(x) + m(y))) subadd = false;
        }
        CHECK(subadd);
    }
}

TEST_CASE("ratio t -> f(t)/t is nonincreasing for concave-claimed moduli") {
    auto grid = geometric_grid(0.01, 1e6, 1.5);
    for (const auto& m : testsupport::concave_modulus_pool()) {
        INFO(m.name());
        double prev = HUGE_VAL;
        for (double t : grid) {
            const double r = m(t) / t;
            CHECK(r <= prev + composed_tol(prev));
            prev = r;
        }
    }
}

TEST_CASE("the extended Cantor modulus breaks the f(t)/t monotone pattern") {
    // values at t = 1, 2, 3 are 1, 1/2, 2/3: not monotone
    auto ge = extended_cantor_modulus();
    auto est = beta_limit(ge, {1.0, 2.0, 3.0});
    CHECK_FALSE(est.ratios_nonincreasing);
}

TEST_CASE("beta limit estimates") {
    auto grid = geometric_grid(1.0, 1e6, 2.0);
    auto id_est = beta_limit(identity_modulus(), grid);
    CHECK(id_est.beta_estimate == 1.0);
    CHECK(id_est.inf_estimate == 1.0);
    CHECK(id_est.ratios_nonincreasing);

    auto log_est = beta_limit(log1p_modulus(), grid);
    CHECK(log_est.beta_estimate == Catch::Approx(std::log1p(1e6) / 1e6).epsilon(1e-12));
    CHECK(log_est.beta_estimate == Catch::Approx(1.3815511557963774e-05).epsilon(1e-9));
    CHECK(log_est.ratios_nonincreasing);

    auto sqrt_est = beta_limit(power_modulus(0.5), grid);
    CHECK(sqrt_est.beta_estimate == Catch::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("beta lower bound holds at grid points") {
    auto grid = geometric_grid(0.5, 1e5, 3.0);
    for (const auto& m : testsupport::modulus_pool()) {
        auto est = beta_limit(m, grid);
        for (double t : grid) CHECK(m(t) >= est.inf_estimate * t - composed_tol(m(t)));
    }
}

TEST_CASE("slow variation profile") {
    auto xg = geometric_grid(10.0, 1e6, 10.0);

    auto log_prof = slow_variation_profile(log1p_modulus(), {2.0, 10.0}, xg);
    CHECK(log_prof.consistent);
    CHECK(log_prof.rows[1].final_ratio ==
          Catch::Approx(std::log1p(1e7) / std::log1p(1e6)).epsilon(1e-12));
    CHECK(log_prof.rows[1].final_ratio == Catch::Approx(1.1666665894588062).epsilon(1e-9));

    auto id_prof = slow_variation_profile(identity_modulus(), {2.0}, xg);
    CHECK_FALSE(id_prof.consistent);
    CHECK(id_prof.rows[0].final_ratio == 2.0);

    auto sqrt_prof = slow_variation_profile(power_modulus(0.5), {4.0}, xg);
    CHECK_FALSE(sqrt_prof.consistent);
    CHECK(sqrt_prof.rows[0].final_ratio == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("slow variation skips zeros of f") {
    auto prof = slow_variation_profile(identity_modulus(), {2.0}, {0.0, 1.0, 10.0});
    REQUIRE(prof.rows[0].skipped.size() == 1);
    CHECK(prof.rows[0].skipped[0] == 0.0);
    CHECK(prof.rows[0].ratio.size() == 2);
}

TEST_CASE("concavity witness on sampled grids") {
    CHECK_FALSE(concavity_witness(identity_modulus(), linear_grid(0.0, 10.0, 0.5)).has_value());
    CHECK_FALSE(concavity_witness(log1p_modulus(), linear_grid(0.0, 10.0, 0.5)).has_value());
    Modulus square("square", [](double x) { return x * x; },
                   {.unbounded = true, .concave = false, .slowly_varying = false});
    auto w = concavity_witness(square, linear_grid(0.0, 4.0, 1.0));
    REQUIRE(w.has_value());
    CHECK(square(0.5 * (w->first + w->second)) < 0.5 * (square(w->first) + square(w->second)));
}

TEST_CASE("modulus from a uniformly continuous function") {
    auto f = modulus_from_uniform_function([](double x) { return x; }, 10.0, 0.01);
    for (double t : {0.5, 1.0, 3.75, 10.0}) CHECK(f(t) == Catch::Approx(t).margin(1e-9));
    CHECK(f(0.0) == 0.0);
    CHECK(f(25.0) == Catch::Approx(10.0).margin(1e-9));  // window cap

    auto fs = modulus_from_uniform_function([](double x) { return std::sin(x); },
                                            2.0 * 3.14159265358979323846, 0.01);
    CHECK(fs(3.14159265358979323846) == Catch::Approx(2.0).margin(1e-4));
    CHECK(fs(0.0) == 0.0);

    CHECK_THROWS_AS(modulus_from_uniform_function([](double) { return 1.0; }, 10.0, 0.1),
                    std::invalid_argument);
}

TEST_CASE("windowed oscillation matches a direct pair scan") {
    auto g = [](double x) { return std::sin(1.7 * x) + 0.3 * x; };
    const double window = 4.0, step = 0.05;
    auto f = modulus_from_uniform_function(g, window, step);
    const int n = static_cast<int>(window / step + 0.5);
    for (double t : {0.25, 1.0, 2.5, 4.0}) {
        double direct = 0.0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const double x = i * step, y = j * step;
                if (std::abs(x - y) <= t + 1e-12)
                    direct = std::max(direct, std::abs(g(x) - g(y)));
            }
        CHECK(f(t) == Catch::Approx(direct).margin(1e-9));
    }
}

TEST_CASE("scaling-by-count bound for random integer triples") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<std::uint64_t> ints(1, 100000);
    std::uniform_int_distribution<std::uint64_t> ps(1, 50);
    auto pool = testsupport::modulus_pool();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto& f = pool[pick(rng)];
        const std::uint64_t m = ints(rng), p = ps(rng);
        std::uniform_int_distribution<std::uint64_t> ns(1, p * m);
        const std::uint64_t n = ns(rng);
        const double fn = f(static_cast<double>(n));
        const double fm = f(static_cast<double>(m));
        REQUIRE(fn <= static_cast<double>(p) * fm + composed_tol(fn));
    }
}
