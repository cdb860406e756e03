// Command-line front end: density tables, modulus validation reports,
// convergence classification, and the built-in example fixtures.
//
// Exit codes: 0 success, 1 fixture/verdict failure, 2 usage or parse error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "modwij/modwij.hpp"

namespace {

using namespace modwij;

unsigned worker_count() {
    const char* env = std::getenv("MODWIJ_WORKERS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return static_cast<unsigned>(std::clamp(v, 1L, 64L));
}

/// Runs fn(0..n-1) across the configured workers; results must be written to
/// preallocated slots so assembly stays ordered and deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct GridArg {
    double lo = 0, hi = 0, third = 0;
};

GridArg parse_grid_arg(const std::string& text) {
    GridArg g;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.third) || c1 != ':' || c2 != ':' || !is.eof())
        throw ParseError("grid must be min:max:factor", text);
    return g;
}

std::vector<std::uint64_t> geometric_grid_from_arg(const std::string& text) {
    const GridArg g = parse_grid_arg(text);
    if (g.lo < 1 || g.hi < g.lo || g.third <= 1.0)
        throw ParseError("grid needs 1 <= min <= max and factor > 1", text);
    return geometric_int_grid(static_cast<std::uint64_t>(g.lo),
                              static_cast<std::uint64_t>(g.hi), g.third);
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << payload;
}

// ---- density ----

int cmd_density(const std::string& set_expr, const std::string& modulus_expr,
                const std::string& grid_arg, std::optional<double> limit, double tol,
                const std::string& out_path, const std::string& format) {
    NatSet set = parse_set_expr(set_expr);
    std::optional<Modulus> mod;
    if (!modulus_expr.empty()) mod = parse_modulus_expr(modulus_expr);

    const auto grid = geometric_grid_from_arg(grid_arg);
    // Counts are independent per grid point; fan them out, then assemble.
    std::vector<BigInt> counts(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { counts[i] = set.count_upto(BigInt(grid[i])); });

    RatioTrace trace;
    trace.tol = tol;
    trace.grid = grid;
    trace.counts = counts;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double c = counts[i].convert_to<double>();
        const double n = static_cast<double>(grid[i]);
        trace.values.push_back(mod && !mod->is_linear() ? (*mod)(c) / (*mod)(n) : c / n);
    }
    finish_ratio_trace(trace, limit);

    if (format == "json") {
        ordered_json j;
        j["set"] = set.name();
        if (mod) j["modulus"] = mod->name();
        j["trace"] = to_json(trace);
        write_output(out_path, j.dump(2) + "\n");
    } else {
        write_output(out_path, trace_to_csv(trace, mod ? &*mod : nullptr));
    }
    return 0;
}

// ---- modulus report ----

int cmd_modulus(const std::string& expr, const std::string& grid_arg, double tol,
                const std::string& out_path, const std::string& format) {
    Modulus m = parse_modulus_expr(expr);
    const GridArg g = parse_grid_arg(grid_arg);
    if (!(g.third > 0) || g.hi < g.lo || g.lo < 0)
        throw ParseError("grid needs 0 <= min <= max and step > 0", grid_arg);
    const auto grid = linear_grid(g.lo, g.hi, g.third);

    const AxiomReport axioms = check_axioms(m, grid);
    const auto beta_grid = geometric_grid(1.0, 1e6, 2.0);
    const BetaEstimate beta = beta_limit(m, beta_grid);
    const auto sv_grid = slow_variation_grid(m);
    const SlowVariationProfile sv = slow_variation_profile(m, {2.0, 10.0}, sv_grid);

    // Integer grid points are scanned first so that coarse-scale witnesses
    // are preferred on fine grids.
    std::optional<std::pair<double, double>> witness;
    std::vector<double> integer_points;
    for (double x : grid)
        if (x == std::floor(x)) integer_points.push_back(x);
    if (integer_points.size() >= 3) witness = concavity_witness(m, integer_points);
    if (!witness) witness = concavity_witness(m, grid);

    ordered_json j;
    j["expr"] = expr;
    j["modulus"] = m.name();
    j["claims"] = {{"unbounded", m.claims().unbounded},
                   {"concave", m.claims().concave},
                   {"slowly_varying", m.claims().slowly_varying}};
    j["axioms"] = to_json(axioms);
    j["beta"] = to_json(beta);
    j["slow_variation"] = to_json(sv);
    if (witness)
        j["concavity_witness"] = {witness->first, witness->second};
    else
        j["concavity_witness"] = nullptr;
    if (m.has_exact_form()) j["exact_form"] = to_json(m.exact_form());
    (void)tol;

    if (format == "csv") {
        std::ostringstream os;
        os << "check,result\n";
        os << "zero_ok," << axioms.zero_ok << "\n";
        os << "monotone_ok," << axioms.monotone_ok << "\n";
        os << "subadditive_ok," << axioms.subadditive_ok << "\n";
        os << "continuity_ok," << axioms.continuity_ok << "\n";
        os << "beta_estimate," << format_double(beta.beta_estimate) << "\n";
        os << "inf_estimate," << format_double(beta.inf_estimate) << "\n";
        os << "slowly_varying_consistent," << sv.consistent << "\n";
        os << "concavity_witness,";
        if (witness) os << format_double(witness->first) << ";" << format_double(witness->second);
        os << "\n";
        write_output(out_path, os.str());
    } else {
        write_output(out_path, j.dump(2) + "\n");
    }
    return 0;
}

// ---- classify ----

int cmd_classify(const std::string& seq_id, const std::string& modulus_expr,
                 const std::string& grid_arg, const std::string& eps_arg, double tol,
                 std::optional<unsigned> adapt_knots, const std::string& out_path,
                 const std::string& format) {
    Modulus m = modulus_expr.empty() ? identity_modulus() : parse_modulus_expr(modulus_expr);
    AnySequenceCase seq = builtin_sequence(seq_id);

    ClassifyParams params;
    params.grid = geometric_grid_from_arg(grid_arg);
    params.tol = tol;
    params.adapt_modulus_knots = adapt_knots;
    params.epsilons.clear();
    std::istringstream es(eps_arg);
    std::string tok;
    while (std::getline(es, tok, ',')) {
        try {
            params.epsilons.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ParseError("epsilons must be numbers", tok);
        }
    }

    const ConvergenceVerdict v = classify_any(seq, m, params);

    std::ostringstream summary;
    auto line = [&](const char* name, const ModeReport& r) {
        summary << name << ": " << to_string(r.status) << "\n";
    };
    line("wijsman", v.wijsman);
    line("stat", v.stat);
    line("f_stat", v.f_stat);
    line("cesaro", v.cesaro);
    line("strong_cesaro", v.strong_cesaro);
    line("strong_cesaro_f", v.strong_cesaro_f);

    if (format == "csv") {
        write_output(out_path, verdict_to_csv(v));
        if (!out_path.empty()) std::cout << summary.str();
    } else {
        write_output(out_path, to_json(v).dump(2) + "\n");
        if (!out_path.empty()) std::cout << summary.str();
    }
    return 0;
}

// ---- example fixtures ----

struct FixtureResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

FixtureResult fixture_densities(std::uint64_t grid_max, double tol) {
    FixtureResult r{"densities", true, ""};
    const auto grid = geometric_int_grid(16, grid_max, 2.0);
    const auto sq = squares_set();
    const auto lg = log1p_modulus();

    const auto natural = density_trend(sq, nullptr, grid, 0.0, tol);
    const auto flog = density_trend(sq, &lg, grid, 0.5, tol);
    const auto evens = density_trend(evens_set(), &lg, grid, 1.0, tol);
    const auto odds = density_trend(odds_set(), &lg, grid, 1.0, tol);

    std::ostringstream d;
    d << "squares natural " << to_string(natural.verdict) << " @" << natural.values.back()
      << ", log1p " << to_string(flog.verdict) << " @" << flog.values.back();
    bool increasing = true;
    for (const auto* t : {&evens, &odds})
        for (std::size_t i = 0; i + 1 < t->values.size(); ++i)
            if (t->values[i + 1] <= t->values[i]) increasing = false;
    d << ", parity ratios increasing=" << increasing << " @" << evens.values.back();
    r.pass = natural.verdict == TrendVerdict::consistent &&
             flog.verdict == TrendVerdict::consistent && increasing &&
             evens.trend > 0 && odds.trend > 0;
    r.detail = d.str();
    return r;
}

FixtureResult fixture_r03(std::uint64_t grid_max, double /*tol*/) {
    FixtureResult r{"R03", true, ""};
    auto c = sequence_R03();
    ClassifyParams params;
    params.grid = geometric_int_grid(16, grid_max, 2.0);
    params.tol = 0.1;  // statistical checks use a loose tolerance at small horizons
    auto v = classify(c, identity_modulus(), params);

    const DeviationSpec<std::complex<double>> spec{{0.0, 0.0}, 0.5, *c.candidate_limit};
    const double fs = f_stat_ratio(c.sequence, spec, log1p_modulus(), grid_max);

    r.pass = v.wijsman.status == ModeStatus::refuted && v.stat.status == ModeStatus::consistent &&
             fs > 0.4 && fs < 0.6;
    std::ostringstream d;
    d << "wijsman=" << to_string(v.wijsman.status) << " stat=" << to_string(v.stat.status)
      << " log1p-stat-ratio=" << fs;
    r.detail = d.str();
    return r;
}

FixtureResult fixture_e2(std::uint64_t grid_max, double /*tol*/) {
    FixtureResult r{"E2", true, ""};
    auto c = sequence_E2();
    const std::uint64_t n_small = std::min<std::uint64_t>(100, grid_max);
    const double mean_small = cesaro_mean(c.sequence, 0.0, n_small);
    double expect = 0;
    for (std::uint64_t m = 1; m * m <= n_small; ++m) expect += static_cast<double>(m * m);
    expect /= static_cast<double>(n_small);

    const double mean_hi = cesaro_mean(c.sequence, 0.0, grid_max);
    const double mean_lo = cesaro_mean(c.sequence, 0.0, std::max<std::uint64_t>(1, grid_max / 4));
    const DeviationSpec<double> spec{0.0, 0.5, *c.candidate_limit};
    const double sr = stat_ratio(c.sequence, spec, grid_max);

    r.pass = mean_small == expect && mean_hi >= 1.5 * mean_lo && sr <= 0.1;
    std::ostringstream d;
    d << "mean(" << n_small << ")=" << mean_small << " mean(" << grid_max << ")=" << mean_hi
      << " stat-ratio=" << sr;
    r.detail = d.str();
    return r;
}

FixtureResult fixture_e4(std::uint64_t grid_max, double /*tol*/) {
    FixtureResult r{"E4", true, ""};
    auto c = sequence_E4();
    const std::uint64_t kmax = std::min<std::uint64_t>(1024, grid_max);
    double max_err = 0;
    for (double x : c.space.witness_points) {
        const bool inside = x >= -1.0 && x <= 1.0;
        for (std::uint64_t k = 1; k <= kmax; ++k) {
            const double mean = cesaro_mean(c.sequence, x, k);
            double expect;
            if (k % 2 == 0)
                expect = inside ? 1.0 : std::abs(x);
            else
                expect = inside ? 1.0 - x / static_cast<double>(k)
                                : std::abs(x - 1.0 / static_cast<double>(k));
            max_err = std::max(max_err, std::abs(mean - expect));
        }
    }
    r.pass = max_err <= 1e-12;
    std::ostringstream d;
    d << "closed-form max err=" << max_err << " over k<=" << kmax;
    r.detail = d.str();
    return r;
}

FixtureResult fixture_e3(std::uint64_t grid_max, double /*tol*/) {
    FixtureResult r{"E3", true, ""};
    auto c = sequence_E3();
    const auto lg = log1p_modulus();
    unsigned rmax = 0;
    while ((std::uint64_t{2} << (rmax + 1)) <= grid_max) ++rmax;
    bool plain_ok = true;
    for (unsigned rr = 5; rr <= rmax; ++rr)
        if (dyadic_block_mean(c.sequence, 0.0, *c.candidate_limit, nullptr, rr) != 1.0)
            plain_ok = false;
    double prev = HUGE_VAL;
    bool decreasing = true;
    double last = 0;
    for (unsigned rr = 5; rr <= rmax; ++rr) {
        last = dyadic_block_mean(c.sequence, 0.0, *c.candidate_limit, &lg, rr);
        if (last >= prev) decreasing = false;
        prev = last;
    }
    const bool small_ok = rmax < 10 || last <= 0.01;
    r.pass = plain_ok && decreasing && small_ok;
    std::ostringstream d;
    d << "plain blocks == 1: " << plain_ok << ", log1p block(r=" << rmax << ")=" << last;
    r.detail = d.str();
    return r;
}

FixtureResult fixture_constructions(std::uint64_t /*grid_max*/, double /*tol*/) {
    FixtureResult r{"constructions", true, ""};
    const auto lm = lemma_modulus(squares_set(), 12);
    bool knots_ok = true;
    for (std::size_t k = 0; k < lm.schedule.knot_count(); ++k)
        if (lm.modulus.eval_exact(lm.schedule.knots[k]) != BigRat(BigInt(k))) knots_ok = false;
    const bool invariants = lm.schedule.all_invariants();
    const bool concave = lm.modulus.exact_form().slopes_strictly_decreasing();
    const bool density = lm.density_ratio_at_knot(12) >= BigRat(BigInt(10), BigInt(12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double max_eq_err = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = unif(rng);
        max_eq_err = std::max(max_eq_err, std::abs(cantor(x / 3.0) - cantor(x) / 2.0));
        max_eq_err = std::max(max_eq_err, std::abs(cantor(1.0 - x) - (1.0 - cantor(x))));
    }
    const double quarter_err = std::abs(cantor(0.25) - 1.0 / 3.0);
    const auto ge = extended_cantor_modulus();
    std::vector<double> igrid;
    for (int i = 0; i <= 9; ++i) igrid.push_back(i);
    const auto witness = concavity_witness(ge, igrid);
    const bool witness_ok = witness && witness->first == 1.0 && witness->second == 3.0;

    r.pass = knots_ok && invariants && concave && density && max_eq_err <= 1e-12 &&
             quarter_err <= 1e-12 && witness_ok;
    std::ostringstream d;
    d << "knot identities=" << knots_ok << " invariants=" << invariants
      << " cantor-eq-err=" << max_eq_err << " witness(1,3)=" << witness_ok;
    r.detail = d.str();
    return r;
}

int cmd_examples(std::uint64_t grid_max, double tol) {
    using Fixture = FixtureResult (*)(std::uint64_t, double);
    const Fixture fixtures[] = {fixture_densities, fixture_r03,  fixture_e2,
                                fixture_e4,        fixture_e3,   fixture_constructions};
    const std::size_t n = std::size(fixtures);
    std::vector<FixtureResult> results(n);
    parallel_for(n, [&](std::size_t i) { results[i] = fixtures[i](grid_max, tol); });

    std::size_t passed = 0;
    for (const auto& res : results) {
        std::cout << (res.pass ? "PASS " : "FAIL ") << res.name << ": " << res.detail << "\n";
        passed += res.pass ? 1 : 0;
    }
    std::cout << passed << "/" << n << " fixtures pass\n";
    return passed == n ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"density-by-moduli and Wijsman set-convergence toolkit"};
    app.set_config("--config");
    app.require_subcommand(1);

    struct DensityArgs {
        std::string set, modulus, grid = "16:1048576:2", out, format = "csv";
        double tol = 0.01, limit = 0;
    } da;
    struct ModulusArgs {
        std::string expr, grid = "0:100:0.1", out, format = "json";
        double tol = 0.01;
    } ma;
    struct ClassifyArgs {
        std::string seq, modulus, grid = "16:131072:2", eps = "1,0.1,0.01", out, format = "json";
        double tol = 0.01;
        unsigned adapt_knots = 0;
    } ca;
    struct ExamplesArgs {
        std::uint64_t grid_max = 1 << 20;
        double tol = 0.01;
    } ea;

    auto* density = app.add_subcommand("density", "density ratio table for a set of naturals");
    density->configurable();
    density->add_option("--set", da.set, "set expression, e.g. squares, compl(evens)")
        ->required();
    density->add_option("--modulus", da.modulus, "modulus expression, e.g. log1p");
    density->add_option("--grid", da.grid, "horizon grid min:max:factor");
    auto* limit_opt = density->add_option("--limit", da.limit, "candidate limit for the verdict");
    density->add_option("--tol", da.tol, "verdict tolerance");
    density->add_option("--out", da.out, "output file (default stdout)");
    density->add_option("--format", da.format, "csv or json");

    auto* modcmd = app.add_subcommand("modulus", "axiom/variation report for a modulus");
    modcmd->configurable();
    modcmd->add_option("--expr", ma.expr, "modulus expression")->required();
    modcmd->add_option("--grid", ma.grid, "evaluation grid min:max:step");
    modcmd->add_option("--tol", ma.tol, "tolerance");
    modcmd->add_option("--out", ma.out, "output file (default stdout)");
    modcmd->add_option("--format", ma.format, "json or csv");

    auto* classifycmd = app.add_subcommand("classify", "convergence-mode verdicts for a sequence");
    classifycmd->configurable();
    classifycmd->add_option("--seq", ca.seq, "sequence id: R03, E2, E4, E3")->required();
    classifycmd->add_option("--modulus", ca.modulus, "modulus expression (default id)");
    classifycmd->add_option("--grid", ca.grid, "horizon grid min:max:factor");
    classifycmd->add_option("--eps", ca.eps, "epsilon list e1,e2,...");
    classifycmd->add_option("--tol", ca.tol, "verdict tolerance");
    classifycmd->add_option("--adapt-knots", ca.adapt_knots,
                            "adapt the modulus to the sequence's deviation set (knot count)");
    classifycmd->add_option("--out", ca.out, "output file (default stdout)");
    classifycmd->add_option("--format", ca.format, "json or csv");

    auto* examples = app.add_subcommand("examples", "run the built-in example fixtures");
    examples->configurable();
    examples->add_option("--grid-max", ea.grid_max, "fixture horizon");
    examples->add_option("--tol", ea.tol, "fixture tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("density"))
            return cmd_density(da.set, da.modulus, da.grid,
                               limit_opt->count() ? std::optional<double>(da.limit) : std::nullopt,
                               da.tol, da.out, da.format);
        if (app.got_subcommand("modulus"))
            return cmd_modulus(ma.expr, ma.grid, ma.tol, ma.out, ma.format);
        if (app.got_subcommand("classify"))
            return cmd_classify(ca.seq, ca.modulus, ca.grid, ca.eps, ca.tol,
                                ca.adapt_knots ? std::optional<unsigned>(ca.adapt_knots)
                                               : std::nullopt,
                                ca.out, ca.format);
        if (app.got_subcommand("examples")) return cmd_examples(ea.grid_max, ea.tol);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
