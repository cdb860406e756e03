#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "modwij/classify.hpp"
#include "modwij/density.hpp"
#include "modwij/exceptional_set.hpp"
#include "modwij/modulus_checks.hpp"
#include "modwij/piecewise_affine.hpp"

namespace modwij {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline const char* to_string(TrendVerdict v) {
    switch (v) {
        case TrendVerdict::consistent: return "consistent";
        case TrendVerdict::inconclusive: return "inconclusive";
        case TrendVerdict::diverging: return "diverging";
    }
    return "?";
}

/// Knots as an array of [x (decimal string), y numerator, y denominator].
inline ordered_json to_json(const PiecewiseAffine& pwa) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < pwa.knot_count(); ++i) {
        const BigRat& y = pwa.knots_y()[i];
        arr.push_back({pwa.knots_x()[i].str(), y.num().str(), y.den().str()});
    }
    return arr;
}

inline ordered_json to_json(const RatioTrace& t) {
    ordered_json j;
    j["grid"] = t.grid;
    j["values"] = t.values;
    if (!t.counts.empty()) {
        std::vector<std::string> cs;
        for (const auto& c : t.counts) cs.push_back(c.str());
        j["counts"] = cs;
    }
    j["verdict"] = to_string(t.verdict);
    if (t.limit) j["limit"] = *t.limit;
    j["tol"] = t.tol;
    j["trend"] = t.trend;
    j["last_window_oscillation"] = t.last_window_oscillation;
    return j;
}

/// CSV schema: "n,count,ratio" without a modulus, else
/// "n,count,f_count,f_n,ratio".
inline std::string trace_to_csv(const RatioTrace& t, const Modulus* f) {
    std::ostringstream os;
    os << (f ? "n,count,f_count,f_n,ratio\n" : "n,count,ratio\n");
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
        os << t.grid[i] << "," << (i < t.counts.size() ? t.counts[i].str() : "");
        if (f) {
            const double c = i < t.counts.size() ? t.counts[i].convert_to<double>() : 0.0;
            os << "," << format_double((*f)(c)) << ","
               << format_double((*f)(static_cast<double>(t.grid[i])));
        }
        os << "," << format_double(t.values[i]) << "\n";
    }
    return os.str();
}

inline ordered_json to_json(const AxiomReport& r) {
    ordered_json j;
    j["zero_ok"] = r.zero_ok;
    j["value_at_zero"] = r.value_at_zero;
    j["monotone_ok"] = r.monotone_ok;
    j["subadditive_ok"] = r.subadditive_ok;
    j["continuity_ok"] = r.continuity_ok;
    j["oscillation"] = {r.oscillation[0], r.oscillation[1], r.oscillation[2]};
    auto cx = [](const AxiomCounterexample& c) {
        return ordered_json{{"x", c.x}, {"y", c.y}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    };
    if (r.monotone_counterexample) j["monotone_counterexample"] = cx(*r.monotone_counterexample);
    if (r.subadditive_counterexample)
        j["subadditive_counterexample"] = cx(*r.subadditive_counterexample);
    return j;
}

inline ordered_json to_json(const BetaEstimate& b) {
    return ordered_json{{"beta_estimate", b.beta_estimate},
                        {"inf_estimate", b.inf_estimate},
                        {"gap", b.gap},
                        {"ratios_nonincreasing", b.ratios_nonincreasing}};
}

inline ordered_json to_json(const SlowVariationProfile& p) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : p.rows) {
        ordered_json j;
        j["a"] = r.a;
        j["x"] = r.x;
        j["ratio"] = r.ratio;
        if (!r.skipped.empty()) j["skipped"] = r.skipped;
        j["final_ratio"] = r.final_ratio;
        j["monotone_towards_one"] = r.monotone_towards_one;
        j["consistent"] = r.consistent;
        rows.push_back(j);
    }
    return ordered_json{{"tol", p.tol}, {"consistent", p.consistent}, {"rows", rows}};
}

inline ordered_json to_json(const ModeReport& m, const ConvergenceVerdict& v) {
    ordered_json j;
    j["status"] = to_string(m.status);
    j["evaluated"] = m.evaluated;
    if (m.refutation) {
        j["refutation"] = {{"witness", v.witnesses[m.refutation->witness]},
                           {"n", m.refutation->n},
                           {"value", m.refutation->value}};
        if (m.refutation->epsilon) j["refutation"]["epsilon"] = *m.refutation->epsilon;
    }
    ordered_json traces = ordered_json::array();
    for (const auto& t : m.traces) {
        ordered_json tj;
        tj["witness"] = v.witnesses[t.witness];
        if (t.epsilon) tj["epsilon"] = *t.epsilon;
        tj["trace"] = to_json(t.trace);
        traces.push_back(tj);
    }
    j["traces"] = traces;
    return j;
}

inline ordered_json to_json(const ConvergenceVerdict& v) {
    ordered_json j;
    j["sequence"] = v.sequence;
    j["modulus"] = v.modulus;
    j["candidate"] = v.candidate;
    j["witnesses"] = v.witnesses;
    j["epsilons"] = v.epsilons;
    j["grid"] = v.grid;
    j["tol"] = v.tol;
    if (!v.adapted_modulus_note.empty()) j["adapted_modulus"] = v.adapted_modulus_note;
    ordered_json bounds = ordered_json::array();
    for (std::size_t w = 0; w < v.boundedness.size(); ++w) {
        bounds.push_back({{"witness", v.witnesses[w]},
                          {"sup", v.boundedness[w].sup},
                          {"argmax", v.boundedness[w].argmax},
                          {"growth", v.boundedness[w].growth}});
    }
    j["boundedness"] = bounds;
    j["modes"] = ordered_json{{"wijsman", to_json(v.wijsman, v)},
                              {"stat", to_json(v.stat, v)},
                              {"f_stat", to_json(v.f_stat, v)},
                              {"cesaro", to_json(v.cesaro, v)},
                              {"strong_cesaro", to_json(v.strong_cesaro, v)},
                              {"strong_cesaro_f", to_json(v.strong_cesaro_f, v)}};
    return j;
}

/// CSV schema: "mode,x,epsilon,n,value"; one row per trace sample.
inline std::string verdict_to_csv(const ConvergenceVerdict& v) {
    std::ostringstream os;
    os << "mode,x,epsilon,n,value\n";
    auto emit = [&](const char* mode, const ModeReport& m) {
        for (const auto& t : m.traces) {
            for (std::size_t i = 0; i < t.trace.grid.size(); ++i) {
                os << mode << "," << v.witnesses[t.witness] << ",";
                if (t.epsilon) os << format_double(*t.epsilon);
                os << "," << t.trace.grid[i] << "," << format_double(t.trace.values[i]) << "\n";
            }
        }
    };
    emit("wijsman", v.wijsman);
    emit("stat", v.stat);
    emit("f_stat", v.f_stat);
    emit("cesaro", v.cesaro);
    emit("strong_cesaro", v.strong_cesaro);
    emit("strong_cesaro_f", v.strong_cesaro_f);
    return os.str();
}

inline ordered_json to_json(const ExceptionalSetResult& r) {
    ordered_json j;
    j["set"] = r.set;
    j["levels"] = r.levels;
    j["cuts"] = r.cuts;
    j["f_density_ratio_at_horizon"] = r.f_density_ratio_at_horizon;
    j["max_deviation_outside"] = r.max_deviation_outside;
    j["target"] = r.target;
    j["target_missed"] = r.target_missed;
    return j;
}

}  // namespace modwij
