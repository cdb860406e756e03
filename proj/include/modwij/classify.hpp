#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modwij/convergence.hpp"
#include "modwij/density.hpp"
#include "modwij/lemma_modulus.hpp"
#include "modwij/metric.hpp"
#include "modwij/modulus.hpp"
#include "modwij/sequences.hpp"

namespace modwij {

enum class ModeStatus { consistent, refuted, inconclusive };

inline const char* to_string(ModeStatus s) {
    switch (s) {
        case ModeStatus::consistent: return "consistent";
        case ModeStatus::refuted: return "refuted";
        case ModeStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

inline std::string point_label(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

inline std::string point_label(const std::complex<double>& z) {
    std::ostringstream os;
    os << z.real() << "+" << z.imag() << "i";
    return os.str();
}

struct ModeTrace {
    std::size_t witness = 0;
    std::optional<double> epsilon;
    RatioTrace trace;
};

struct Refutation {
    std::size_t witness = 0;
    std::optional<double> epsilon;
    std::uint64_t n = 0;
    double value = 0;
};

struct ModeReport {
    ModeStatus status = ModeStatus::inconclusive;
    std::vector<ModeTrace> traces;
    std::optional<Refutation> refutation;
    bool evaluated = false;  // false when the mode had no candidate to test against
};

struct WitnessBound {
    double sup = 0;
    std::uint64_t argmax = 0;
    bool growth = false;
};

struct ConvergenceVerdict {
    std::string sequence;
    std::string modulus;
    std::string candidate;  // empty when no candidate limit was supplied
    std::vector<std::string> witnesses;
    std::vector<double> epsilons;
    std::vector<std::uint64_t> grid;
    double tol = 0.01;
    ModeReport wijsman, stat, f_stat, cesaro, strong_cesaro, strong_cesaro_f;
    std::vector<WitnessBound> boundedness;
    std::string adapted_modulus_note;
};

struct ClassifyParams {
    std::vector<std::uint64_t> grid;          // defaults to 2^j, j = 4..17
    std::vector<double> epsilons = {1.0, 0.1, 0.01};
    double tol = 0.01;
    // When set, replace the modulus for the f-modes by one adapted to the
    // sequence's own deviation set (first witness, smallest epsilon), built
    // with this many knots.
    std::optional<unsigned> adapt_modulus_knots;
};

inline std::vector<std::uint64_t> default_classify_grid() {
    std::vector<std::uint64_t> g;
    for (unsigned j = 4; j <= 17; ++j) g.push_back(std::uint64_t{1} << j);
    return g;
}

namespace detail {

/// Statuses for trace-valued modes. Refutation = the violation persists at
/// the last two grid points; consistency = every trace settled within tol.
inline void finish_trace_mode(ModeReport& mode, double tol) {
    mode.evaluated = true;
    bool all_consistent = true;
    for (const auto& mt : mode.traces) {
        const auto& v = mt.trace.values;
        const double target = mt.trace.limit.value_or(0.0);
        if (v.size() >= 2 && std::abs(v[v.size() - 1] - target) > tol &&
            std::abs(v[v.size() - 2] - target) > tol) {
            mode.status = ModeStatus::refuted;
            mode.refutation = Refutation{mt.witness, mt.epsilon, mt.trace.grid.back(), v.back()};
            return;
        }
        if (mt.trace.verdict != TrendVerdict::consistent) all_consistent = false;
    }
    mode.status = all_consistent ? ModeStatus::consistent : ModeStatus::inconclusive;
}

}  // namespace detail

/// Finite-horizon classification of a set sequence under every convergence
/// mode. "refuted" statuses carry a concrete witness; "consistent" always
/// means "within tol at the recorded grid for the recorded witnesses".
template <class P>
ConvergenceVerdict classify(const MetricSpace<P>& space, const SetSequence<P>& seq,
                            const std::optional<ClosedSet<P>>& candidate, const Modulus& f,
                            ClassifyParams params = {}) {
    if (space.witness_points.empty())
        throw std::invalid_argument("classify: witness list must be nonempty");
    if (params.grid.empty()) params.grid = default_classify_grid();
    if (params.grid.size() < 3)
        throw std::invalid_argument("classify: need at least 3 grid points");
    if (params.epsilons.empty()) throw std::invalid_argument("classify: need epsilons");
    for (double e : params.epsilons)
        if (!(e > 0)) throw std::invalid_argument("classify: epsilons must be positive");

    ConvergenceVerdict out;
    out.sequence = seq.name;
    out.modulus = f.name();
    out.candidate = candidate ? candidate->name : "";
    out.epsilons = params.epsilons;
    out.grid = params.grid;
    out.tol = params.tol;
    for (const auto& w : space.witness_points) out.witnesses.push_back(point_label(w));

    const std::uint64_t horizon = params.grid.back();
    const std::size_t nw = space.witness_points.size();

    // Distances and deviations per witness, up to the horizon.
    std::vector<std::vector<double>> dvals(nw), dev(nw);
    std::vector<double> dA(nw, 0.0);
    for (std::size_t w = 0; w < nw; ++w) {
        const P& x = space.witness_points[w];
        dvals[w].resize(horizon + 1, 0.0);
        for (std::uint64_t k = 1; k <= horizon; ++k) dvals[w][k] = seq.dist(x, k);
        if (candidate) {
            dA[w] = candidate->dist_to(x);
            dev[w].resize(horizon + 1, 0.0);
            for (std::uint64_t k = 1; k <= horizon; ++k)
                dev[w][k] = std::abs(dvals[w][k] - dA[w]);
        }
        WitnessBound b;
        const std::uint64_t half = horizon / 2;
        double sup_half = 0;
        for (std::uint64_t k = 1; k <= horizon; ++k) {
            if (dvals[w][k] > b.sup) {
                b.sup = dvals[w][k];
                b.argmax = k;
            }
            if (k == half) sup_half = b.sup;
        }
        b.growth = half > 0 && b.sup > 1.01 * sup_half;
        out.boundedness.push_back(b);
    }

    // The modulus the f-modes actually use (possibly adapted to the sequence).
    Modulus f_used = f;
    if (params.adapt_modulus_knots) {
        if (!candidate) throw std::invalid_argument("classify: adaptation needs a candidate");
        double eps_min = params.epsilons.front();
        for (double e : params.epsilons) eps_min = std::min(eps_min, e);
        auto dev0 = std::make_shared<std::vector<double>>(dev[0]);
        NatSet devset = set_from_predicate(
            "deviations(" + seq.name + ")", [dev0, eps_min](std::uint64_t k) {
                return k < dev0->size() && (*dev0)[k] >= eps_min;
            });
        devset.set_scan_cap(horizon);
        try {
            auto built = lemma_modulus(devset, *params.adapt_modulus_knots);
            f_used = built.modulus;
            out.adapted_modulus_note = "adapted: " + f_used.name();
        } catch (const LemmaConstructionError& err) {
            out.adapted_modulus_note = std::string("adaptation failed: ") + err.what();
        }
    }
    out.modulus = f_used.name();

    auto make_trace = [&](std::vector<double> values, std::optional<double> cand) {
        RatioTrace t;
        t.tol = params.tol;
        t.grid = params.grid;
        t.values = std::move(values);
        detail::assign_verdict(t, cand);
        return t;
    };

    // Plain Wijsman mode. With a candidate: refuted when some (x, eps) sees
    // deviations in both of the two final grid segments; consistent when no
    // deviation appears there at all. Without a candidate: per-witness traces
    // of d(x, A_k) sampled at the grid points.
    if (candidate) {
        out.wijsman.evaluated = true;
        const std::size_t j = params.grid.size();
        const std::uint64_t seg1_lo = params.grid[j - 3], seg1_hi = params.grid[j - 2];
        const std::uint64_t seg2_lo = params.grid[j - 2], seg2_hi = params.grid[j - 1];
        bool any_bad_tail = false;
        for (std::size_t w = 0; w < nw; ++w) {
            for (double eps : params.epsilons) {
                std::uint64_t bad1 = 0, bad2 = 0, last_bad = 0;
                for (std::uint64_t k = seg1_lo + 1; k <= seg1_hi; ++k)
                    if (dev[w][k] >= eps) { ++bad1; last_bad = k; }
                for (std::uint64_t k = seg2_lo + 1; k <= seg2_hi; ++k)
                    if (dev[w][k] >= eps) { ++bad2; last_bad = k; }
                if (bad1 > 0 || bad2 > 0) any_bad_tail = true;
                if (bad1 > 0 && bad2 > 0 && !out.wijsman.refutation) {
                    out.wijsman.status = ModeStatus::refuted;
                    out.wijsman.refutation = Refutation{w, eps, last_bad, dev[w][last_bad]};
                }
            }
            std::vector<double> sampled;
            for (auto n : params.grid) sampled.push_back(dev[w][n]);
            out.wijsman.traces.push_back({w, std::nullopt, make_trace(std::move(sampled), 0.0)});
        }
        if (out.wijsman.status != ModeStatus::refuted)
            out.wijsman.status = any_bad_tail ? ModeStatus::inconclusive : ModeStatus::consistent;
    } else {
        out.wijsman.evaluated = false;
        for (std::size_t w = 0; w < nw; ++w) {
            std::vector<double> sampled;
            for (auto n : params.grid) sampled.push_back(dvals[w][n]);
            out.wijsman.traces.push_back({w, std::nullopt, make_trace(std::move(sampled), std::nullopt)});
        }
    }

    // Statistical and f-statistical modes.
    if (candidate) {
        for (std::size_t w = 0; w < nw; ++w) {
            for (double eps : params.epsilons) {
                std::vector<double> sr, fr;
                std::uint64_t count = 0, k = 1;
                for (auto n : params.grid) {
                    for (; k <= n; ++k)
                        if (dev[w][k] >= eps) ++count;
                    sr.push_back(static_cast<double>(count) / static_cast<double>(n));
                    if (f_used.is_linear())
                        fr.push_back(sr.back());
                    else
                        fr.push_back(f_used(static_cast<double>(count)) /
                                     f_used(static_cast<double>(n)));
                }
                out.stat.traces.push_back({w, eps, make_trace(std::move(sr), 0.0)});
                out.f_stat.traces.push_back({w, eps, make_trace(std::move(fr), 0.0)});
            }
        }
        detail::finish_trace_mode(out.stat, params.tol);
        detail::finish_trace_mode(out.f_stat, params.tol);
    }

    // Cesaro and strong Cesaro modes from prefix sums.
    for (std::size_t w = 0; w < nw; ++w) {
        std::vector<double> means, strong, strong_f;
        double sum_d = 0, sum_dev = 0, sum_fdev = 0;
        std::uint64_t k = 1;
        for (auto n : params.grid) {
            for (; k <= n; ++k) {
                sum_d += dvals[w][k];
                if (candidate) {
                    sum_dev += dev[w][k];
                    sum_fdev += f_used(dev[w][k]);
                }
            }
            const auto dn = static_cast<double>(n);
            means.push_back(sum_d / dn);
            if (candidate) {
                strong.push_back(sum_dev / dn);
                strong_f.push_back(sum_fdev / dn);
            }
        }
        if (candidate) {
            out.cesaro.traces.push_back({w, std::nullopt, make_trace(std::move(means), dA[w])});
            out.strong_cesaro.traces.push_back({w, std::nullopt, make_trace(std::move(strong), 0.0)});
            out.strong_cesaro_f.traces.push_back(
                {w, std::nullopt, make_trace(std::move(strong_f), 0.0)});
        } else {
            out.cesaro.traces.push_back({w, std::nullopt, make_trace(std::move(means), std::nullopt)});
        }
    }
    if (candidate) {
        detail::finish_trace_mode(out.cesaro, params.tol);
        detail::finish_trace_mode(out.strong_cesaro, params.tol);
        detail::finish_trace_mode(out.strong_cesaro_f, params.tol);
    }

    return out;
}

template <class P>
ConvergenceVerdict classify(const SequenceCase<P>& c, const Modulus& f,
                            const ClassifyParams& params = {}) {
    return classify(c.space, c.sequence, c.candidate_limit, f, params);
}

inline ConvergenceVerdict classify_any(const AnySequenceCase& c, const Modulus& f,
                                       const ClassifyParams& params = {}) {
    return std::visit([&](const auto& typed) { return classify(typed, f, params); }, c);
}

}  // namespace modwij
