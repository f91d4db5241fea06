#include "commands.hpp"

#include <cmath>
#include <optional>

#include "stokes/isomonodromy.hpp"

namespace stokes::cli {

namespace iso = stokes::isomonodromy;

namespace {

int matrix_size(const Options& o, int minimum, int fallback) {
    const int n = o.n > 0 ? o.n : fallback;
    if (n < minimum) throw UsageError("--n must be at least " + std::to_string(minimum));
    return n;
}

std::optional<std::complex<double>> optional_complex(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_complex(text);
}

} // namespace

Report cmd_flow(const Options& o) {
    const int n = matrix_size(o, 2, 3);
    if (o.coordinate < 1 || o.coordinate > n) throw UsageError("--coordinate must lie in 1..n");
    auto rng = sample_rng(o.seed, 0);
    auto start = iso::random_state(n, rng, o.norm);
    double lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k < n; ++k)
        if (k != o.coordinate - 1) {
            lo = std::min(lo, start.u[k].real());
            hi = std::max(hi, start.u[k].real());
        }
    start.u[o.coordinate - 1] = o.span >= 0 ? hi + 0.5 : lo - 0.5;
    Report report("flow", params_json("flow", o));

    double lp = 0;
    for (int i = 0; i < n; ++i) lp = std::max(lp, iso::lie_poisson_check(start, i));
    report.add(Json{{"check", "flow-equals-lie-poisson-hamiltonian"}, {"pass", lp <= 1e-10}, {"residual", lp}});
    if (n >= 3) {
        const double c = iso::compatibility_residual(start, 0, 1);
        report.add(Json{{"check", "flows-commute"}, {"pass", c <= 1e-6}, {"residual", c}});
    }

    const auto traj = iso::integrate_flow(start, o.coordinate - 1, o.span, o.step);
    const double drift = iso::spectral_drift(traj);
    double skew = 0;
    for (double s : traj.skew_drift) skew = std::max(skew, s);
    report.add(Json{{"check", "flow-preserves-spectrum"},
                    {"pass", drift <= 1e-6},
                    {"spectral_drift", drift},
                    {"max_skew_drift", skew},
                    {"nodes", traj.nodes.size()}});

    Json nodes = Json::array();
    const int stride = std::max(1, o.stride);
    for (std::size_t k = 0; k < traj.nodes.size(); ++k) {
        if (k % stride != 0 && k + 1 != traj.nodes.size()) continue;
        nodes.push_back(Json{{"u", to_json(traj.nodes[k].u)}, {"V", to_json(traj.nodes[k].V)}});
    }
    report.attach("trajectory", nodes);
    return report;
}

Report cmd_pvi_check(const Options& o) {
    auto rng = sample_rng(o.seed, 0);
    const auto V0 = iso::random_state(3, rng, o.norm).V;
    const auto mu = optional_complex(o.mu);
    Report report("pvi-check", params_json("pvi-check", o));
    const auto coarse = iso::pvi_check(V0, o.t0, o.t1, o.step, mu);
    const auto fine = iso::pvi_check(V0, o.t0, o.t1, o.step / 2, mu);
    report.add(Json{{"check", "painleve-vi-residual"},
                    {"pass", coarse.evaluated > 0 && coarse.residual <= 1e-3},
                    {"mu", to_json(coarse.mu)},
                    {"step", o.step},
                    {"residual", coarse.residual},
                    {"evaluated_nodes", coarse.evaluated},
                    {"V0", to_json(V0)}});
    const double ratio = fine.residual > 0 ? coarse.residual / fine.residual : INFINITY;
    report.add(Json{{"check", "painleve-vi-step-halving"},
                    {"pass", coarse.evaluated > 0 && ratio >= 2},
                    {"residual_half_step", fine.residual},
                    {"improvement", ratio}});
    return report;
}

Report cmd_dual_monodromy(const Options& o) {
    const int n = matrix_size(o, 2, 3);
    const auto fixed_q = optional_complex(o.q);
    Report report("dual-monodromy", params_json("dual-monodromy", o));
    const auto records = parallel_records(o.samples, o.jobs, [&](int k) {
        auto rng = sample_rng(o.seed, k);
        const auto V = iso::random_state(n, rng).V;
        std::uniform_real_distribution<double> nu_dist(-1, 1);
        const auto residues = iso::dual_residues(V, {nu_dist(rng), nu_dist(rng)});
        double trace_err = 0;
        for (const auto& p : iso::dual_trace_report(residues, V))
            trace_err = std::max(trace_err, std::abs(p.trace + p.v_squared));

        Json mono{{"check", "monodromy-pair-traces"}};
        std::uniform_real_distribution<double> q_dist(0.5, 2.0);
        for (int attempt = 0;; ++attempt) {
            const Eigen::MatrixXcd S = iso::random_integer_stokes(n, rng);
            const std::complex<double> q = fixed_q ? *fixed_q : std::complex<double>(q_dist(rng));
            try {
                const auto tuple = iso::monodromy_matrices(S, q);
                const auto r = iso::monodromy_trace_report(S, tuple);
                mono["pass"] = r.max_trace_residual <= 1e-10 && r.max_det_residual <= 1e-10 * (1 + std::abs(q));
                mono["q"] = to_json(q);
                mono["max_trace_residual"] = r.max_trace_residual;
                mono["max_det_residual"] = r.max_det_residual;
                mono["S"] = to_json(S);
                break;
            } catch (const std::invalid_argument& e) {
                if (fixed_q && attempt >= 20) {
                    mono["pass"] = false;
                    mono["error"] = e.what();
                    break;
                }
            }
        }
        return Json::array({Json{{"check", "dual-residue-traces"},
                                 {"pass", trace_err <= 1e-12},
                                 {"nu", to_json(residues.nu)},
                                 {"max_residual", trace_err}},
                            mono});
    });
    for (const auto& pair : records)
        for (const auto& r : pair) report.add(r);
    if (n <= 4) {
        const auto sym = iso::symbolic_dual_trace_identity(n);
        report.add(Json{{"check", "dual-residue-traces-symbolic"}, {"pass", sym.all_zero}, {"n", n}});
    }
    return report;
}

Report cmd_commutator_report(const Options& o) {
    const int n = matrix_size(o, 4, 4);
    const auto idx = parse_list(o.indices);
    if (idx.size() != 4) throw UsageError("--indices takes four values");
    std::array<int, 4> zero_based{};
    for (int k = 0; k < 4; ++k) {
        zero_based[k] = static_cast<int>(idx[k]) - 1;
        if (zero_based[k] < 0 || zero_based[k] >= n) throw UsageError("--indices must lie in 1..n");
    }
    const auto q = optional_complex(o.q).value_or(1.0);
    std::vector<Eigen::MatrixXcd> samples;
    for (int k = 0; k < o.samples; ++k) {
        auto rng = sample_rng(o.seed, k);
        samples.push_back(iso::random_integer_stokes(n, rng));
    }
    Report report("commutator-report", params_json("commutator-report", o));
    const auto r = iso::commutator_trace_report(samples, q, zero_based);
    for (const auto& s : r.samples) {
        Json rec{{"check", "commutator-trace-ratio"}, {"pass", true}, {"measurement", true}};
        if (s.skipped) {
            rec["skipped"] = true;
            rec["reason"] = s.reason;
        } else {
            rec["trace"] = to_json(s.trace);
            rec["combination"] = to_json(s.combination);
            rec["ratio"] = to_json(s.ratio);
        }
        report.add(std::move(rec));
    }
    report.add(Json{{"check", "commutator-trace-ratio-constant"},
                    {"pass", true},
                    {"measurement", true},
                    {"q", to_json(q)},
                    {"constant", r.constant}});
    return report;
}

} // namespace stokes::cli
