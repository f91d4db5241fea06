#include "commands.hpp"

#include <cmath>

#include "stokes/isomonodromy.hpp"
#include "stokes/leaves.hpp"

namespace stokes::cli {

namespace {

using surfaces::Kind;

Json blocks_json(const std::vector<leaves::JordanBlock>& blocks) {
    Json out = Json::array();
    for (const auto& b : blocks)
        out.push_back(Json{{"eigenvalue", to_json(b.eigenvalue)}, {"size", b.size}, {"multiplicity", b.multiplicity}});
    return out;
}

int expected_leaf_dim(const surfaces::SurfaceFamily& f) {
    const int n = f.n();
    if (f.kind() == Kind::An) return 2 * (n - 2);
    return n % 2 == 1 ? 3 * n - 7 : 3 * n - 8;
}

Json leaf_record(const leaves::JordanProfile& profile, int n, double expected) {
    Json r{{"check", "bondal-leaf-dimension"}, {"blocks", blocks_json(profile.blocks)}, {"expected", expected}};
    try {
        const auto ld = leaves::bondal_dimension(profile, n);
        r["d"] = ld.d;
        r["leaf_dim"] = ld.leaf_dim;
        r["discrepancy"] = leaves::discrepancy(n, ld.leaf_dim);
        r["pass"] = ld.leaf_dim == expected && !profile.flagged;
    } catch (const std::invalid_argument& e) {
        r["error"] = e.what();
        r["pass"] = false;
    }
    if (profile.flagged) r["flag"] = profile.flag_reason;
    return r;
}

template <class F>
void add_all(Report& report, int count, int jobs, F fn) {
    for (auto r : parallel_records(count, jobs, fn)) report.add(std::move(r));
}

} // namespace

Report cmd_jordan(const Options& o) {
    const auto points = points_of(o);
    Report report("jordan", params_json("jordan", o));
    add_all(report, static_cast<int>(points.size()), o.jobs, [&](int k) {
        const auto& p = points[k];
        const auto c = leaves::verify_jordan_theorems(p, o.tol);
        Json r{{"check", "jordan-form-matches-prediction"}, {"point", point_json(p)}};
        if (c.skipped) {
            r["pass"] = true;
            r["skipped"] = true;
            r["reason"] = c.reason;
            return r;
        }
        r["pass"] = c.eigenvalues_match && c.blocks_match;
        r["eigenvalues_match"] = c.eigenvalues_match;
        r["blocks_match"] = c.blocks_match;
        r["max_relative_error"] = c.max_relative_error;
        r["blocks"] = blocks_json(c.computed.blocks);
        r["predicted"] = blocks_json(c.predicted);
        r["block_at_minus_one"] = c.computed.multiplicity_of_size(-1.0, 2, 1e-8) > 0;
        if (c.computed.flagged) r["flag"] = c.computed.flag_reason;
        return r;
    });
    return report;
}

Report cmd_leaf_dim(const Options& o) {
    Report report("leaf-dim", params_json("leaf-dim", o));
    if (o.generic) {
        const int n = o.n > 0 ? o.n : 4;
        add_all(report, o.samples, o.jobs, [&](int k) {
            auto rng = sample_rng(o.seed, k);
            const Eigen::MatrixXcd S = isomonodromy::random_integer_stokes(n, rng);
            const auto profile = leaves::jordan_profile(leaves::monodromy_product(S), o.tol);
            Json r = leaf_record(profile, n, n * (n - 1) / 2 - n / 2);
            r["S"] = to_json(S);
            return r;
        });
        return report;
    }
    const auto points = points_of(o);
    const auto family = family_of(o);
    add_all(report, static_cast<int>(points.size()), o.jobs, [&](int k) {
        Json r = leaf_record(leaves::point_jordan_profile(points[k]), family.n(), expected_leaf_dim(family));
        r["point"] = point_json(points[k]);
        return r;
    });
    return report;
}

Report cmd_rank(const Options& o) {
    const auto points = points_of(o);
    const auto family = family_of(o);
    const int expected = family.kind() == Kind::An ? 3 : 4;
    Report report("rank", params_json("rank", o));
    add_all(report, static_cast<int>(points.size()), o.jobs, [&](int k) {
        const int r = leaves::point_symmetric_rank(points[k]);
        return Json{{"check", "rank-of-symmetric-part"},
                    {"pass", r == std::min(expected, family.n())},
                    {"rank", r},
                    {"rank_double", leaves::symmetric_rank(surfaces::stokes_matrix(points[k]), o.tol)},
                    {"bound", expected},
                    {"point", point_json(points[k])}};
    });
    return report;
}

Report cmd_minkowski(const Options& o) {
    const auto points = points_of(o);
    const bool an = family_of(o).kind() == Kind::An;
    Report report("minkowski", params_json("minkowski", o));
    add_all(report, static_cast<int>(points.size()), o.jobs, [&](int k) {
        const auto m = leaves::minkowski_vectors(points[k]);
        Json vectors = Json::array();
        for (int i = 0; i < m.vectors.rows(); ++i)
            vectors.push_back(Json::array({m.vectors(i, 0), m.vectors(i, 1), m.vectors(i, 2), m.vectors(i, 3)}));
        const bool pass = m.max_norm_error <= o.tol && m.max_gram_error <= o.tol &&
                          (!an || m.max_fourth_component <= o.tol) && m.all_timelike_separated;
        return Json{{"check", "minkowski-gram-equals-geodesics"},
                    {"pass", pass},
                    {"metric", Json::array({m.metric(0), m.metric(1), m.metric(2), m.metric(3)})},
                    {"max_norm_error", m.max_norm_error},
                    {"max_gram_error", m.max_gram_error},
                    {"max_fourth_component", m.max_fourth_component},
                    {"all_timelike_separated", m.all_timelike_separated},
                    {"vectors", vectors},
                    {"point", point_json(points[k])}};
    });
    return report;
}

Report cmd_markov(const Options& o) {
    const auto family = family_of(o);
    if (family.kind() != Kind::An || family.n() != 3) throw UsageError("markov needs --family an --n 3");
    const auto points = points_of(o);
    Report report("markov", params_json("markov", o));
    add_all(report, static_cast<int>(points.size()), o.jobs, [&](int k) {
        const auto m = leaves::markov_element(points[k]);
        const double bound = 1e-9 * (1 + std::abs(m.predicted));
        return Json{{"check", "markov-element-equals-perimeter-form"},
                    {"pass", m.residual <= bound && m.M >= -bound},
                    {"a", m.a},
                    {"b", m.b},
                    {"c", m.c},
                    {"M", m.M},
                    {"predicted", m.predicted},
                    {"residual", m.residual},
                    {"point", point_json(points[k])}};
    });
    return report;
}

Report cmd_char_identity(const Options& o) {
    const auto points = points_of(o);
    Report report("char-identity", params_json("char-identity", o));
    const auto records = parallel_records(static_cast<int>(points.size()), o.jobs, [&](int k) {
        auto rng = sample_rng(o.seed ^ 0x5bd1e995u, k);
        const auto lambdas = leaves::sample_lambdas(rng, 20);
        const double residual = leaves::characteristic_identity(points[k], lambdas);
        const auto twin = leaves::same_perimeter_point(points[k], rng);
        double spread = 0;
        for (const auto& l : lambdas) {
            const auto a = leaves::characteristic_determinant(points[k], l);
            const auto b = leaves::characteristic_determinant(twin, l);
            spread = std::max(spread, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
        }
        return Json::array({Json{{"check", "characteristic-determinant-closed-form"},
                                 {"pass", residual <= 1e-8},
                                 {"max_relative_residual", residual},
                                 {"point", point_json(points[k])}},
                            Json{{"check", "characteristic-determinant-depends-only-on-perimeters"},
                                 {"pass", spread <= 1e-8},
                                 {"max_relative_difference", spread},
                                 {"point", point_json(points[k])},
                                 {"twin", point_json(twin)}}});
    });
    for (const auto& pair : records)
        for (const auto& r : pair) report.add(r);
    return report;
}

Report cmd_isospectral(const Options& o) {
    Report report("isospectral", params_json("isospectral", o));
    std::vector<std::array<double, 3>> triples;
    if (!o.X.empty()) {
        const auto x = parse_list(o.X);
        if (x.size() != 3) throw UsageError("--X takes three values");
        triples.push_back({x[0], x[1], x[2]});
    } else {
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (int k = 0; k < o.samples; ++k) {
            auto rng = sample_rng(o.seed, k);
            triples.push_back({d(rng), d(rng), d(rng)});
        }
    }
    add_all(report, static_cast<int>(triples.size()), o.jobs, [&](int k) {
        const auto& X = triples[k];
        const auto r = leaves::isospectral_solve(X);
        return Json{{"check", "isospectral-identification"},
                    {"pass", r.converged && r.real_solution == (r.markov >= 0)},
                    {"X", Json::array({X[0], X[1], X[2]})},
                    {"Z", to_json(std::vector<std::complex<double>>(r.Z.begin(), r.Z.end()))},
                    {"residual", r.residual},
                    {"iterations", r.iterations},
                    {"converged", r.converged},
                    {"real_solution", r.real_solution},
                    {"markov", r.markov}};
    });
    return report;
}

} // namespace stokes::cli
