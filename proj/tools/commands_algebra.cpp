#include "commands.hpp"

#include "stokes/poisson.hpp"

namespace stokes::cli {

namespace {

Json entry_json(poisson::EntryIndex e) { return Json::array({e.i + 1, e.j + 1}); }

Json symbolic_entries(const surfaces::SurfaceFamily& family) {
    const auto s = surfaces::stokes_matrix_symbolic(family);
    Json out = Json::array();
    for (int i = 0; i < s.n(); ++i)
        for (int j = i + 1; j < s.n(); ++j)
            out.push_back(Json{{"entry", Json::array({i + 1, j + 1})}, {"laurent", s.entry(i, j).serialize()}});
    return out;
}

std::string rational_text(const laurent::GaussRational& g) {
    if (g.is_real()) return g.re().get_str();
    return g.re().get_str() + (sgn(g.im()) < 0 ? "" : "+") + g.im().get_str() + "i";
}

} // namespace

Report cmd_verify_bracket(const Options& o) {
    const auto family = family_of(o);
    Report report("verify-bracket", params_json("verify-bracket", o));
    const auto result = poisson::verify_bracket_identity(family, o.jobs);
    for (const auto& p : result.pairs)
        report.add(Json{{"check", "goldman-bracket-equals-reference-bracket"},
                        {"pass", p.pass},
                        {"p", entry_json(p.p)},
                        {"q", entry_json(p.q)},
                        {"scale", result.scale},
                        {"difference_terms", p.difference_terms}});
    if (o.dump_symbolic) report.attach("entries", symbolic_entries(family));
    return report;
}

Report cmd_stokes(const Options& o) {
    const auto points = points_of(o);
    Report report("stokes", params_json("stokes", o));
    const auto records = parallel_records(static_cast<int>(points.size()), o.jobs, [&](int k) {
        const auto& p = points[k];
        const Eigen::MatrixXcd S = surfaces::stokes_matrix(p);
        double smallest = INFINITY;
        for (int i = 0; i < S.rows(); ++i)
            for (int j = i + 1; j < S.cols(); ++j) smallest = std::min(smallest, S(i, j).real());
        return Json{{"check", "geodesic-entries-exceed-two"},
                    {"pass", smallest > 2.0},
                    {"point", point_json(p)},
                    {"min_entry", smallest},
                    {"S", to_json(S)}};
    });
    for (auto r : records) report.add(std::move(r));
    if (o.dump_symbolic) report.attach("entries", symbolic_entries(family_of(o)));
    return report;
}

Report cmd_calibrate_incidence(const Options& o) {
    const auto family = family_of(o);
    if (family.n() > 6) throw UsageError("calibrate-incidence supports n <= 6");
    Report report("calibrate-incidence", params_json("calibrate-incidence", o));
    const auto cal = poisson::calibrate_incidence_form(family);
    const Eigen::MatrixXi candidate = poisson::form_from_vertices(family, surfaces::fat_graph_vertices(family));
    Json B = Json::array();
    for (int i = 0; i < cal.form.B.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < cal.form.B.cols(); ++j) row.push_back(cal.form.B(i, j));
        B.push_back(std::move(row));
    }
    const bool matches = cal.form.B == candidate;
    report.add(Json{{"check", "incidence-form-calibration"},
                    {"pass", cal.unique && matches},
                    {"unique", cal.unique},
                    {"matches_fat_graph", matches},
                    {"rank", cal.rank},
                    {"unknowns", cal.unknowns},
                    {"equations", cal.equations},
                    {"free_unknowns", cal.free_unknowns},
                    {"edges", family.edge_names()},
                    {"B", B}});
    return report;
}

Report cmd_skein(const Options& o) {
    const auto family = family_of(o);
    Report report("skein", params_json("skein", o));
    const auto records = parallel_records(o.samples, o.jobs, [&](int k) {
        auto rng = sample_rng(o.seed, k);
        const auto a = poisson::random_word(family, rng, 6);
        const auto b = poisson::random_word(family, rng, 6);
        const auto residual = poisson::skein_residual(surfaces::evaluate_word_symbolic(a, family),
                                                      surfaces::evaluate_word_symbolic(b, family));
        return Json{{"check", "trace-skein-relation"},
                    {"pass", residual.is_zero()},
                    {"A", a.to_string(family)},
                    {"B", b.to_string(family)},
                    {"residual_terms", residual.size()}};
    });
    for (auto r : records) report.add(std::move(r));
    return report;
}

Report cmd_casimir(const Options& o) {
    const auto family = family_of(o);
    Report report("casimir", params_json("casimir", o));
    for (const auto& r : poisson::casimir_check(family).records)
        report.add(Json{{"check", "casimir-commutes-with-entry"},
                        {"pass", r.vanishes},
                        {"function", r.function},
                        {"entry", entry_json(r.entry)}});
    return report;
}

Report cmd_trace_bracket_calibration(const Options& o) {
    const auto family = family_of(o);
    if (family.n() > 5) throw UsageError("trace-bracket-calibration supports n <= 5");
    Report report("trace-bracket-calibration", params_json("trace-bracket-calibration", o));
    const auto t = poisson::trace_bracket_calibration(family);
    for (const auto& p : t.pairs) {
        Json r{{"check", "trace-bracket-ratio"}, {"pass", true}, {"a", entry_json(p.a)}, {"b", entry_json(p.b)}};
        if (p.skipped) {
            r["skipped"] = true;
            r["reason"] = p.reason;
        } else {
            r["proportional"] = p.proportional;
            if (p.proportional) r["ratio"] = rational_text(p.ratio);
        }
        report.add(std::move(r));
    }
    report.add(Json{{"check", "trace-bracket-ratio-constant"},
                    {"pass", true},
                    {"measurement", true},
                    {"constant", t.constant},
                    {"value", t.constant ? Json(rational_text(t.value)) : Json(nullptr)}});
    return report;
}

} // namespace stokes::cli
