#include "stokes/poisson.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace stokes::poisson {

using laurent::Exponents;
using surfaces::Kind;

Eigen::MatrixXi form_from_vertices(const SurfaceFamily& family, const std::vector<std::array<int, 3>>& vertices) {
    const int m = family.edge_count();
    Eigen::MatrixXi B = Eigen::MatrixXi::Zero(m, m);
    for (const auto& v : vertices) {
        for (int a = 0; a < 3; ++a) {
            int x = v[a], y = v[(a + 1) % 3];
            B(x, y) += 1;
            B(y, x) -= 1;
        }
    }
    return B;
}

long reference_scale(Kind kind) {
    return kind == Kind::An ? 2 : 1;
}

namespace {

std::mutex calibration_mutex;
std::map<std::pair<int, int>, Eigen::MatrixXi> calibration_cache;

Eigen::MatrixXi cached_calibration(const SurfaceFamily& family) {
    const auto key = std::make_pair(static_cast<int>(family.kind()), family.n());
    {
        std::lock_guard<std::mutex> lock(calibration_mutex);
        auto it = calibration_cache.find(key);
        if (it != calibration_cache.end()) return it->second;
    }
    Eigen::MatrixXi B = calibrate_incidence_form(family).form.B;
    std::lock_guard<std::mutex> lock(calibration_mutex);
    calibration_cache[key] = B;
    return B;
}

} // namespace

IncidenceForm incidence_form(const SurfaceFamily& family) {
    auto vertices = surfaces::fat_graph_vertices(family);
    IncidenceForm form{family, form_from_vertices(family, vertices), vertices, "candidate"};
    if (family.n() <= 6) {
        Eigen::MatrixXi calibrated = cached_calibration(family);
        if (calibrated == form.B) {
            form.provenance = "candidate+calibrated";
        } else {
            form.B = calibrated;
            form.provenance = "calibrated";
        }
    }
    return form;
}

LaurentScalar goldman_bracket(const LaurentScalar& f, const LaurentScalar& g, const IncidenceForm& form) {
    const auto& vars = form.family.variables();
    const LaurentScalar F = f.over(laurent::merge_variables(vars, f.variables()));
    const LaurentScalar G = g.over(F.variables());
    if (F.variables()->size() != vars->size()) {
        throw std::invalid_argument("goldman_bracket: operands use variables outside the family");
    }
    const int m = static_cast<int>(vars->size());
    laurent::TermMap acc;
    Exponents sum(m);
    std::vector<long> row(m);
    for (const auto& [e1, c1] : F.terms()) {
        // row = e1^T B, so e1^T B e2 is the bracket weight of the monomial pair
        for (int b = 0; b < m; ++b) {
            long s = 0;
            for (int a = 0; a < m; ++a) s += static_cast<long>(e1[a]) * form.B(a, b);
            row[b] = s;
        }
        for (const auto& [e2, c2] : G.terms()) {
            long w = 0;
            for (int b = 0; b < m; ++b) w += row[b] * e2[b];
            if (w == 0) continue;
            for (int k = 0; k < m; ++k) sum[k] = e1[k] + e2[k];
            GaussRational c = c1 * c2 * GaussRational(mpq_class(w, 16));
            auto [it, inserted] = acc.try_emplace(sum, c);
            if (!inserted) it->second += c;
        }
    }
    return LaurentScalar::from_terms(vars, std::move(acc));
}

LaurentScalar linear_bracket(const std::vector<long>& coefficients, const LaurentScalar& g, const IncidenceForm& form) {
    const int m = form.family.edge_count();
    if (static_cast<int>(coefficients.size()) != m) {
        throw std::invalid_argument("linear_bracket: one coefficient per edge required");
    }
    const auto& vars = form.family.variables();
    LaurentScalar out = LaurentScalar::constant(vars, 0);
    for (int b = 0; b < m; ++b) {
        long w = 0;
        for (int a = 0; a < m; ++a) w += coefficients[a] * form.B(a, b);
        if (w == 0) continue;
        LaurentScalar d = g.over(vars).shear_derivative((*vars)[b]);
        out += d.scale(GaussRational(w));
    }
    return out;
}

namespace {

EntryIndex entry(int a, int b) {
    return a < b ? EntryIndex{a, b} : EntryIndex{b, a};
}

bool direct_case(int i, int k, int j, int l, ReferenceExpression& out) {
    const GaussRational half(mpq_class(1, 2));
    if ((i < k && k < j && j < l) || (i < j && j < l && l < k)) return true;
    if (i < j && j < k && k < l) {
        out.quadratic.push_back({1, entry(i, j), entry(k, l)});
        out.quadratic.push_back({-1, entry(i, l), entry(k, j)});
        return true;
    }
    if (k == j && i < k && k < l) {
        out.quadratic.push_back({half, entry(i, k), entry(k, l)});
        out.linear.push_back({-1, entry(i, l)});
        return true;
    }
    if (k == l && i < j && j < k) {
        out.quadratic.push_back({-half, entry(i, k), entry(j, k)});
        out.linear.push_back({1, entry(i, j)});
        return true;
    }
    if (i == j && i < k && k < l) {
        out.quadratic.push_back({-half, entry(i, k), entry(i, l)});
        out.linear.push_back({1, entry(k, l)});
        return true;
    }
    return false;
}

} // namespace

ReferenceExpression du_reference_bracket(EntryIndex p, EntryIndex q) {
    if (p.i >= p.j || q.i >= q.j) throw std::invalid_argument("du_reference_bracket: indices must satisfy i < j");
    if (p.i == q.i && p.j == q.j) return {};
    ReferenceExpression out;
    if (direct_case(p.i, p.j, q.i, q.j, out)) return out;
    if (direct_case(q.i, q.j, p.i, p.j, out)) {
        for (auto& t : out.quadratic) t.coeff = -t.coeff;
        for (auto& t : out.linear) t.coeff = -t.coeff;
        return out;
    }
    throw std::logic_error("du_reference_bracket: uncovered index pattern");
}

LaurentScalar evaluate_reference(const ReferenceExpression& expr, const surfaces::SymbolicStokes& s,
                                 const GaussRational& scale) {
    LaurentScalar out;
    for (const auto& t : expr.quadratic) {
        LaurentScalar term = s.entry(t.first.i, t.first.j) * s.entry(t.second.i, t.second.j);
        out += term.scale(t.coeff * scale);
    }
    for (const auto& t : expr.linear) {
        LaurentScalar term = s.entry(t.entry.i, t.entry.j);
        out += term.scale(t.coeff * scale);
    }
    return out;
}

Complex evaluate_reference(const ReferenceExpression& expr, const Eigen::MatrixXcd& s, Complex scale) {
    Complex out = 0.0;
    for (const auto& t : expr.quadratic) {
        out += t.coeff.to_complex() * s(t.first.i, t.first.j) * s(t.second.i, t.second.j);
    }
    for (const auto& t : expr.linear) out += t.coeff.to_complex() * s(t.entry.i, t.entry.j);
    return out * scale;
}

namespace {

std::vector<std::pair<EntryIndex, EntryIndex>> entry_pairs(int n) {
    std::vector<EntryIndex> entries;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) entries.push_back({i, j});
    }
    std::vector<std::pair<EntryIndex, EntryIndex>> out;
    for (std::size_t a = 0; a < entries.size(); ++a) {
        for (std::size_t b = a + 1; b < entries.size(); ++b) out.emplace_back(entries[a], entries[b]);
    }
    return out;
}

template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) fn(k);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace

IdentityReport verify_bracket_identity(const SurfaceFamily& family, int jobs) {
    const IncidenceForm form = incidence_form(family);
    const auto S = surfaces::stokes_matrix_symbolic(family);
    const long scale = reference_scale(family.kind());
    const auto pairs = entry_pairs(family.n());
    IdentityReport report{family, scale, true, std::vector<PairRecord>(pairs.size())};
    parallel_for(pairs.size(), jobs, [&](std::size_t k) {
        const auto [p, q] = pairs[k];
        LaurentScalar lhs = goldman_bracket(S.entry(p.i, p.j), S.entry(q.i, q.j), form);
        LaurentScalar rhs = evaluate_reference(du_reference_bracket(p, q), S, GaussRational(scale));
        LaurentScalar diff = lhs - rhs;
        report.pairs[k] = PairRecord{p, q, diff.is_zero(), diff.size()};
    });
    for (const auto& r : report.pairs) report.all_pass = report.all_pass && r.pass;
    return report;
}

namespace {

using SparseRow = std::map<int, mpq_class>;

struct Equation {
    SparseRow row;
    mpq_class rhs;
};

/// Streaming exact Gaussian elimination keeping rows in echelon form.
class EchelonSolver {
public:
    explicit EchelonSolver(int unknowns) : unknowns_(unknowns) {}

    void add(Equation eq) {
        ++equations_;
        SparseRow& row = eq.row;
        while (!row.empty()) {
            auto lead = row.begin();
            auto piv = pivots_.find(lead->first);
            if (piv == pivots_.end()) break;
            mpq_class factor = lead->second;
            for (const auto& [col, v] : piv->second.row) {
                mpq_class& x = row[col];
                x -= factor * v;
                if (sgn(x) == 0) row.erase(col);
            }
            eq.rhs -= factor * piv->second.rhs;
        }
        if (row.empty()) {
            if (sgn(eq.rhs) != 0) inconsistent_ = true;
            return;
        }
        mpq_class lead = row.begin()->second;
        for (auto& [col, v] : row) v /= lead;
        eq.rhs /= lead;
        int col = row.begin()->first;
        pivots_.emplace(col, std::move(eq));
    }

    bool inconsistent() const { return inconsistent_; }
    int rank() const { return static_cast<int>(pivots_.size()); }
    std::size_t equations() const { return equations_; }

    /// Back substitution with free unknowns set to zero.
    std::vector<mpq_class> solve() const {
        std::vector<mpq_class> x(unknowns_, 0);
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            mpq_class v = it->second.rhs;
            for (const auto& [col, a] : it->second.row) {
                if (col != it->first) v -= a * x[col];
            }
            x[it->first] = v;
        }
        return x;
    }

    bool is_pivot(int col) const { return pivots_.count(col) > 0; }

private:
    int unknowns_;
    std::size_t equations_ = 0;
    bool inconsistent_ = false;
    std::map<int, Equation> pivots_;
};

} // namespace

CalibrationResult calibrate_incidence_form(const SurfaceFamily& family) {
    if (family.n() > 6) throw std::invalid_argument("calibrate_incidence_form: n <= 6 required");
    const int m = family.edge_count();
    const auto& vars = family.variables();
    std::vector<std::pair<int, int>> unknown_edges;
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) unknown_edges.emplace_back(a, b);
    }
    const int unknowns = static_cast<int>(unknown_edges.size());
    const auto S = surfaces::stokes_matrix_symbolic(family);
    const GaussRational scale(reference_scale(family.kind()));

    EchelonSolver solver(unknowns);
    for (const auto& [p, q] : entry_pairs(family.n())) {
        const LaurentScalar f = S.entry(p.i, p.j).over(vars);
        const LaurentScalar g = S.entry(q.i, q.j).over(vars);
        std::map<Exponents, std::map<int, GaussRational>> lhs;
        Exponents sum(m);
        for (const auto& [e1, c1] : f.terms()) {
            for (const auto& [e2, c2] : g.terms()) {
                for (int k = 0; k < m; ++k) sum[k] = e1[k] + e2[k];
                GaussRational c = c1 * c2;
                auto& row = lhs[sum];
                for (int u = 0; u < unknowns; ++u) {
                    auto [a, b] = unknown_edges[u];
                    long w = static_cast<long>(e1[a]) * e2[b] - static_cast<long>(e2[a]) * e1[b];
                    if (w == 0) continue;
                    row[u] += c * GaussRational(mpq_class(w, 16));
                }
            }
        }
        const LaurentScalar rhs = evaluate_reference(du_reference_bracket(p, q), S, scale).over(vars);
        for (const auto& [e, c] : rhs.terms()) lhs[e];
        for (const auto& [e, row] : lhs) {
            auto it = rhs.terms().find(e);
            GaussRational target = it == rhs.terms().end() ? GaussRational(0) : it->second;
            Equation re, im;
            for (const auto& [u, c] : row) {
                if (sgn(c.re()) != 0) re.row[u] = c.re();
                if (sgn(c.im()) != 0) im.row[u] = c.im();
            }
            re.rhs = target.re();
            im.rhs = target.im();
            if (!re.row.empty() || sgn(re.rhs) != 0) solver.add(std::move(re));
            if (!im.row.empty() || sgn(im.rhs) != 0) solver.add(std::move(im));
        }
        if (solver.inconsistent()) {
            throw std::runtime_error("calibrate_incidence_form: infeasible system for " + family.name() + " n=" +
                                     std::to_string(family.n()));
        }
    }

    const auto x = solver.solve();
    CalibrationResult result{IncidenceForm{family, Eigen::MatrixXi::Zero(m, m), {}, "calibrated"},
                             solver.rank() == unknowns, solver.rank(), unknowns, solver.equations(), {}};
    for (int u = 0; u < unknowns; ++u) {
        auto [a, b] = unknown_edges[u];
        if (!solver.is_pivot(u)) result.free_unknowns.push_back((*vars)[a] + "," + (*vars)[b]);
        if (x[u].get_den() != 1) {
            throw std::runtime_error("calibrate_incidence_form: non-integer entry for " + (*vars)[a] + "," +
                                     (*vars)[b]);
        }
        int v = static_cast<int>(x[u].get_num().get_si());
        result.form.B(a, b) = v;
        result.form.B(b, a) = -v;
    }
    return result;
}

LaurentScalar skein_residual(const surfaces::SymMat& A, const surfaces::SymMat& B) {
    return A.trace() * B.trace() - (A * B).trace() - (A * B.adjugate()).trace();
}

Complex skein_residual(const surfaces::NumMat& A, const surfaces::NumMat& B) {
    return A.trace() * B.trace() - (A * B).trace() - (A * B.adjugate()).trace();
}

surfaces::Word random_word(const SurfaceFamily& family, std::mt19937_64& rng, int max_length) {
    using surfaces::Letter;
    std::vector<surfaces::WordLetter> alphabet{{Letter::R}, {Letter::L}, {Letter::F}};
    for (int e = 0; e < family.edge_count(); ++e) alphabet.push_back({Letter::X, e});
    if (family.kind() == Kind::CFP) alphabet.push_back({Letter::XHalf, family.z(1)});
    std::uniform_int_distribution<int> len(1, max_length);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    surfaces::Word w;
    int count = len(rng);
    for (int k = 0; k < count; ++k) w.letters.push_back(alphabet[pick(rng)]);
    return w;
}

CasimirReport casimir_check(const SurfaceFamily& family) {
    const IncidenceForm form = incidence_form(family);
    const auto S = surfaces::stokes_matrix_symbolic(family);
    const int m = family.edge_count();
    std::vector<std::pair<std::string, std::vector<long>>> functions;
    functions.emplace_back("sum", std::vector<long>(m, 1));
    const auto cycles = surfaces::boundary_cycles(family);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        std::vector<long> coeff(m, 0);
        for (int e : cycles[c]) coeff[e] += 1;
        functions.emplace_back("cycle" + std::to_string(c + 1), coeff);
    }
    CasimirReport report{family, true, {}};
    for (const auto& [name, coeff] : functions) {
        for (int i = 0; i < family.n(); ++i) {
            for (int j = i + 1; j < family.n(); ++j) {
                bool zero = linear_bracket(coeff, S.entry(i, j), form).is_zero();
                report.all_vanish = report.all_vanish && zero;
                report.records.push_back({name, {i, j}, zero});
            }
        }
    }
    return report;
}

TraceCalibrationReport trace_bracket_calibration(const SurfaceFamily& family) {
    if (family.n() > 5) throw std::invalid_argument("trace_bracket_calibration: n <= 5 required");
    const IncidenceForm form = incidence_form(family);
    const auto g = surfaces::build_generators_symbolic(family);
    const int n = family.n();
    std::vector<EntryIndex> entries;
    std::vector<surfaces::SymMat> elements;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            entries.push_back({i, j});
            elements.push_back(g[i] * g[j].adjugate());
        }
    }
    TraceCalibrationReport report{family, true, GaussRational(0), {}};
    bool have_value = false;
    const GaussRational half(mpq_class(1, 2));
    for (std::size_t a = 0; a < entries.size(); ++a) {
        for (std::size_t b = a + 1; b < entries.size(); ++b) {
            const auto& A = elements[a];
            const auto& B = elements[b];
            LaurentScalar lhs = goldman_bracket(A.trace(), B.trace(), form);
            LaurentScalar rhs = ((A * B).trace() - (A * B.adjugate()).trace()).scale(half);
            TraceCalibrationPair rec{entries[a], entries[b], false, "", false, GaussRational(0)};
            if (rhs.is_zero()) {
                rec.skipped = true;
                rec.reason = lhs.is_zero() ? "both sides vanish" : "denominator vanishes";
                report.pairs.push_back(rec);
                continue;
            }
            const LaurentScalar rhs_full = rhs.over(form.family.variables());
            const auto& [e0, c0] = *rhs_full.terms().begin();
            const LaurentScalar lhs_full = lhs.over(form.family.variables());
            auto it = lhs_full.terms().find(e0);
            GaussRational ratio = it == lhs_full.terms().end() ? GaussRational(0) : it->second / c0;
            LaurentScalar scaled = rhs;
            rec.proportional = (lhs - scaled.scale(ratio)).is_zero();
            rec.ratio = ratio;
            if (!rec.proportional) {
                report.constant = false;
            } else if (!have_value) {
                report.value = ratio;
                have_value = true;
            } else if (!(report.value == ratio)) {
                report.constant = false;
            }
            report.pairs.push_back(rec);
        }
    }
    if (!have_value) report.constant = false;
    return report;
}

} // namespace stokes::poisson
