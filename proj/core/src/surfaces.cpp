#include "stokes/surfaces.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stokes::surfaces {

Kind parse_kind(const std::string& text) {
    std::string lower;
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "an" || lower == "a") return Kind::An;
    if (lower == "cfp") return Kind::CFP;
    throw std::invalid_argument("unknown family '" + text + "' (expected an or cfp)");
}

std::string kind_name(Kind kind) {
    return kind == Kind::An ? "An" : "CFP";
}

SurfaceFamily::SurfaceFamily(Kind kind, int n) : kind_(kind), n_(n) {
    if (n < 3) throw std::invalid_argument("surface family needs n >= 3");
    if (kind == Kind::CFP && n < 4) throw std::invalid_argument("CFP family needs n >= 4");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("Z" + std::to_string(i));
    for (int j = 1; j <= y_count(); ++j) names.push_back("Y" + std::to_string(j));
    vars_ = laurent::make_variables(std::move(names));
}

int SurfaceFamily::y_count() const {
    return kind_ == Kind::An ? n_ - 3 : 2 * n_ - 6;
}

int SurfaceFamily::genus() const {
    return kind_ == Kind::An ? 0 : (n_ - 1) / 2;
}

int SurfaceFamily::holes() const {
    if (kind_ == Kind::An) return 1;
    return n_ % 2 == 1 ? 1 : 2;
}

std::vector<Complex> ShearPoint::edges() const {
    std::vector<Complex> out = Z;
    out.insert(out.end(), Y.begin(), Y.end());
    return out;
}

bool ShearPoint::is_real(double tol) const {
    auto real = [tol](const Complex& c) { return std::abs(c.imag()) <= tol; };
    return std::all_of(Z.begin(), Z.end(), real) && std::all_of(Y.begin(), Y.end(), real);
}

ShearPoint make_point(const SurfaceFamily& family, std::vector<Complex> Z, std::vector<Complex> Y) {
    if (static_cast<int>(Z.size()) != family.n()) {
        throw std::invalid_argument("expected " + std::to_string(family.n()) + " Z coordinates, got " +
                                    std::to_string(Z.size()));
    }
    if (static_cast<int>(Y.size()) != family.y_count()) {
        throw std::invalid_argument("expected " + std::to_string(family.y_count()) + " Y coordinates, got " +
                                    std::to_string(Y.size()));
    }
    for (const auto& v : Z) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("non-finite Z");
    }
    for (const auto& v : Y) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("non-finite Y");
    }
    return ShearPoint{family, std::move(Z), std::move(Y)};
}

ShearPoint make_real_point(const SurfaceFamily& family, const std::vector<double>& Z, const std::vector<double>& Y) {
    return make_point(family, std::vector<Complex>(Z.begin(), Z.end()), std::vector<Complex>(Y.begin(), Y.end()));
}

ShearPoint zero_point(const SurfaceFamily& family) {
    return make_point(family, std::vector<Complex>(family.n()), std::vector<Complex>(family.y_count()));
}

ShearPoint random_point(const SurfaceFamily& family, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<Complex> Z(family.n()), Y(family.y_count());
    for (auto& v : Z) v = dist(rng);
    for (auto& v : Y) v = dist(rng);
    return make_point(family, std::move(Z), std::move(Y));
}

std::string Word::to_string(const SurfaceFamily& family) const {
    std::ostringstream os;
    if (sign < 0) os << "-";
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (k) os << ' ';
        const auto& l = letters[k];
        switch (l.kind) {
        case Letter::R: os << 'R'; break;
        case Letter::L: os << 'L'; break;
        case Letter::F: os << 'F'; break;
        case Letter::X: os << "X(" << family.edge_names().at(l.edge) << ")"; break;
        case Letter::XHalf: os << "X(" << family.edge_names().at(l.edge) << "/2)"; break;
        }
    }
    return os.str();
}

NumMat letter_matrix(Letter kind) {
    switch (kind) {
    case Letter::R: return {1.0, 1.0, -1.0, 0.0};
    case Letter::L: return {0.0, 1.0, -1.0, -1.0};
    case Letter::F: return {0.0, 1.0, -1.0, 0.0};
    default: throw std::invalid_argument("letter_matrix: X letters need a coordinate");
    }
}

NumMat x_matrix(Complex z) {
    return {0.0, -std::exp(z / 2.0), std::exp(-z / 2.0), 0.0};
}

SymMat x_matrix_symbolic(const laurent::Variables& vars, int edge, bool half) {
    const std::string& name = vars->at(edge);
    int p = half ? 1 : 2;
    return {LaurentScalar(0), -LaurentScalar::variable(vars, name, p), LaurentScalar::variable(vars, name, -p),
            LaurentScalar(0)};
}

namespace {

SymMat integer_symbolic(Letter kind) {
    NumMat m = letter_matrix(kind);
    auto cast = [](Complex v) { return LaurentScalar(static_cast<long>(v.real())); };
    return {cast(m.a), cast(m.b), cast(m.c), cast(m.d)};
}

} // namespace

NumMat evaluate_word(const Word& word, const std::vector<Complex>& edges) {
    NumMat acc = NumMat::identity();
    for (const auto& l : word.letters) {
        NumMat m;
        if (l.kind == Letter::X) m = x_matrix(edges.at(l.edge));
        else if (l.kind == Letter::XHalf) m = x_matrix(edges.at(l.edge) / 2.0);
        else m = letter_matrix(l.kind);
        acc = acc * m;
        double drift = std::abs(acc.det() - 1.0);
        if (drift > 1e-8) {
            throw std::runtime_error("evaluate_word: determinant drift " + std::to_string(drift));
        }
    }
    return word.sign < 0 ? -acc : acc;
}

SymMat evaluate_word_symbolic(const Word& word, const SurfaceFamily& family) {
    SymMat acc = SymMat::identity();
    for (const auto& l : word.letters) {
        if (l.kind == Letter::X || l.kind == Letter::XHalf) {
            acc = acc * x_matrix_symbolic(family.variables(), l.edge, l.kind == Letter::XHalf);
        } else {
            acc = acc * integer_symbolic(l.kind);
        }
    }
    return word.sign < 0 ? -acc : acc;
}

std::vector<Word> generator_words(const SurfaceFamily& family) {
    const int n = family.n();
    auto X = [](int edge) { return WordLetter{Letter::X, edge}; };
    const WordLetter R{Letter::R}, L{Letter::L}, F{Letter::F};
    std::vector<Word> out;
    out.push_back(Word{1, {F}});
    for (int i = 2; i <= n; ++i) {
        Word w{-1, {}};
        auto& s = w.letters;
        if (family.kind() == Kind::An) {
            s.push_back(X(family.z(1)));
            if (i < n) {
                for (int k = 1; k <= i - 2; ++k) s.insert(s.end(), {R, X(family.y(k))});
                s.insert(s.end(), {L, X(family.z(i)), F, X(family.z(i)), R});
                for (int k = i - 2; k >= 1; --k) s.insert(s.end(), {X(family.y(k)), L});
            } else {
                for (int k = 1; k <= n - 3; ++k) s.insert(s.end(), {R, X(family.y(k))});
                s.insert(s.end(), {R, X(family.z(n)), F, X(family.z(n)), L});
                for (int k = n - 3; k >= 1; --k) s.insert(s.end(), {X(family.y(k)), L});
            }
            s.push_back(X(family.z(1)));
        } else {
            const WordLetter half{Letter::XHalf, family.z(1)};
            const int m = std::min(i, n - 1);
            s.push_back(half);
            for (int k = n - 2; k <= n + m - 5; ++k) s.insert(s.end(), {R, X(family.y(k))});
            if (i < n) s.insert(s.end(), {L, X(family.z(i)), R});
            else s.insert(s.end(), {R, X(family.z(n)), L});
            for (int k = m - 2; k >= 1; --k) s.insert(s.end(), {X(family.y(k)), L});
            s.push_back(half);
        }
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<NumMat> build_generators(const ShearPoint& point) {
    std::vector<NumMat> out;
    const auto edges = point.edges();
    for (const auto& w : generator_words(point.family)) out.push_back(evaluate_word(w, edges));
    return out;
}

std::vector<SymMat> build_generators_symbolic(const SurfaceFamily& family) {
    std::vector<SymMat> out;
    for (const auto& w : generator_words(family)) out.push_back(evaluate_word_symbolic(w, family));
    return out;
}

Word geodesic_word_cfp(int i, int j, int n) {
    if (n < 4) throw std::invalid_argument("geodesic_word_cfp: n >= 4 required");
    if (i < 1 || j > n || i >= j) throw std::invalid_argument("geodesic_word_cfp: need 1 <= i < j <= n");
    const SurfaceFamily fam(Kind::CFP, n);
    auto Zl = [&](int k) { return WordLetter{Letter::X, fam.z(k)}; };
    auto top = [&](int k) { return WordLetter{Letter::X, fam.y(n - 3 + k)}; };
    auto bottom = [&](int k) { return WordLetter{Letter::X, fam.y(k)}; };
    const WordLetter R{Letter::R}, L{Letter::L};

    if (i == 1 && j == 2) return Word{1, {Zl(1), L, Zl(2), R}};
    if (i == n - 1 && j == n) return Word{1, {Zl(n - 1), L, Zl(n), R}};

    Word w;
    auto& s = w.letters;
    const int start = (i == 1) ? 1 : i - 1;
    const int stop = (j < n) ? j - 2 : n - 3;
    s.push_back(Zl(i));
    s.push_back(i == 1 ? R : L);
    for (int k = start; k <= stop; ++k) {
        if (k > start) s.push_back(R);
        s.push_back(top(k));
    }
    if (j < n) s.insert(s.end(), {L, Zl(j), R});
    else s.insert(s.end(), {R, Zl(n), L});
    for (int k = stop; k >= start; --k) {
        if (k < stop) s.push_back(L);
        s.push_back(bottom(k));
    }
    s.push_back(i == 1 ? L : R);
    return w;
}

Eigen::MatrixXcd stokes_matrix(const ShearPoint& point) {
    const int n = point.family.n();
    const auto g = build_generators(point);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) S(i, j) = (g[i] * g[j].adjugate()).trace();
    }
    return S;
}

Eigen::MatrixXcd stokes_matrix_from_words(const ShearPoint& point) {
    if (point.family.kind() != Kind::CFP) {
        throw std::invalid_argument("stokes_matrix_from_words: CFP family only");
    }
    const int n = point.family.n();
    const auto edges = point.edges();
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) S(i - 1, j - 1) = evaluate_word(geodesic_word_cfp(i, j, n), edges).trace();
    }
    return S;
}

SymbolicStokes::SymbolicStokes(int n, std::vector<LaurentScalar> upper) : n_(n), upper_(std::move(upper)) {
    if (static_cast<int>(upper_.size()) != n * (n - 1) / 2) {
        throw std::invalid_argument("SymbolicStokes: wrong number of entries");
    }
}

const LaurentScalar& SymbolicStokes::entry(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_ || i == j) throw std::out_of_range("SymbolicStokes::entry");
    // row-major packing of the strict upper triangle
    int offset = i * n_ - i * (i + 1) / 2 + (j - i - 1);
    return upper_[offset];
}

SymbolicStokes stokes_matrix_symbolic(const SurfaceFamily& family) {
    const int n = family.n();
    const auto g = build_generators_symbolic(family);
    std::vector<LaurentScalar> upper;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) upper.push_back((g[i] * g[j].adjugate()).trace());
    }
    return SymbolicStokes(n, std::move(upper));
}

SymbolicStokes stokes_matrix_symbolic_from_words(const SurfaceFamily& family) {
    if (family.kind() != Kind::CFP) {
        throw std::invalid_argument("stokes_matrix_symbolic_from_words: CFP family only");
    }
    const int n = family.n();
    std::vector<LaurentScalar> upper;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            upper.push_back(evaluate_word_symbolic(geodesic_word_cfp(i, j, n), family).trace());
        }
    }
    return SymbolicStokes(n, std::move(upper));
}

std::vector<std::array<int, 3>> fat_graph_vertices(const SurfaceFamily& f) {
    const int n = f.n();
    std::vector<std::array<int, 3>> v;
    if (f.kind() == Kind::An) {
        if (n == 3) return {{f.z(1), f.z(2), f.z(3)}};
        v.push_back({f.z(1), f.z(2), f.y(1)});
        for (int j = 2; j <= n - 3; ++j) v.push_back({f.y(j - 1), f.z(j + 1), f.y(j)});
        v.push_back({f.y(n - 3), f.z(n - 1), f.z(n)});
        return v;
    }
    auto T = [&](int k) { return f.y(n - 3 + k); };
    auto B = [&](int k) { return f.y(k); };
    v.push_back({f.z(1), f.z(2), T(1)});
    for (int k = 3; k <= n - 2; ++k) v.push_back({T(k - 2), f.z(k), T(k - 1)});
    v.push_back({T(n - 3), f.z(n - 1), f.z(n)});
    v.push_back({B(1), f.z(1), f.z(2)});
    for (int k = 3; k <= n - 2; ++k) v.push_back({B(k - 1), B(k - 2), f.z(k)});
    v.push_back({f.z(n), B(n - 3), f.z(n - 1)});
    return v;
}

std::vector<std::vector<int>> boundary_cycles(const SurfaceFamily& family) {
    const auto verts = fat_graph_vertices(family);
    // ends[e] lists the vertices edge e meets; -1 marks a one-valent end
    std::vector<std::vector<int>> ends(family.edge_count());
    for (int vi = 0; vi < static_cast<int>(verts.size()); ++vi) {
        for (int e : verts[vi]) ends[e].push_back(vi);
    }
    for (auto& e : ends) {
        if (e.size() == 1) e.push_back(-1);
        if (e.size() != 2) throw std::logic_error("boundary_cycles: malformed fat graph");
    }
    auto other_end = [&](int e, int v) { return ends[e][0] == v ? ends[e][1] : ends[e][0]; };

    // a dart is (edge, vertex it arrives at)
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> cycles;
    for (int e = 0; e < family.edge_count(); ++e) {
        for (int v : ends[e]) {
            std::pair<int, int> cur{e, v};
            if (seen.count(cur)) continue;
            std::vector<int> cycle;
            while (!seen.count(cur)) {
                seen.insert(cur);
                cycle.push_back(cur.first);
                auto [edge, vert] = cur;
                if (vert < 0) {
                    // one-valent end: walk back along the same edge
                    cur = {edge, other_end(edge, vert)};
                    continue;
                }
                const auto& tri = verts[vert];
                int k = static_cast<int>(std::find(tri.begin(), tri.end(), edge) - tri.begin());
                int next = tri[(k + 1) % 3];
                cur = {next, other_end(next, vert)};
            }
            cycles.push_back(std::move(cycle));
        }
    }
    return cycles;
}

std::vector<Complex> perimeters(const ShearPoint& point) {
    Complex sz = 0.0, sy = 0.0;
    for (const auto& v : point.Z) sz += v;
    for (const auto& v : point.Y) sy += v;
    if (point.family.kind() == Kind::CFP && point.family.n() % 2 == 0) return {sz, sy};
    return {sz + sy};
}

std::vector<Complex> hole_perimeters(const ShearPoint& point) {
    const auto edges = point.edges();
    std::vector<Complex> out;
    for (const auto& cycle : boundary_cycles(point.family)) {
        Complex s = 0.0;
        for (int e : cycle) s += edges[e];
        out.push_back(s);
    }
    return out;
}

namespace {

void require_an(const SurfaceFamily& f) {
    if (f.kind() != Kind::An) throw std::invalid_argument("boundary monodromy is defined for the A family");
}

} // namespace

Complex boundary_monodromy_trace(const ShearPoint& point) {
    require_an(point.family);
    NumMat prod = NumMat::identity();
    for (const auto& g : build_generators(point)) prod = prod * g;
    return prod.adjugate().trace();
}

LaurentScalar boundary_monodromy_trace_symbolic(const SurfaceFamily& family) {
    require_an(family);
    SymMat prod = SymMat::identity();
    for (const auto& g : build_generators_symbolic(family)) prod = prod * g;
    return prod.adjugate().trace();
}

Complex boundary_monodromy_prediction(const ShearPoint& point) {
    require_an(point.family);
    Complex p = kBoundaryExponentFactor * perimeters(point).front();
    return -(std::exp(p / 2.0) + std::exp(-p / 2.0));
}

SpecializationReport specialization_check(int n, bool double_z) {
    if (n < 4) throw std::invalid_argument("specialization_check: n >= 4 required");
    const SurfaceFamily an(Kind::An, n), cfp(Kind::CFP, n);
    const auto g_an = stokes_matrix_symbolic(an);
    const auto g_cfp = stokes_matrix_symbolic(cfp);

    // CFP variables expressed as monomials over the A-family variables
    std::vector<laurent::Exponents> images;
    for (int i = 1; i <= n; ++i) {
        laurent::Exponents e(an.edge_count(), 0);
        e[an.z(i)] = double_z ? 2 : 1;
        images.push_back(e);
    }
    for (int half = 0; half < 2; ++half) {
        for (int k = 1; k <= n - 3; ++k) {
            laurent::Exponents e(an.edge_count(), 0);
            e[an.y(k)] = 1;
            images.push_back(e);
        }
    }

    SpecializationReport report{n, true, {}};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            LaurentScalar diff = g_an.entry(i, j) - g_cfp.entry(i, j).substitute_monomials(an.variables(), images);
            bool eq = diff.is_zero();
            report.all_equal = report.all_equal && eq;
            report.pairs.push_back({i + 1, j + 1, eq, std::move(diff)});
        }
    }
    return report;
}

} // namespace stokes::surfaces
