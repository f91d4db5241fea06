#include "stokes/leaves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace stokes::leaves {

using surfaces::Kind;

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;
template <class R>
using CMat = Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>;

// Working tolerance of the 50-digit path.
constexpr double kPreciseTol = 1e-30;

template <class R>
Complex to_double(const std::complex<R>& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class R>
std::complex<R> from_double(Complex z) {
    return {R(z.real()), R(z.imag())};
}

} // namespace

Eigen::MatrixXcd monodromy_product(const Eigen::MatrixXcd& S) {
    return S.transpose().triangularView<Eigen::UnitLower>().solve(S);
}

double monodromy_residual(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& M) {
    return (S.transpose() * M - S).norm();
}

namespace {

template <class R>
int numeric_rank(const CMat<R>& A, double tol) {
    Eigen::JacobiSVD<CMat<R>> svd(A);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    const R top = s(0);
    const R cut = R(tol) * (top > 1 ? top : R(1));
    int r = 0;
    for (int k = 0; k < s.size(); ++k)
        if (s(k) > cut) ++r;
    return r;
}

double radius(Complex z, double tol) { return std::sqrt(tol) * std::max(1.0, std::abs(z)); }

template <class R>
R radius(const std::complex<R>& z, double tol) {
    const R m = abs(z);
    return R(std::sqrt(tol)) * (m > 1 ? m : R(1));
}

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= 10.0 * radius(b, tol); }

void assign_pairing(JordanProfile& p, double tol) {
    p.pairs.clear();
    p.self_paired.clear();
    p.pairing_ok = true;
    auto add_self = [&](int sign, int size, int count) {
        for (auto& s : p.self_paired)
            if (s.sign == sign && s.size == size) {
                s.count += count;
                return;
            }
        p.self_paired.push_back({sign, size, count});
    };
    auto add_pair = [&](Complex ev, int size, int count) {
        for (auto& q : p.pairs)
            if (q.size == size && near(ev, q.eigenvalue, tol)) {
                q.count += count;
                return;
            }
        p.pairs.push_back({ev, size, count});
    };
    for (const auto& b : p.blocks) {
        const int self_sign = b.size % 2 == 1 ? 1 : -1;
        if (near(b.eigenvalue, double(self_sign), tol)) {
            add_self(self_sign, b.size, b.multiplicity);
        } else if (near(b.eigenvalue, double(-self_sign), tol)) {
            if (b.multiplicity % 2 != 0) p.pairing_ok = false;
            add_pair(double(-self_sign), b.size, b.multiplicity / 2);
        } else {
            const Complex inv = 1.0 / b.eigenvalue;
            int partner = 0;
            for (const auto& o : p.blocks)
                if (o.size == b.size && near(o.eigenvalue, inv, tol)) partner += o.multiplicity;
            if (partner != b.multiplicity) p.pairing_ok = false;
            const double mod = std::abs(b.eigenvalue);
            const bool representative = std::abs(mod - 1.0) > 10.0 * radius(1.0, tol) ? mod > 1.0 : b.eigenvalue.imag() > 0;
            if (representative) add_pair(b.eigenvalue, b.size, b.multiplicity);
        }
    }
}

void add_block(std::vector<JordanBlock>& blocks, Complex ev, int size, int mult) {
    if (mult > 0) blocks.push_back({ev, size, mult});
}

} // namespace

int JordanProfile::dimension() const {
    int d = 0;
    for (const auto& b : blocks) d += b.size * b.multiplicity;
    return d;
}

int JordanProfile::multiplicity_of_size(Complex eigenvalue, int size, double tol) const {
    int m = 0;
    for (const auto& b : blocks)
        if (b.size == size && std::abs(b.eigenvalue - eigenvalue) <= tol * std::max(1.0, std::abs(eigenvalue)))
            m += b.multiplicity;
    return m;
}

namespace {

template <class R>
JordanProfile profile_impl(const CMat<R>& M, double tol) {
    using C = std::complex<R>;
    const int n = static_cast<int>(M.rows());
    JordanProfile out;
    if (n == 0) return out;
    Eigen::ComplexEigenSolver<CMat<R>> es(M, false);
    std::vector<C> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (abs(ev[i] - ev[j]) <= std::max(radius(ev[i], tol), radius(ev[j], tol)))
                parent[find(i)] = find(j);

    std::vector<std::vector<int>> clusters;
    {
        std::vector<int> slot(n, -1);
        for (int i = 0; i < n; ++i) {
            const int r = find(i);
            if (slot[r] < 0) {
                slot[r] = static_cast<int>(clusters.size());
                clusters.emplace_back();
            }
            clusters[slot[r]].push_back(i);
        }
    }
    std::vector<C> centers;
    for (const auto& c : clusters) {
        C s(0);
        for (int i : c) s += ev[i];
        centers.push_back(s / R(static_cast<int>(c.size())));
    }
    for (std::size_t a = 0; a < centers.size(); ++a)
        for (std::size_t b = a + 1; b < centers.size(); ++b)
            if (abs(centers[a] - centers[b]) <= 10 * std::max(radius(centers[a], tol), radius(centers[b], tol))) {
                out.flagged = true;
                out.flag_reason = "eigenvalue clusters closer than ten cluster radii";
            }

    const CMat<R> I = CMat<R>::Identity(n, n);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const int size = static_cast<int>(clusters[c].size());
        const CMat<R> A = M - centers[c] * I;
        std::vector<int> rank{n};
        CMat<R> power = I;
        for (int k = 1; k <= size; ++k) {
            power = power * A;
            rank.push_back(numeric_rank(power, tol));
            if (rank.back() <= n - size) break;
        }
        if (rank.back() != n - size) {
            out.flagged = true;
            out.flag_reason = "kernel of (M - λI)^k does not match the cluster size";
        }
        std::vector<int> at_least(rank.size() + 1, 0);
        for (std::size_t k = 1; k < rank.size(); ++k) at_least[k] = rank[k - 1] - rank[k];
        for (std::size_t k = 1; k < rank.size(); ++k)
            add_block(out.blocks, to_double(centers[c]), static_cast<int>(k), at_least[k] - at_least[k + 1]);
    }
    std::sort(out.blocks.begin(), out.blocks.end(), [](const JordanBlock& a, const JordanBlock& b) {
        if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() < b.eigenvalue.real();
        if (a.eigenvalue.imag() != b.eigenvalue.imag()) return a.eigenvalue.imag() < b.eigenvalue.imag();
        return a.size < b.size;
    });
    assign_pairing(out, tol);
    return out;
}

} // namespace

JordanProfile jordan_profile(const Eigen::MatrixXcd& M, double tol) { return profile_impl<double>(M, tol); }

namespace {

using PreciseMat2 = surfaces::Mat2<std::complex<Real>>;

std::vector<PreciseMat2> precise_generators(const ShearPoint& point) {
    using C = std::complex<Real>;
    const auto edges = point.edges();
    std::vector<PreciseMat2> gens;
    for (const auto& w : surfaces::generator_words(point.family)) {
        PreciseMat2 g = PreciseMat2::identity();
        for (const auto& l : w.letters) {
            PreciseMat2 m;
            if (l.kind == surfaces::Letter::X || l.kind == surfaces::Letter::XHalf) {
                const C z = from_double<Real>(edges.at(l.edge)) / Real(l.kind == surfaces::Letter::X ? 2 : 4);
                m = {C(0), -std::exp(z), std::exp(-z), C(0)};
            } else {
                const auto L = surfaces::letter_matrix(l.kind);
                m = {from_double<Real>(L.a), from_double<Real>(L.b), from_double<Real>(L.c), from_double<Real>(L.d)};
            }
            g = g * m;
        }
        gens.push_back(w.sign < 0 ? -g : g);
    }
    return gens;
}

CMat<Real> precise_stokes(const ShearPoint& point) {
    const auto gens = precise_generators(point);
    const int n = point.family.n();
    CMat<Real> S = CMat<Real>::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) S(i, j) = (gens[i] * gens[j].adjugate()).trace();
    return S;
}

std::complex<Real> precise_determinant(const CMat<Real>& S, Complex lambda) {
    const auto l = from_double<Real>(lambda);
    const CMat<Real> A = l * S + S.transpose() / l;
    return A.partialPivLu().determinant();
}

} // namespace

JordanProfile point_jordan_profile(const ShearPoint& point) {
    const CMat<Real> S = precise_stokes(point);
    const CMat<Real> M = S.transpose().triangularView<Eigen::UnitLower>().solve(S);
    return profile_impl<Real>(M, kPreciseTol);
}

JordanProfile profile_from_blocks(std::vector<JordanBlock> blocks, double tol) {
    JordanProfile out;
    out.blocks = std::move(blocks);
    assign_pairing(out, tol);
    return out;
}

LeafDimension bondal_dimension(const JordanProfile& profile, int n) {
    if (!profile.pairing_ok) throw std::invalid_argument("Jordan profile violates reciprocal pairing");
    if (profile.dimension() != n) throw std::invalid_argument("Jordan profile does not have dimension n");

    auto cross = [](const std::vector<std::pair<int, int>>& a, const std::vector<std::pair<int, int>>& b) {
        double s = 0;
        for (auto [k, x] : a)
            for (auto [l, y] : b) s += double(std::min(k, l)) * x * y;
        return s;
    };

    // Pair counts grouped by eigenvalue; ±1 groups are kept apart.
    std::vector<std::pair<Complex, std::vector<std::pair<int, int>>>> generic;
    std::vector<std::pair<int, int>> n_pos, n_neg, m_pos, m_neg;
    for (const auto& p : profile.pairs) {
        if (std::abs(p.eigenvalue - 1.0) < 1e-6) {
            n_pos.emplace_back(p.size, p.count);
        } else if (std::abs(p.eigenvalue + 1.0) < 1e-6) {
            n_neg.emplace_back(p.size, p.count);
        } else {
            auto it = std::find_if(generic.begin(), generic.end(), [&](const auto& g) {
                return std::abs(g.first - p.eigenvalue) <= 1e-6 * std::max(1.0, std::abs(p.eigenvalue));
            });
            if (it == generic.end()) generic.push_back({p.eigenvalue, {{p.size, p.count}}});
            else it->second.emplace_back(p.size, p.count);
        }
    }
    for (const auto& s : profile.self_paired) (s.sign > 0 ? m_pos : m_neg).emplace_back(s.size, s.count);

    double d = 0;
    for (const auto& [ev, counts] : generic) d += cross(counts, counts);
    d += 2 * (cross(n_pos, n_pos) + cross(n_neg, n_neg));
    d += 2 * (cross(n_pos, m_pos) + cross(n_neg, m_neg));
    d += 0.5 * (cross(m_pos, m_pos) + cross(m_neg, m_neg));
    for (auto [l, m] : m_pos) d -= 0.5 * m;
    for (auto [k, c] : n_pos) d += double(k) * c;
    for (auto [k, c] : n_neg) d += double(k) * c;
    return {d, n * (n - 1) / 2.0 - d};
}

double discrepancy(int n, double leaf_dim) { return n * (n - 1) / 2.0 - n / 2 - leaf_dim; }

std::vector<double> spectral_exponents(const ShearPoint& point) {
    const auto& f = point.family;
    double P = 0;
    for (auto v : point.edges()) P += v.real();
    if (f.kind() == Kind::An) return {2 * P};
    if (f.n() % 2 == 1) return {P};
    const auto h = surfaces::hole_perimeters(point);
    return {(h[0].real() + h[1].real()) / 2, (h[0].real() - h[1].real()) / 2};
}

std::vector<JordanBlock> predicted_blocks(const ShearPoint& point) {
    const auto& f = point.family;
    const int n = f.n();
    const auto x = spectral_exponents(point);
    std::vector<JordanBlock> out;
    if (f.kind() == Kind::An) {
        if (n % 2 == 1) {
            add_block(out, std::exp(x[0]), 1, 1);
            add_block(out, std::exp(-x[0]), 1, 1);
            add_block(out, 1.0, 1, 1);
            add_block(out, -1.0, 1, n - 3);
        } else {
            add_block(out, -std::exp(x[0]), 1, 1);
            add_block(out, -std::exp(-x[0]), 1, 1);
            add_block(out, -1.0, 2, 1);
            add_block(out, -1.0, 1, n - 4);
        }
    } else if (n % 2 == 1) {
        add_block(out, std::exp(x[0]), 1, 1);
        add_block(out, std::exp(-x[0]), 1, 1);
        add_block(out, 1.0, 1, 1);
        add_block(out, -1.0, 2, 1);
        add_block(out, -1.0, 1, n - 5);
    } else {
        for (double e : x) {
            add_block(out, -std::exp(e), 1, 1);
            add_block(out, -std::exp(-e), 1, 1);
        }
        add_block(out, -1.0, 1, n - 4);
    }
    return out;
}

TheoremCheck verify_jordan_theorems(const ShearPoint& point, double tol, double match_tol) {
    TheoremCheck out{false, false, false, {}, {}, predicted_blocks(point), 0.0};
    for (double e : spectral_exponents(point))
        if (std::abs(e) < 10 * tol) {
            out.skipped = true;
            out.reason = "degenerate perimeter exponent";
            return out;
        }
    out.computed = point_jordan_profile(point);

    std::vector<Complex> want, got;
    for (const auto& b : out.predicted)
        for (int k = 0; k < b.size * b.multiplicity; ++k) want.push_back(b.eigenvalue);
    for (const auto& b : out.computed.blocks)
        for (int k = 0; k < b.size * b.multiplicity; ++k) got.push_back(b.eigenvalue);
    bool ok = want.size() == got.size();
    std::vector<bool> used(got.size(), false);
    for (const auto& w : want) {
        int best = -1;
        double best_err = 0;
        for (std::size_t k = 0; k < got.size(); ++k) {
            if (used[k]) continue;
            const double err = std::abs(got[k] - w) / std::abs(w);
            if (best < 0 || err < best_err) {
                best = static_cast<int>(k);
                best_err = err;
            }
        }
        if (best < 0) {
            ok = false;
            break;
        }
        used[best] = true;
        out.max_relative_error = std::max(out.max_relative_error, best_err);
    }
    out.eigenvalues_match = ok && out.max_relative_error <= match_tol;

    const double block_tol = std::max(match_tol, 10 * std::sqrt(kPreciseTol));
    bool blocks = out.predicted.size() == out.computed.blocks.size();
    for (const auto& b : out.predicted)
        if (out.computed.multiplicity_of_size(b.eigenvalue, b.size, block_tol) != b.multiplicity) blocks = false;
    out.blocks_match = blocks && !out.computed.flagged;
    return out;
}

int symmetric_rank(const Eigen::MatrixXcd& S, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S + S.transpose());
    const auto& s = svd.singularValues();
    int r = 0;
    for (int k = 0; k < s.size(); ++k)
        if (s(k) > tol * s(0)) ++r;
    return r;
}

int point_symmetric_rank(const ShearPoint& point) {
    const CMat<Real> S = precise_stokes(point);
    return numeric_rank<Real>(S + S.transpose(), kPreciseTol);
}

MinkowskiVectors minkowski_vectors(const ShearPoint& point) {
    using C = std::complex<Real>;
    const Real r = 1 / sqrt(Real(2));
    const C zero(0), rr(r);
    const std::array<PreciseMat2, 4> sigma{{
        {zero, rr, -rr, zero},
        {zero, rr, rr, zero},
        {rr, zero, zero, -rr},
        {rr, zero, zero, rr},
    }};
    const auto gens = precise_generators(point);
    const int n = static_cast<int>(gens.size());
    const bool an = point.family.kind() == Kind::An;
    const std::array<int, 4> eta{1, -1, -1, an ? 0 : 1};

    MinkowskiVectors out;
    out.vectors.resize(n, 4);
    out.metric = Eigen::Vector4d(eta[0], eta[1], eta[2], eta[3]);
    out.max_fourth_component = 0;
    std::vector<std::array<Real, 4>> v(n);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < 4; ++a) {
            v[i][a] = ((gens[i] * sigma[a]).trace() / (sigma[a] * sigma[a]).trace()).real();
            out.vectors(i, a) = static_cast<double>(v[i][a]);
        }
        out.max_fourth_component = std::max(out.max_fourth_component, std::abs(out.vectors(i, 3)));
    }
    auto inner = [&](int i, int j) {
        Real s = 0;
        for (int a = 0; a < 4; ++a) s += eta[a] * v[i][a] * v[j][a];
        return s;
    };
    const CMat<Real> S = precise_stokes(point);
    out.max_norm_error = 0;
    out.max_gram_error = 0;
    out.all_timelike_separated = true;
    for (int i = 0; i < n; ++i) {
        out.max_norm_error = std::max(out.max_norm_error, static_cast<double>(abs(inner(i, i) - 2)));
        for (int j = i + 1; j < n; ++j) {
            const Real g = inner(i, j);
            const Real err = abs(g - S(i, j).real()) / (abs(g) > 1 ? abs(g) : Real(1));
            out.max_gram_error = std::max(out.max_gram_error, static_cast<double>(err));
            if (4 - 2 * g >= 0) out.all_timelike_separated = false;
        }
    }
    return out;
}

MarkovReport markov_element(const ShearPoint& point) {
    if (point.family.kind() != Kind::An || point.family.n() != 3)
        throw std::invalid_argument("the Markov element is defined for the A family with n = 3");
    const Eigen::MatrixXcd S = surfaces::stokes_matrix(point);
    MarkovReport r;
    r.a = S(0, 1).real();
    r.b = S(0, 2).real();
    r.c = S(1, 2).real();
    r.M = r.a * r.b * r.c - r.a * r.a - r.b * r.b - r.c * r.c;
    const double P = surfaces::perimeters(point)[0].real();
    r.predicted = std::pow(std::exp(P) - std::exp(-P), 2);
    r.residual = std::abs(r.M - r.predicted);
    return r;
}

Complex characteristic_determinant(const Eigen::MatrixXcd& S, Complex lambda) {
    const Eigen::MatrixXcd A = lambda * S + S.transpose() / lambda;
    return A.partialPivLu().determinant();
}

Complex characteristic_closed_form(const ShearPoint& point, Complex lambda) {
    const auto& f = point.family;
    const int n = f.n();
    const Complex plus = lambda + 1.0 / lambda, minus = lambda - 1.0 / lambda;
    if (f.kind() == Kind::CFP && n % 2 == 0) {
        const auto h = surfaces::hole_perimeters(point);
        const Complex c1 = std::cosh(h[0] / 2.0), c2 = std::cosh(h[1] / 2.0);
        const Complex l2 = lambda * lambda, il2 = 1.0 / l2;
        return std::pow(minus, n - 4) *
               ((l2 - il2) * (l2 - il2) - 4.0 * c1 * c2 * (l2 + il2) + 4.0 * c1 * c1 + 4.0 * c2 * c2);
    }
    Complex P = 0.0;
    for (auto v : point.edges()) P += v;
    if (f.kind() == Kind::CFP) P /= 2.0;
    if (n % 2 == 1) {
        const Complex s = std::exp(P) - std::exp(-P);
        return (plus * plus + s * s) * plus * std::pow(minus, n - 3);
    }
    const Complex c = std::exp(P) + std::exp(-P);
    return (plus * plus - c * c) * std::pow(minus, n - 2);
}

Complex characteristic_determinant(const ShearPoint& point, Complex lambda) {
    return to_double(precise_determinant(precise_stokes(point), lambda));
}

double characteristic_identity(const ShearPoint& point, const std::vector<Complex>& lambdas) {
    const CMat<Real> S = precise_stokes(point);
    double worst = 0;
    for (const auto& l : lambdas) {
        const Complex lhs = to_double(precise_determinant(S, l)), rhs = characteristic_closed_form(point, l);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

std::vector<Complex> sample_lambdas(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> radius_dist(0.5, 2.0), angle_dist(0.1, M_PI / 2 - 0.1);
    std::uniform_int_distribution<int> quadrant(0, 3);
    std::vector<Complex> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
        out.push_back(std::polar(radius_dist(rng), angle_dist(rng) + quadrant(rng) * M_PI / 2));
    return out;
}

ShearPoint same_perimeter_point(const ShearPoint& point, std::mt19937_64& rng) {
    const auto cycles = surfaces::boundary_cycles(point.family);
    const int m = point.family.edge_count();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<int>(cycles.size()), m);
    for (std::size_t c = 0; c < cycles.size(); ++c)
        for (int e : cycles[c]) C(static_cast<int>(c), e) += 1;
    std::normal_distribution<double> g(0.0, 0.5);
    Eigen::VectorXd delta(m);
    for (int k = 0; k < m; ++k) delta(k) = g(rng);
    delta -= C.transpose() * (C * C.transpose()).ldlt().solve(C * delta);
    auto edges = point.edges();
    for (int k = 0; k < m; ++k) edges[k] += delta(k);
    const int n = point.family.n();
    return surfaces::make_point(point.family, {edges.begin(), edges.begin() + n}, {edges.begin() + n, edges.end()});
}

std::array<Complex, 3> cyclic_geodesics(const std::array<Complex, 3>& Z) {
    std::array<Complex, 3> G;
    for (int i = 0; i < 3; ++i) {
        const Complex a = Z[i], b = Z[(i + 1) % 3];
        G[i] = std::exp(a + b) + std::exp(a - b) + std::exp(-a - b);
    }
    return G;
}

namespace {

using Z3 = std::array<Complex, 3>;

double iso_residual(const Z3& Z, const Z3& T) {
    const auto G = cyclic_geodesics(Z);
    double r = 0;
    for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(G[i] - T[i]) / std::max(1.0, std::abs(T[i])));
    return r;
}

struct NewtonRun {
    Z3 Z;
    double residual;
    int iterations;
};

NewtonRun newton(Z3 Z, const Z3& T, int max_iter) {
    double res = iso_residual(Z, T);
    int it = 0;
    for (; it < max_iter && res > 1e-14; ++it) {
        Eigen::Matrix3cd J = Eigen::Matrix3cd::Zero();
        Eigen::Vector3cd F;
        const auto G = cyclic_geodesics(Z);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            const Complex pp = std::exp(Z[i] + Z[j]), pm = std::exp(Z[i] - Z[j]), mm = std::exp(-Z[i] - Z[j]);
            J(i, i) += pp + pm - mm;
            J(i, j) += pp - pm - mm;
            F(i) = G[i] - T[i];
        }
        const Eigen::Vector3cd step = J.fullPivLu().solve(-F);
        if (!step.allFinite()) break;
        double alpha = 1.0;
        bool improved = false;
        for (int h = 0; h < 40; ++h, alpha /= 2) {
            Z3 trial;
            for (int i = 0; i < 3; ++i) trial[i] = Z[i] + alpha * step(i);
            const double r = iso_residual(trial, T);
            if (std::isfinite(r) && r < res) {
                Z = trial;
                res = r;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return {Z, res, it};
}

} // namespace

IsospectralResult isospectral_solve(const std::array<double, 3>& X) {
    Z3 T;
    for (int i = 0; i < 3; ++i) T[i] = 2 * std::cosh((X[i] + X[(i + 1) % 3]) / 2);
    const double a = T[0].real(), b = T[1].real(), c = T[2].real();
    const double markov = a * b * c - a * a - b * b - c * c;

    // Equal-coordinate heuristic: G = 2cosh(2z) + 1 for Z = (z, z, z).
    Z3 guess;
    for (int i = 0; i < 3; ++i) guess[i] = 0.5 * std::acosh(((T[(i + 2) % 3] + T[i]) / 2.0 - 1.0) / 2.0);
    const double scale = std::max(1.0, 0.5 * std::log(std::max({a, b, c})));

    std::vector<Z3> real_starts{{Complex(guess[0].real()), Complex(guess[1].real()), Complex(guess[2].real())}};
    const double grid[] = {-1.5, -0.5, 0.5, 1.5};
    for (double u : grid)
        for (double v : grid)
            for (double w : grid) real_starts.push_back({u * scale, v * scale, w * scale});

    IsospectralResult best{{}, INFINITY, 0, false, false, markov};
    auto consider = [&](const NewtonRun& run) {
        if (run.residual < best.residual) {
            best.Z = run.Z;
            best.residual = run.residual;
            best.iterations = run.iterations;
        }
    };
    constexpr double kTarget = 1e-10;
    if (markov >= -1e-12) {
        for (const auto& s : real_starts) {
            consider(newton(s, T, 200));
            if (best.residual <= kTarget) break;
        }
    }
    if (best.residual > kTarget) {
        std::vector<Z3> complex_starts{guess};
        const double phases[] = {0.4, 1.1, -0.7};
        for (const auto& s : real_starts)
            for (double ph : phases)
                complex_starts.push_back({s[0] + Complex(0, ph), s[1] + Complex(0, -0.6 * ph), s[2] + Complex(0, 0.3 * ph)});
        for (const auto& s : complex_starts) {
            consider(newton(s, T, 200));
            if (best.residual <= kTarget) break;
        }
    }
    best.converged = best.residual <= kTarget;
    best.real_solution = true;
    for (const auto& z : best.Z)
        if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z))) best.real_solution = false;
    return best;
}

ShearPoint random_generic_point(const SurfaceFamily& family, std::mt19937_64& rng, double min_abs) {
    for (;;) {
        auto p = surfaces::random_point(family, rng);
        const auto x = spectral_exponents(p);
        if (std::all_of(x.begin(), x.end(), [&](double e) { return std::abs(e) >= min_abs; })) return p;
    }
}

} // namespace stokes::leaves
