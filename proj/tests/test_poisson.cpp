#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stokes/poisson.hpp"

using namespace stokes::poisson;
using stokes::surfaces::Kind;

namespace {

std::map<std::string, Complex> coordinate_map(const SurfaceFamily& f, const std::vector<Complex>& edges) {
    std::map<std::string, Complex> out;
    for (int e = 0; e < f.edge_count(); ++e) out[f.edge_names()[e]] = edges[e];
    return out;
}

// Bracket of two Stokes entries from central differences of the numeric matrix.
Complex finite_difference_bracket(const IncidenceForm& form, const std::vector<Complex>& edges, EntryIndex p,
                                  EntryIndex q) {
    const auto& f = form.family;
    const int m = f.edge_count();
    const double h = 1e-5;
    std::vector<Complex> dp(m), dq(m);
    for (int a = 0; a < m; ++a) {
        auto plus = edges, minus = edges;
        plus[a] += h;
        minus[a] -= h;
        auto at = [&](const std::vector<Complex>& e) {
            stokes::surfaces::ShearPoint pt{f, {e.begin(), e.begin() + f.n()}, {e.begin() + f.n(), e.end()}};
            return stokes::surfaces::stokes_matrix(pt);
        };
        const auto Sp = at(plus), Sm = at(minus);
        dp[a] = (Sp(p.i, p.j) - Sm(p.i, p.j)) / (2 * h);
        dq[a] = (Sp(q.i, q.j) - Sm(q.i, q.j)) / (2 * h);
    }
    Complex out = 0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) out += double(form.B(a, b)) * (dp[a] * dq[b] - dq[a] * dp[b]);
    return out;
}

} // namespace

TEST(IncidenceForm, ThreeEdgeGraphIsOneCyclicVertex) {
    const auto form = incidence_form(SurfaceFamily(Kind::An, 3));
    const int s = form.B(0, 1);
    EXPECT_EQ(std::abs(s), 1);
    EXPECT_EQ(form.B(1, 2), s);
    EXPECT_EQ(form.B(2, 0), s);
    EXPECT_EQ(form.B, Eigen::MatrixXi(-form.B.transpose()));
}

TEST(IncidenceForm, VertexCountsAndAntisymmetry) {
    for (auto kind : {Kind::An, Kind::CFP})
        for (int n = 4; n <= 7; ++n) {
            const SurfaceFamily f(kind, n);
            const auto form = incidence_form(f);
            EXPECT_EQ(form.B, Eigen::MatrixXi(-form.B.transpose()));
            EXPECT_EQ(form.B, form_from_vertices(f, form.vertices));
        }
}

TEST(IncidenceForm, CalibrationAgreesWithFatGraph) {
    for (auto [kind, n] : {std::pair{Kind::An, 3}, {Kind::An, 4}, {Kind::An, 5}, {Kind::CFP, 4}, {Kind::CFP, 5}}) {
        const SurfaceFamily f(kind, n);
        const auto cal = calibrate_incidence_form(f);
        EXPECT_TRUE(cal.unique);
        EXPECT_EQ(cal.form.B, form_from_vertices(f, stokes::surfaces::fat_graph_vertices(f)));
    }
}

TEST(Goldman, AntisymmetricAndSelfBracketVanishes) {
    const SurfaceFamily f(Kind::An, 4);
    const auto form = incidence_form(f);
    const auto s = stokes::surfaces::stokes_matrix_symbolic(f);
    EXPECT_TRUE(goldman_bracket(s.entry(0, 2), s.entry(0, 2), form).is_zero());
    EXPECT_EQ(goldman_bracket(s.entry(0, 1), s.entry(1, 3), form),
              -goldman_bracket(s.entry(1, 3), s.entry(0, 1), form));
}

TEST(Goldman, ThreeEdgeGraphAdjacentPair) {
    const SurfaceFamily f(Kind::An, 3);
    const auto s = stokes::surfaces::stokes_matrix_symbolic(f);
    const auto lhs = goldman_bracket(s.entry(0, 1), s.entry(1, 2), incidence_form(f));
    EXPECT_EQ(lhs, s.entry(0, 1) * s.entry(1, 2) - LaurentScalar(2) * s.entry(0, 2));
}

TEST(Goldman, CrossingPairOnFourEdges) {
    const SurfaceFamily f(Kind::An, 4);
    const auto s = stokes::surfaces::stokes_matrix_symbolic(f);
    const auto lhs = goldman_bracket(s.entry(0, 2), s.entry(1, 3), incidence_form(f));
    EXPECT_EQ(lhs, LaurentScalar(2) * (s.entry(0, 1) * s.entry(2, 3) - s.entry(0, 3) * s.entry(1, 2)));
}

TEST(Goldman, SymbolicDerivativesMatchFiniteDifferences) {
    std::mt19937_64 rng(21);
    for (auto [kind, n] : {std::pair{Kind::An, 4}, {Kind::CFP, 5}}) {
        const SurfaceFamily f(kind, n);
        const auto form = incidence_form(f);
        const auto s = stokes::surfaces::stokes_matrix_symbolic(f);
        const auto p = stokes::surfaces::random_point(f, rng, -0.5, 0.5);
        const auto at = coordinate_map(f, p.edges());
        for (auto [a, b] : {std::pair{EntryIndex{0, 1}, EntryIndex{1, 2}}, {EntryIndex{0, 2}, EntryIndex{1, 3}}}) {
            const Complex exact = goldman_bracket(s.entry(a.i, a.j), s.entry(b.i, b.j), form).evaluate_shear(at);
            const Complex fd = finite_difference_bracket(form, p.edges(), a, b);
            EXPECT_LT(std::abs(exact - fd), 1e-5 * (1 + std::abs(exact)));
        }
    }
}

TEST(Reference, DisjointNestedPairVanishes) {
    EXPECT_TRUE(du_reference_bracket({0, 3}, {1, 2}).is_zero());
    EXPECT_TRUE(du_reference_bracket({1, 2}, {0, 3}).is_zero());
    EXPECT_FALSE(du_reference_bracket({0, 2}, {1, 3}).is_zero());
}

TEST(Reference, AdjacentPairNumeric) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(3, 3);
    s(0, 1) = 2.5;
    s(1, 2) = -1.5;
    s(0, 2) = 0.75;
    const Complex kappa(0, M_PI);
    const Complex got = evaluate_reference(du_reference_bracket({0, 1}, {1, 2}), s, kappa);
    EXPECT_LT(std::abs(got - kappa / 2.0 * (s(0, 1) * s(1, 2) - 2.0 * s(0, 2))), 1e-14);
}

TEST(Reference, CrossingPairNumeric) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(4, 4);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) s(i, j) = d(rng);
    const Complex got = evaluate_reference(du_reference_bracket({0, 2}, {1, 3}), s, 2.0);
    EXPECT_LT(std::abs(got - 2.0 * (s(0, 1) * s(2, 3) - s(0, 3) * s(1, 2))), 1e-13);
}

TEST(Identity, ThreeEdgeGraph) {
    const auto r = verify_bracket_identity(SurfaceFamily(Kind::An, 3));
    EXPECT_TRUE(r.all_pass);
    EXPECT_EQ(r.pairs.size(), 3u);
    EXPECT_EQ(r.scale, 2);
}

TEST(Identity, SmallFamilies) {
    EXPECT_TRUE(verify_bracket_identity(SurfaceFamily(Kind::An, 4)).all_pass);
    const auto cfp = verify_bracket_identity(SurfaceFamily(Kind::CFP, 4), 2);
    EXPECT_TRUE(cfp.all_pass);
    EXPECT_EQ(cfp.scale, 1);
    EXPECT_EQ(cfp.pairs.size(), 15u);
}

TEST(Skein, TurnMatrices) {
    using stokes::surfaces::Letter;
    const auto R = stokes::surfaces::letter_matrix(Letter::R), L = stokes::surfaces::letter_matrix(Letter::L);
    EXPECT_NEAR(std::abs(R.trace() * L.trace() - (-1.0)), 0.0, 0);
    EXPECT_NEAR(std::abs(skein_residual(R, L)), 0.0, 0);
    EXPECT_NEAR(std::abs(skein_residual(R, R)), 0.0, 0);
}

TEST(Skein, SymbolicGenerators) {
    const SurfaceFamily f(Kind::An, 3);
    const auto g = stokes::surfaces::build_generators_symbolic(f);
    EXPECT_TRUE(skein_residual(g[0], g[1]).is_zero());
    std::mt19937_64 rng(31);
    const SurfaceFamily c(Kind::CFP, 4);
    for (int k = 0; k < 5; ++k) {
        const auto a = stokes::surfaces::evaluate_word_symbolic(random_word(c, rng, 5), c);
        const auto b = stokes::surfaces::evaluate_word_symbolic(random_word(c, rng, 5), c);
        EXPECT_TRUE(skein_residual(a, b).is_zero());
    }
}

TEST(Casimir, PerimetersCommute) {
    for (auto [kind, n] : {std::pair{Kind::An, 3}, {Kind::An, 4}, {Kind::CFP, 4}, {Kind::CFP, 5}})
        EXPECT_TRUE(casimir_check(SurfaceFamily(kind, n)).all_vanish);
}

TEST(Casimir, SingleCoordinateDoesNotCommute) {
    const SurfaceFamily f(Kind::An, 3);
    const auto s = stokes::surfaces::stokes_matrix_symbolic(f);
    EXPECT_FALSE(linear_bracket({1, 0, 0}, s.entry(0, 1), incidence_form(f)).is_zero());
    EXPECT_TRUE(linear_bracket({1, 1, 1}, s.entry(0, 1), incidence_form(f)).is_zero());
}

TEST(TraceCalibration, ThreeEdgeGraphHasConstantRatio) {
    const auto r = trace_bracket_calibration(SurfaceFamily(Kind::An, 3));
    EXPECT_TRUE(r.constant);
    EXPECT_EQ(r.value, GaussRational(-2));
}

TEST(TraceCalibration, FourEdgeGraphRatioDependsOnPair) {
    const auto r = trace_bracket_calibration(SurfaceFamily(Kind::An, 4));
    EXPECT_FALSE(r.constant);
    for (const auto& p : r.pairs) {
        ASSERT_FALSE(p.skipped);
        ASSERT_TRUE(p.proportional);
        const bool crossing = p.a.i < p.b.i && p.b.i < p.a.j && p.a.j < p.b.j;
        const bool disjoint = p.a.j < p.b.i || (p.a.i < p.b.i && p.b.j < p.a.j);
        const long expected = crossing ? -4 : disjoint ? 0 : -2;
        EXPECT_EQ(p.ratio, GaussRational(expected)) << p.a.i << p.a.j << p.b.i << p.b.j;
    }
}
