#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stokes/surfaces.hpp"

using namespace stokes::surfaces;

namespace {

NumMat power(NumMat m, int k) {
    NumMat out = NumMat::identity();
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

bool near(const NumMat& a, const NumMat& b, double tol = 1e-14) {
    return std::abs(a.a - b.a) < tol && std::abs(a.b - b.b) < tol && std::abs(a.c - b.c) < tol &&
           std::abs(a.d - b.d) < tol;
}

// e^{a+b} + e^{a-b} + e^{-a-b} for consecutive pending edges of the three-edge graph.
double three_edge_geodesic(double a, double b) { return std::exp(a + b) + std::exp(a - b) + std::exp(-a - b); }

std::map<std::string, Complex> coordinate_map(const ShearPoint& p) {
    std::map<std::string, Complex> out;
    const auto edges = p.edges();
    for (int e = 0; e < p.family.edge_count(); ++e) out[p.family.edge_names()[e]] = edges[e];
    return out;
}

} // namespace

TEST(Letters, RightTurnHasOrderThree) {
    const NumMat R = letter_matrix(Letter::R);
    EXPECT_TRUE(near(power(R, 3), -NumMat::identity()));
    EXPECT_TRUE(near(power(R, 2), letter_matrix(Letter::L)));
}

TEST(Letters, EdgeMatrixIsUnimodular) {
    const auto vars = stokes::laurent::make_variables({"Z1"});
    const SymMat X = x_matrix_symbolic(vars, 0, false);
    EXPECT_EQ(X.det(), LaurentScalar::constant(vars, 1));
    EXPECT_NEAR(std::abs(x_matrix({0.4, 0.3}).det() - 1.0), 0.0, 1e-15);
}

TEST(Generators, AnBasisStartsWithF) {
    for (int n = 3; n <= 6; ++n) {
        const auto words = generator_words(SurfaceFamily(Kind::An, n));
        ASSERT_EQ(static_cast<int>(words.size()), n);
        ASSERT_EQ(words[0].size(), 1u);
        EXPECT_EQ(words[0].letters[0].kind, Letter::F);
    }
}

TEST(Generators, AnGeneratorsAreTraceless) {
    for (int n = 3; n <= 5; ++n) {
        const SurfaceFamily f(Kind::An, n);
        for (const auto& g : build_generators_symbolic(f)) EXPECT_TRUE(g.trace().is_zero()) << "n=" << n;
    }
}

TEST(Generators, AllHaveUnitDeterminant) {
    std::mt19937_64 rng(2);
    for (auto kind : {Kind::An, Kind::CFP})
        for (int n = 4; n <= 7; ++n) {
            const auto p = random_point(SurfaceFamily(kind, n), rng);
            for (const auto& g : build_generators(p)) EXPECT_NEAR(std::abs(g.det() - 1.0), 0.0, 1e-9);
        }
}

TEST(Stokes, ThreeEdgeGraphAtZeroIsAllThrees) {
    const auto S = stokes_matrix(zero_point(SurfaceFamily(Kind::An, 3)));
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(S(i, i).real(), 1.0, 1e-15);
        for (int j = i + 1; j < 3; ++j) EXPECT_NEAR(S(i, j).real(), 3.0, 1e-13);
    }
    EXPECT_NEAR(-(build_generators(zero_point(SurfaceFamily(Kind::An, 3)))[0] *
                  build_generators(zero_point(SurfaceFamily(Kind::An, 3)))[1])
                     .trace()
                     .real(),
                3.0, 1e-13);
}

TEST(Stokes, ThreeEdgeGraphMatchesClosedForm) {
    const SurfaceFamily f(Kind::An, 3);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
        const auto p = random_point(f, rng);
        const auto S = stokes_matrix(p);
        const double z1 = p.Z[0].real(), z2 = p.Z[1].real(), z3 = p.Z[2].real();
        EXPECT_NEAR(S(0, 1).real(), three_edge_geodesic(z1, z2), 1e-10);
        EXPECT_NEAR(S(1, 2).real(), three_edge_geodesic(z2, z3), 1e-10);
        EXPECT_NEAR(S(0, 2).real(), three_edge_geodesic(z3, z1), 1e-10);
    }
    const auto S = stokes_matrix(make_real_point(f, {1, 0, 0}, {}));
    EXPECT_NEAR(S(0, 1).real(), 5.8044430980895, 1e-12);
    EXPECT_NEAR(S(1, 2).real(), 3.0, 1e-12);
    EXPECT_NEAR(S(0, 2).real(), 3.4540407108019, 1e-12);
}

TEST(Stokes, RealPointsGiveEntriesAboveTwo) {
    std::mt19937_64 rng(6);
    for (auto kind : {Kind::An, Kind::CFP})
        for (int n = (kind == Kind::An ? 3 : 4); n <= 8; ++n) {
            const auto S = stokes_matrix(random_point(SurfaceFamily(kind, n), rng));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    EXPECT_GT(S(i, j).real(), 2.0);
                    EXPECT_NEAR(S(i, j).imag(), 0.0, 1e-9);
                    EXPECT_EQ(S(j, i), Complex(0.0));
                }
        }
}

TEST(Stokes, SymbolicEntriesEvaluateToNumeric) {
    std::mt19937_64 rng(8);
    for (auto kind : {Kind::An, Kind::CFP}) {
        const SurfaceFamily f(kind, 5);
        const auto sym = stokes_matrix_symbolic(f);
        const auto p = random_point(f, rng);
        const auto S = stokes_matrix(p);
        const auto at = coordinate_map(p);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                EXPECT_NEAR(std::abs(sym.entry(i, j).evaluate_shear(at) - S(i, j)), 0.0, 1e-9 * std::abs(S(i, j)));
    }
}

TEST(Stokes, CfpWordsAgreeWithBasisTraces) {
    std::mt19937_64 rng(10);
    for (int n = 4; n <= 7; ++n) {
        const auto p = random_point(SurfaceFamily(Kind::CFP, n), rng);
        EXPECT_LT((stokes_matrix(p) - stokes_matrix_from_words(p)).norm(), 1e-9 * stokes_matrix(p).norm());
    }
}

TEST(Stokes, CfpGeodesicWords) {
    const SurfaceFamily f(Kind::CFP, 6);
    EXPECT_EQ(geodesic_word_cfp(1, 2, 6).to_string(f), "X(Z1) L X(Z2) R");
    EXPECT_EQ(geodesic_word_cfp(1, 3, 6).size(), 8u);
}

TEST(Perimeters, CoordinateSums) {
    EXPECT_NEAR(perimeters(make_real_point(SurfaceFamily(Kind::An, 3), {1, 0, 0}, {}))[0].real(), 1.0, 0);
    const SurfaceFamily c6(Kind::CFP, 6);
    const auto p = perimeters(make_real_point(c6, std::vector<double>(6, 1.0), std::vector<double>(c6.y_count(), 0.0)));
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].real(), 6.0);
    EXPECT_EQ(p[1].real(), 0.0);
    EXPECT_EQ(perimeters(zero_point(SurfaceFamily(Kind::An, 4)))[0], Complex(0.0));
}

TEST(Perimeters, HolePerimetersSplitTheTotal) {
    std::mt19937_64 rng(12);
    for (int n = 4; n <= 8; n += 2) {
        const auto p = random_point(SurfaceFamily(Kind::CFP, n), rng);
        const auto h = hole_perimeters(p);
        ASSERT_EQ(h.size(), 2u);
        Complex total = 0;
        for (auto e : p.edges()) total += e;
        EXPECT_NEAR(std::abs(h[0] + h[1] - 2.0 * total), 0.0, 1e-12);
    }
}

TEST(Boundary, TraceAtZeroIsMinusTwo) {
    EXPECT_NEAR(boundary_monodromy_trace(zero_point(SurfaceFamily(Kind::An, 3))).real(), -2.0, 1e-12);
    EXPECT_NEAR(boundary_monodromy_trace(zero_point(SurfaceFamily(Kind::An, 4))).real(), -2.0, 1e-12);
}

TEST(Boundary, TraceMatchesPerimeterForm) {
    const auto p = make_real_point(SurfaceFamily(Kind::An, 3), {1, 0, 0}, {});
    EXPECT_NEAR(boundary_monodromy_trace(p).real(), -(std::exp(1.0) + std::exp(-1.0)), 1e-12);
    std::mt19937_64 rng(14);
    for (int n = 3; n <= 7; ++n) {
        const auto q = random_point(SurfaceFamily(Kind::An, n), rng);
        EXPECT_NEAR(std::abs(boundary_monodromy_trace(q) - boundary_monodromy_prediction(q)), 0.0,
                    1e-9 * std::abs(boundary_monodromy_prediction(q)));
    }
}

TEST(Specialization, CfpWithDoubledZReproducesAn) {
    for (int n = 4; n <= 5; ++n) EXPECT_TRUE(specialization_check(n).all_equal) << "n=" << n;
    EXPECT_FALSE(specialization_check(4, false).all_equal);
}

TEST(FatGraph, VertexCounts) {
    EXPECT_EQ(fat_graph_vertices(SurfaceFamily(Kind::An, 4)).size(), 2u);
    EXPECT_EQ(fat_graph_vertices(SurfaceFamily(Kind::An, 6)).size(), 4u);
    EXPECT_EQ(boundary_cycles(SurfaceFamily(Kind::CFP, 6)).size(), 2u);
    EXPECT_EQ(boundary_cycles(SurfaceFamily(Kind::CFP, 5)).size(), 1u);
}

TEST(Family, RejectsBadInput) {
    EXPECT_THROW(parse_kind("bn"), std::invalid_argument);
    EXPECT_EQ(parse_kind("CFP"), Kind::CFP);
    EXPECT_THROW(SurfaceFamily(Kind::An, 2), std::exception);
    EXPECT_THROW(make_real_point(SurfaceFamily(Kind::An, 3), {1, 2}, {}), std::exception);
}
