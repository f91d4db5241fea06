#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stokes/leaves.hpp"

using namespace stokes::leaves;
using stokes::surfaces::Kind;
using stokes::surfaces::make_real_point;
using stokes::surfaces::random_point;
using stokes::surfaces::zero_point;

namespace {

// P J P^{-1} for a block-diagonal Jordan matrix J and a fixed well-conditioned P.
Eigen::MatrixXcd conjugated_jordan(const std::vector<std::pair<Complex, int>>& blocks, std::uint64_t seed) {
    int n = 0;
    for (const auto& b : blocks) n += b.second;
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
    int at = 0;
    for (const auto& [ev, size] : blocks) {
        for (int k = 0; k < size; ++k) {
            J(at + k, at + k) = ev;
            if (k + 1 < size) J(at + k, at + k + 1) = 1.0;
        }
        at += size;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-0.3, 0.3);
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P(i, j) += Complex(d(rng), d(rng));
    return P * J * P.inverse();
}

int blocks_of(const JordanProfile& p, Complex ev, int size) { return p.multiplicity_of_size(ev, size, 1e-6); }

double cyclic(double a, double b) { return std::exp(a + b) + std::exp(a - b) + std::exp(-a - b); }

} // namespace

TEST(Monodromy, IdentityAndHandProduct) {
    EXPECT_LT((monodromy_product(Eigen::MatrixXcd::Identity(4, 4)) - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-15);
    Eigen::MatrixXcd S(3, 3);
    S << 1, 3, 3, 0, 1, 3, 0, 0, 1;
    Eigen::MatrixXcd expected(3, 3);
    expected << 1, 3, 3, -3, -8, -6, 6, 15, 10;
    const auto M = monodromy_product(S);
    EXPECT_LT((M - expected).norm(), 1e-12);
    EXPECT_NEAR(M.trace().real(), 3.0, 1e-12);
    EXPECT_LT(monodromy_residual(S, M), 1e-12);
}

TEST(Jordan, RecoversConjugatedBlocks) {
    const auto M = conjugated_jordan({{2.0, 1}, {0.5, 1}, {-1.0, 2}, {-1.0, 1}, {Complex(0, 1), 3}}, 7);
    const auto p = jordan_profile(M);
    EXPECT_FALSE(p.flagged) << p.flag_reason;
    EXPECT_EQ(blocks_of(p, 2.0, 1), 1);
    EXPECT_EQ(blocks_of(p, 0.5, 1), 1);
    EXPECT_EQ(blocks_of(p, -1.0, 2), 1);
    EXPECT_EQ(blocks_of(p, -1.0, 1), 1);
    EXPECT_EQ(blocks_of(p, Complex(0, 1), 3), 1);
    EXPECT_EQ(p.dimension(), 8);
}

TEST(Jordan, IdentityIsDiagonal) {
    const auto p = jordan_profile(Eigen::MatrixXcd::Identity(5, 5));
    ASSERT_EQ(p.blocks.size(), 1u);
    EXPECT_EQ(p.blocks[0].size, 1);
    EXPECT_EQ(p.blocks[0].multiplicity, 5);
}

TEST(Jordan, FlagsNearCollision) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2);
    M(0, 0) = 1.0;
    M(1, 1) = 1.0 + 1e-4;
    EXPECT_TRUE(jordan_profile(M).flagged);
}

TEST(Jordan, ThreeEdgeGraphSpectrum) {
    const auto p = point_jordan_profile(make_real_point(stokes::surfaces::SurfaceFamily(Kind::An, 3), {1, 0, 0}, {}));
    const double e2 = std::exp(2.0);
    EXPECT_EQ(blocks_of(p, e2, 1), 1);
    EXPECT_EQ(blocks_of(p, 1.0 / e2, 1), 1);
    EXPECT_EQ(blocks_of(p, 1.0, 1), 1);
    const auto S = stokes::surfaces::stokes_matrix(make_real_point(stokes::surfaces::SurfaceFamily(Kind::An, 3), {1, 0, 0}, {}));
    EXPECT_NEAR(monodromy_product(S).trace().real(), 1 + e2 + 1 / e2, 1e-10);
    EXPECT_NEAR(1 + e2 + 1 / e2, 8.5243914, 1e-7);
}

TEST(Jordan, EvenAnHasBlockAtMinusOne) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 5; ++k) {
        const auto pt = random_generic_point(stokes::surfaces::SurfaceFamily(Kind::An, 4), rng);
        const auto p = point_jordan_profile(pt);
        EXPECT_EQ(blocks_of(p, -1.0, 2), 1);
        const double P = stokes::surfaces::perimeters(pt)[0].real();
        EXPECT_EQ(blocks_of(p, -std::exp(2 * P), 1), 1);
        EXPECT_EQ(blocks_of(p, -std::exp(-2 * P), 1), 1);
    }
}

TEST(Jordan, OddAnIsDiagonal) {
    std::mt19937_64 rng(5);
    const auto pt = random_generic_point(stokes::surfaces::SurfaceFamily(Kind::An, 5), rng);
    const auto p = point_jordan_profile(pt);
    const double P = stokes::surfaces::perimeters(pt)[0].real();
    EXPECT_EQ(blocks_of(p, std::exp(2 * P), 1), 1);
    EXPECT_EQ(blocks_of(p, std::exp(-2 * P), 1), 1);
    EXPECT_EQ(blocks_of(p, 1.0, 1), 1);
    EXPECT_EQ(blocks_of(p, -1.0, 1), 2);
    for (const auto& b : p.blocks) EXPECT_EQ(b.size, 1);
}

TEST(Jordan, EvenCfpRootsFromHolePerimeters) {
    std::mt19937_64 rng(9);
    const auto pt = random_generic_point(stokes::surfaces::SurfaceFamily(Kind::CFP, 6), rng);
    const auto h = stokes::surfaces::hole_perimeters(pt);
    const double a = h[0].real(), b = h[1].real();
    const auto p = point_jordan_profile(pt);
    for (double x : {(a + b) / 2, -(a + b) / 2, (a - b) / 2, -(a - b) / 2}) EXPECT_EQ(blocks_of(p, -std::exp(x), 1), 1);
    EXPECT_EQ(blocks_of(p, -1.0, 1), 2);
}

TEST(Jordan, TheoremsHoldOnRandomPoints) {
    std::mt19937_64 rng(13);
    for (auto kind : {Kind::An, Kind::CFP})
        for (int n = (kind == Kind::An ? 3 : 4); n <= 7; ++n) {
            const auto c = verify_jordan_theorems(random_generic_point(stokes::surfaces::SurfaceFamily(kind, n), rng));
            EXPECT_TRUE(c.skipped || (c.eigenvalues_match && c.blocks_match))
                << stokes::surfaces::kind_name(kind) << n << " err " << c.max_relative_error;
        }
}

TEST(Bondal, GenericFourByFour) {
    const auto p = profile_from_blocks({{3.0, 1, 1}, {1.0 / 3.0, 1, 1}, {Complex(0.2, 1), 1, 1}, {1.0 / Complex(0.2, 1), 1, 1}});
    const auto ld = bondal_dimension(p, 4);
    EXPECT_EQ(ld.leaf_dim, 4);
    EXPECT_EQ(ld.d, 2);
    EXPECT_EQ(discrepancy(4, ld.leaf_dim), 0);
}

TEST(Bondal, SixByAnProfile) {
    const double e = std::exp(0.7);
    const auto p = profile_from_blocks({{-e, 1, 1}, {-1.0 / e, 1, 1}, {-1.0, 2, 1}, {-1.0, 1, 2}});
    const auto ld = bondal_dimension(p, 6);
    EXPECT_EQ(ld.d, 7);
    EXPECT_EQ(ld.leaf_dim, 8);
}

TEST(Bondal, UnpairedBlockThrows) {
    EXPECT_THROW(bondal_dimension(profile_from_blocks({{2.0, 1, 1}, {5.0, 1, 1}}), 2), std::invalid_argument);
    EXPECT_THROW(bondal_dimension(profile_from_blocks({{-1.0, 1, 1}, {1.0, 2, 1}}), 3), std::invalid_argument);
}

TEST(Bondal, LeafDimensionsOnPoints) {
    std::mt19937_64 rng(17);
    for (int n = 3; n <= 7; ++n) {
        const auto pt = random_generic_point(stokes::surfaces::SurfaceFamily(Kind::An, n), rng);
        EXPECT_EQ(bondal_dimension(point_jordan_profile(pt), n).leaf_dim, 2 * (n - 2)) << "An" << n;
    }
    for (int n = 4; n <= 8; ++n) {
        const auto pt = random_generic_point(stokes::surfaces::SurfaceFamily(Kind::CFP, n), rng);
        EXPECT_EQ(bondal_dimension(point_jordan_profile(pt), n).leaf_dim, n % 2 ? 3 * n - 7 : 3 * n - 8) << "CFP" << n;
    }
}

TEST(Rank, SymmetricPart) {
    std::mt19937_64 rng(19);
    EXPECT_EQ(symmetric_rank(stokes::surfaces::stokes_matrix(random_point(stokes::surfaces::SurfaceFamily(Kind::An, 6), rng))), 3);
    EXPECT_EQ(symmetric_rank(stokes::surfaces::stokes_matrix(random_point(stokes::surfaces::SurfaceFamily(Kind::CFP, 6), rng))), 4);
    EXPECT_EQ(symmetric_rank(Eigen::MatrixXcd::Identity(5, 5)), 5);
}

TEST(Rank, NearEqualHolePerimeters) {
    // det(S + S^T) = 4(cosh(P1/2) - cosh(P2/2))^2 for four CFP edges, so the
    // smallest singular value is tiny when |P1| is close to |P2|.
    const stokes::surfaces::SurfaceFamily f(Kind::CFP, 4);
    std::mt19937_64 rng(43);
    for (int k = 0; k < 200; ++k) {
        const auto pt = random_point(f, rng);
        const auto h = stokes::surfaces::hole_perimeters(pt);
        const Complex c1 = std::cosh(h[0] / 2.0), c2 = std::cosh(h[1] / 2.0);
        const auto S = stokes::surfaces::stokes_matrix(pt);
        const Complex det = (S + S.transpose()).determinant();
        EXPECT_LT(std::abs(det - 4.0 * (c1 - c2) * (c1 - c2)), 1e-8 * (1 + std::abs(det)));
        if (std::abs(std::abs(h[0]) - std::abs(h[1])) > 1e-6) EXPECT_EQ(point_symmetric_rank(pt), 4);
    }
}

TEST(Minkowski, NormsAndGram) {
    std::mt19937_64 rng(23);
    for (auto kind : {Kind::An, Kind::CFP}) {
        const auto pt = random_point(stokes::surfaces::SurfaceFamily(kind, 6), rng);
        const auto m = minkowski_vectors(pt);
        EXPECT_LT(m.max_norm_error, 1e-12);
        EXPECT_LT(m.max_gram_error, 1e-12);
        EXPECT_TRUE(m.all_timelike_separated);
        if (kind == Kind::An) EXPECT_LT(m.max_fourth_component, 1e-12);
        // Independent Gram check in double.
        const auto S = stokes::surfaces::stokes_matrix(pt);
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                double g = 0;
                for (int k = 0; k < 4; ++k) g += m.metric(k) * m.vectors(i, k) * m.vectors(j, k);
                EXPECT_NEAR(g, S(i, j).real(), 1e-9 * S(i, j).real());
                EXPECT_LT(4 - 2 * g, 0);
            }
    }
}

TEST(Markov, KnownValues) {
    const stokes::surfaces::SurfaceFamily f(Kind::An, 3);
    const auto m = markov_element(make_real_point(f, {1, 0, 0}, {}));
    EXPECT_NEAR(m.M, 5.5243914, 1e-7);
    EXPECT_NEAR(m.M, std::pow(std::exp(1.0) - std::exp(-1.0), 2), 1e-12);
    EXPECT_NEAR(markov_element(zero_point(f)).M, 0.0, 1e-12);
    EXPECT_THROW(markov_element(zero_point(stokes::surfaces::SurfaceFamily(Kind::An, 4))), std::invalid_argument);
}

TEST(Markov, NonNegativeAtRealPoints) {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 200; ++k) {
        const auto m = markov_element(random_point(stokes::surfaces::SurfaceFamily(Kind::An, 3), rng));
        EXPECT_GE(m.M, -1e-9);
        EXPECT_LT(m.residual, 1e-9 * (1 + m.predicted));
    }
}

TEST(Characteristic, ZeroPointClosedForm) {
    const auto pt = zero_point(stokes::surfaces::SurfaceFamily(Kind::An, 4));
    for (Complex l : {Complex(2.0), Complex(0.3, 1.1), Complex(-1.7, 0.2)}) {
        const Complex p = l + 1.0 / l, m = l - 1.0 / l;
        const Complex expected = (p * p - 4.0) * m * m;
        EXPECT_LT(std::abs(characteristic_determinant(pt, l) - expected), 1e-12 * (1 + std::abs(expected)));
        EXPECT_LT(std::abs(characteristic_closed_form(pt, l) - expected), 1e-12 * (1 + std::abs(expected)));
    }
}

TEST(Characteristic, ThreeEdgeGraphAtTwo) {
    const auto pt = make_real_point(stokes::surfaces::SurfaceFamily(Kind::An, 3), {1, 0, 0}, {});
    EXPECT_LT(characteristic_identity(pt, {2.0}), 1e-10);
    const auto S = stokes::surfaces::stokes_matrix(pt);
    EXPECT_LT(std::abs(characteristic_determinant(S, 2.0) - characteristic_determinant(pt, 2.0)), 1e-9);
}

TEST(Characteristic, ClosedFormsAllFamilies) {
    std::mt19937_64 rng(31);
    for (auto kind : {Kind::An, Kind::CFP})
        for (int n = 4; n <= 7; ++n) {
            const auto pt = random_generic_point(stokes::surfaces::SurfaceFamily(kind, n), rng);
            EXPECT_LT(characteristic_identity(pt, sample_lambdas(rng, 20)), 1e-8);
        }
}

TEST(Characteristic, DependsOnlyOnPerimeters) {
    std::mt19937_64 rng(37);
    for (auto kind : {Kind::An, Kind::CFP}) {
        const auto pt = random_generic_point(stokes::surfaces::SurfaceFamily(kind, 6), rng);
        const auto twin = same_perimeter_point(pt, rng);
        const auto h0 = stokes::surfaces::hole_perimeters(pt), h1 = stokes::surfaces::hole_perimeters(twin);
        for (std::size_t k = 0; k < h0.size(); ++k) EXPECT_NEAR(std::abs(h0[k] - h1[k]), 0.0, 1e-12);
        EXPECT_GT(std::abs(stokes::surfaces::stokes_matrix(pt)(0, 1) - stokes::surfaces::stokes_matrix(twin)(0, 1)), 1e-6);
        for (auto l : sample_lambdas(rng, 5)) {
            const Complex a = characteristic_determinant(pt, l), b = characteristic_determinant(twin, l);
            EXPECT_LT(std::abs(a - b), 1e-10 * std::abs(a));
        }
    }
}

TEST(Isospectral, RoundTripFromRealCoordinates) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int k = 0; k < 20; ++k) {
        const double z[3] = {d(rng), d(rng), d(rng)};
        const double G[3] = {cyclic(z[0], z[1]), cyclic(z[1], z[2]), cyclic(z[2], z[0])};
        double P[3];
        for (int i = 0; i < 3; ++i) P[i] = 2 * std::acosh(G[i] / 2);
        const std::array<double, 3> X{(P[0] - P[1] + P[2]) / 2, (P[0] + P[1] - P[2]) / 2, (-P[0] + P[1] + P[2]) / 2};
        const auto r = isospectral_solve(X);
        ASSERT_TRUE(r.converged);
        EXPECT_LT(r.residual, 1e-10);
        EXPECT_TRUE(r.real_solution);
        EXPECT_GE(r.markov, 0);
        const auto g = cyclic_geodesics(r.Z);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(g[i] - G[i]), 0.0, 1e-9 * G[i]);
    }
}

TEST(Isospectral, DegenerateZeroTarget) {
    const auto r = isospectral_solve({0, 0, 0});
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.markov, -4.0, 1e-12);
    for (auto g : cyclic_geodesics(r.Z)) EXPECT_NEAR(std::abs(g - 2.0), 0.0, 1e-10);
}

TEST(Isospectral, NegativeMarkovNeedsComplexCoordinates) {
    const auto r = isospectral_solve({0.1, 0.1, 0.1});
    ASSERT_TRUE(r.converged);
    EXPECT_GT(r.markov, -4.0);
    EXPECT_LT(r.markov, 0.0);
    EXPECT_FALSE(r.real_solution);
    double imag = 0;
    for (auto z : r.Z) imag = std::max(imag, std::abs(z.imag()));
    EXPECT_GT(imag, 1e-3);
}
