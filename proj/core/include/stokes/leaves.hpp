#pragma once

#include <array>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stokes/surfaces.hpp"

namespace stokes::leaves {

using laurent::Complex;
using surfaces::ShearPoint;
using surfaces::SurfaceFamily;

/// S^{-T} S by unit-lower-triangular back-substitution.
Eigen::MatrixXcd monodromy_product(const Eigen::MatrixXcd& S);

/// ‖Sᵀ M − S‖.
double monodromy_residual(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& M);

struct JordanBlock {
    Complex eigenvalue;
    int size;
    int multiplicity;
};

/// Block pair J_{λ,k} ⊕ J_{1/λ,k} (or, for λ = ±1, two equal blocks).
struct PairCount {
    Complex eigenvalue;
    int size;
    int count;
};

/// Unpaired block J_{λ,k} with λ = (−1)^{k+1}.
struct SelfCount {
    int sign;
    int size;
    int count;
};

struct JordanProfile {
    std::vector<JordanBlock> blocks;
    std::vector<PairCount> pairs;
    std::vector<SelfCount> self_paired;
    bool flagged = false;
    std::string flag_reason;
    bool pairing_ok = true;

    int dimension() const;
    int multiplicity_of_size(Complex eigenvalue, int size, double tol) const;
};

/// Eigenvalues from a dense solver, clustered within sqrt(tol)·max(1, |λ|);
/// block sizes from the rank deficiencies of (M − λI)^k, where rank counts
/// singular values above tol·max(1, ‖(M − λI)^k‖).
JordanProfile jordan_profile(const Eigen::MatrixXcd& M, double tol = 1e-9);

/// Profile of S^{-T}S at a point, with S, the product and the spectral
/// decomposition all carried out in 50-digit arithmetic.
JordanProfile point_jordan_profile(const ShearPoint& point);

/// Profile assembled from known blocks (pairing is derived the same way).
JordanProfile profile_from_blocks(std::vector<JordanBlock> blocks, double tol = 1e-9);

struct LeafDimension {
    double d;
    double leaf_dim;
};

/// Bondal's formula with the two corrected terms. Throws std::invalid_argument
/// when the profile violates reciprocal pairing.
LeafDimension bondal_dimension(const JordanProfile& profile, int n);

/// n(n−1)/2 − ⌊n/2⌋ − leaf_dim: how far a leaf falls short of the generic one.
double discrepancy(int n, double leaf_dim);

/// Predicted blocks of S^{-T}S at a point of either family.
std::vector<JordanBlock> predicted_blocks(const ShearPoint& point);

struct TheoremCheck {
    bool eigenvalues_match;
    bool blocks_match;
    bool skipped;
    std::string reason;
    JordanProfile computed;
    std::vector<JordanBlock> predicted;
    double max_relative_error;
};

/// Exponents x such that the predicted eigenvalues are ±e^{±x}.
std::vector<double> spectral_exponents(const ShearPoint& point);

/// Compares point_jordan_profile with predicted_blocks; eigenvalues must agree
/// to `match_tol` relative. Points whose exponents come within 10·tol of zero are skipped.
TheoremCheck verify_jordan_theorems(const ShearPoint& point, double tol = 1e-9, double match_tol = 1e-8);

/// Numerical rank of S + Sᵀ.
int symmetric_rank(const Eigen::MatrixXcd& S, double tol = 1e-9);

/// Rank of S + Sᵀ at a point, from the 50-digit Stokes matrix.
int point_symmetric_rank(const ShearPoint& point);

struct MinkowskiVectors {
    /// One row per generator: (v1, v2, v3, v4).
    Eigen::MatrixXd vectors;
    Eigen::Vector4d metric;
    double max_norm_error;
    double max_gram_error;
    double max_fourth_component;
    bool all_timelike_separated;
};

/// Coefficients of each γ_i in the real Pauli basis and their Gram matrix.
MinkowskiVectors minkowski_vectors(const ShearPoint& point);

struct MarkovReport {
    double a, b, c;
    double M;
    double predicted;
    double residual;
};

MarkovReport markov_element(const ShearPoint& point);

/// det(λS + λ^{-1}Sᵀ).
Complex characteristic_determinant(const Eigen::MatrixXcd& S, Complex lambda);

/// det(λS + λ^{-1}Sᵀ) at a point, evaluated in 50-digit arithmetic.
Complex characteristic_determinant(const ShearPoint& point, Complex lambda);

/// Closed form of the same determinant at a point.
Complex characteristic_closed_form(const ShearPoint& point, Complex lambda);

/// Maximum relative residual between the determinant and its closed form.
double characteristic_identity(const ShearPoint& point, const std::vector<Complex>& lambdas);

/// λ samples on annuli away from 0, ±1 and ±i.
std::vector<Complex> sample_lambdas(std::mt19937_64& rng, int count);

/// A second point with the same boundary-cycle perimeters (random direction).
ShearPoint same_perimeter_point(const ShearPoint& point, std::mt19937_64& rng);

struct IsospectralResult {
    std::array<Complex, 3> Z;
    double residual;
    int iterations;
    bool converged;
    bool real_solution;
    double markov;
};

/// G_{i,i+1}(Z) = e^{(X_i+X_{i+1})/2} + e^{−(X_i+X_{i+1})/2}, cyclic, by damped Newton.
IsospectralResult isospectral_solve(const std::array<double, 3>& X);

/// The three cyclic geodesic functions of the A_3 graph.
std::array<Complex, 3> cyclic_geodesics(const std::array<Complex, 3>& Z);

/// Random real point with |Σ| ≥ min_abs for every exponent the theorems rely on.
ShearPoint random_generic_point(const SurfaceFamily& family, std::mt19937_64& rng, double min_abs = 1e-3);

} // namespace stokes::leaves
