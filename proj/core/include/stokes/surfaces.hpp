#pragma once

#include <array>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stokes/laurent.hpp"

namespace stokes::surfaces {

using laurent::Complex;
using laurent::LaurentScalar;

enum class Kind { An, CFP };

/// Parses "an" / "cfp" (any case).
Kind parse_kind(const std::string& text);
std::string kind_name(Kind kind);

/// One of the two fat-graph families, with its edge bookkeeping.
///
/// Edges are numbered 0..n-1 for Z_1..Z_n and n..n+k-1 for Y_1..Y_k.
class SurfaceFamily {
public:
    SurfaceFamily(Kind kind, int n);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    int y_count() const;
    int edge_count() const { return n_ + y_count(); }
    int genus() const;
    int holes() const;

    int z(int i) const { return i - 1; }
    int y(int j) const { return n_ + j - 1; }

    const std::vector<std::string>& edge_names() const { return *vars_; }
    const laurent::Variables& variables() const { return vars_; }
    std::string name() const { return kind_name(kind_); }

    friend bool operator==(const SurfaceFamily& a, const SurfaceFamily& b) {
        return a.kind_ == b.kind_ && a.n_ == b.n_;
    }

private:
    Kind kind_;
    int n_;
    laurent::Variables vars_;
};

/// Numeric shear coordinates (real points simply have zero imaginary parts).
struct ShearPoint {
    SurfaceFamily family;
    std::vector<Complex> Z;
    std::vector<Complex> Y;

    /// Z then Y, indexed by edge.
    std::vector<Complex> edges() const;
    bool is_real(double tol = 0.0) const;
};

ShearPoint make_point(const SurfaceFamily& family, std::vector<Complex> Z, std::vector<Complex> Y);
ShearPoint make_real_point(const SurfaceFamily& family, const std::vector<double>& Z, const std::vector<double>& Y);
ShearPoint zero_point(const SurfaceFamily& family);

/// Uniform draw of every coordinate in [lo, hi].
ShearPoint random_point(const SurfaceFamily& family, std::mt19937_64& rng, double lo = -1.5, double hi = 1.5);

template <class T>
struct Mat2 {
    T a, b, c, d;

    static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    T trace() const { return a + d; }
    T det() const { return a * d - b * c; }
    /// Equals the inverse for unimodular matrices.
    Mat2 adjugate() const { return {d, -b, -c, a}; }
};

using NumMat = Mat2<Complex>;
using SymMat = Mat2<LaurentScalar>;

enum class Letter { R, L, F, X, XHalf };

struct WordLetter {
    Letter kind;
    int edge = -1;
};

struct Word {
    int sign = 1;
    std::vector<WordLetter> letters;

    std::size_t size() const { return letters.size(); }
    std::string to_string(const SurfaceFamily& family) const;
};

/// R, L, F as fixed integer matrices.
NumMat letter_matrix(Letter kind);

/// X(z) = [[0, -e^{z/2}], [e^{-z/2}, 0]].
NumMat x_matrix(Complex z);
SymMat x_matrix_symbolic(const laurent::Variables& vars, int edge, bool half);

/// Left-to-right product; throws std::runtime_error when the running determinant
/// drifts from 1 by more than 1e-8.
NumMat evaluate_word(const Word& word, const std::vector<Complex>& edges);
SymMat evaluate_word_symbolic(const Word& word, const SurfaceFamily& family);

/// Words γ_1..γ_n of the Fuchsian-group basis.
std::vector<Word> generator_words(const SurfaceFamily& family);

std::vector<NumMat> build_generators(const ShearPoint& point);
std::vector<SymMat> build_generators_symbolic(const SurfaceFamily& family);

/// Closed fat-graph path whose trace is G_ij for the CFP family (1 <= i < j <= n).
Word geodesic_word_cfp(int i, int j, int n);

/// Unit upper-triangular matrix with G_ij = Tr(γ_i γ_j^{-1}) above the diagonal.
Eigen::MatrixXcd stokes_matrix(const ShearPoint& point);

/// Same matrix assembled from the CFP geodesic words instead of the basis.
Eigen::MatrixXcd stokes_matrix_from_words(const ShearPoint& point);

/// Symbolic Stokes entries; `entry(i, j)` is 0-based with i < j.
class SymbolicStokes {
public:
    SymbolicStokes(int n, std::vector<LaurentScalar> upper);
    int n() const { return n_; }
    const LaurentScalar& entry(int i, int j) const;

private:
    int n_;
    std::vector<LaurentScalar> upper_;
};

SymbolicStokes stokes_matrix_symbolic(const SurfaceFamily& family);
SymbolicStokes stokes_matrix_symbolic_from_words(const SurfaceFamily& family);

/// Trivalent vertices as cyclically ordered edge triples. A-type graphs also
/// carry pending Z edges that end at one-valent vertices.
std::vector<std::array<int, 3>> fat_graph_vertices(const SurfaceFamily& family);

/// Boundary cycles of the ribbon graph, each as the list of traversed edges
/// (an edge bordering one face twice appears twice).
std::vector<std::vector<int>> boundary_cycles(const SurfaceFamily& family);

/// Coordinate sums: one value (An, CFP odd: ΣZ + ΣY) or (ΣZ, ΣY) for CFP even.
std::vector<Complex> perimeters(const ShearPoint& point);

/// Sum of coordinates around each boundary cycle.
std::vector<Complex> hole_perimeters(const ShearPoint& point);

/// Exponent appearing in the boundary monodromy trace: P* = factor · (ΣZ + ΣY).
inline constexpr double kBoundaryExponentFactor = 2.0;

/// Tr((γ_1 ⋯ γ_n)^{-1}) for the A family.
Complex boundary_monodromy_trace(const ShearPoint& point);
LaurentScalar boundary_monodromy_trace_symbolic(const SurfaceFamily& family);

/// −(e^{P*/2} + e^{−P*/2}) with the recorded P* convention.
Complex boundary_monodromy_prediction(const ShearPoint& point);

struct SpecializationPair {
    int i, j;
    bool equal;
    LaurentScalar difference;
};

struct SpecializationReport {
    int n;
    bool all_equal;
    std::vector<SpecializationPair> pairs;
};

/// Compares G^An(Z, Y) with G^CFP(2Z, Y, Y) for every pair. With `double_z`
/// false the Z coordinates are not doubled (negative control).
SpecializationReport specialization_check(int n, bool double_z = true);

} // namespace stokes::surfaces
