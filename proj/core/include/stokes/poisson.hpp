#pragma once

#include <array>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stokes/laurent.hpp"
#include "stokes/surfaces.hpp"

namespace stokes::poisson {

using laurent::Complex;
using laurent::GaussRational;
using laurent::LaurentScalar;
using surfaces::SurfaceFamily;

/// Constant skew form on the edge coordinates of a fat graph.
struct IncidenceForm {
    SurfaceFamily family;
    Eigen::MatrixXi B;
    std::vector<std::array<int, 3>> vertices;
    /// "candidate", "candidate+calibrated" or "calibrated".
    std::string provenance;
};

/// Sum of the elementary cyclic contributions of each vertex.
Eigen::MatrixXi form_from_vertices(const SurfaceFamily& family, const std::vector<std::array<int, 3>>& vertices);

/// Form built from the fat-graph vertices. For n <= 6 it is checked against
/// calibrate_incidence_form, and the calibrated form replaces it on disagreement.
IncidenceForm incidence_form(const SurfaceFamily& family);

/// Scale of the reference bracket that the geodesic functions realize:
/// 2 for the A family, 1 for CFP.
long reference_scale(surfaces::Kind kind);

/// {f, g} = Σ_{α<β} B_{αβ}(∂_α f ∂_β g − ∂_α g ∂_β f).
LaurentScalar goldman_bracket(const LaurentScalar& f, const LaurentScalar& g, const IncidenceForm& form);

/// Bracket of the linear function Σ c_α Z_α with g.
LaurentScalar linear_bracket(const std::vector<long>& coefficients, const LaurentScalar& g, const IncidenceForm& form);

/// 0-based index pair (i < j) naming the entry s_ij.
struct EntryIndex {
    int i, j;
};

/// Right-hand side of the quadratic reference bracket in units of the scale:
/// Σ quad·s s + Σ lin·s.
struct ReferenceExpression {
    struct Quadratic {
        GaussRational coeff;
        EntryIndex first, second;
    };
    struct Linear {
        GaussRational coeff;
        EntryIndex entry;
    };
    std::vector<Quadratic> quadratic;
    std::vector<Linear> linear;
    bool is_zero() const { return quadratic.empty() && linear.empty(); }
};

/// {s_p, s_q} for two distinct index pairs; covers all six ordering cases.
ReferenceExpression du_reference_bracket(EntryIndex p, EntryIndex q);

LaurentScalar evaluate_reference(const ReferenceExpression& expr, const surfaces::SymbolicStokes& s,
                                 const GaussRational& scale);
Complex evaluate_reference(const ReferenceExpression& expr, const Eigen::MatrixXcd& s, Complex scale);

struct PairRecord {
    EntryIndex p, q;
    bool pass;
    std::size_t difference_terms;
};

struct IdentityReport {
    SurfaceFamily family;
    long scale;
    bool all_pass;
    std::vector<PairRecord> pairs;
};

/// Exact comparison of the Goldman bracket with the reference bracket over all
/// unordered pairs of entries, spread over `jobs` threads.
IdentityReport verify_bracket_identity(const SurfaceFamily& family, int jobs = 1);

struct CalibrationResult {
    IncidenceForm form;
    bool unique;
    int rank;
    int unknowns;
    std::size_t equations;
    std::vector<std::string> free_unknowns;
};

/// Solves exactly for the skew form that makes the Goldman bracket of the
/// geodesic functions equal the reference bracket. Throws std::runtime_error
/// when the system is infeasible. n <= 6.
CalibrationResult calibrate_incidence_form(const SurfaceFamily& family);

/// Tr(A)Tr(B) − Tr(AB) − Tr(AB^{-1}).
LaurentScalar skein_residual(const surfaces::SymMat& A, const surfaces::SymMat& B);
Complex skein_residual(const surfaces::NumMat& A, const surfaces::NumMat& B);

/// Random word with 1..max_length letters drawn from R, L, F and the family's X letters.
surfaces::Word random_word(const SurfaceFamily& family, std::mt19937_64& rng, int max_length);

struct CasimirRecord {
    std::string function;
    EntryIndex entry;
    bool vanishes;
};

struct CasimirReport {
    SurfaceFamily family;
    bool all_vanish;
    std::vector<CasimirRecord> records;
};

/// Brackets of the total coordinate sum, and of each boundary-cycle perimeter,
/// with every Stokes entry.
CasimirReport casimir_check(const SurfaceFamily& family);

struct TraceCalibrationPair {
    EntryIndex a, b;
    bool skipped;
    std::string reason;
    bool proportional;
    GaussRational ratio;
};

struct TraceCalibrationReport {
    SurfaceFamily family;
    bool constant;
    GaussRational value;
    std::vector<TraceCalibrationPair> pairs;
};

/// For A = γ_i γ_j^{-1}, B = γ_k γ_l^{-1}, measures {Tr A, Tr B} ÷ (½Tr(AB) − ½Tr(AB^{-1})).
TraceCalibrationReport trace_bracket_calibration(const SurfaceFamily& family);

} // namespace stokes::poisson
