#pragma once

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stokes::isomonodromy {

using Complex = std::complex<double>;

/// Pole positions u and a skew-symmetric residue V.
struct FlowState {
    std::vector<Complex> u;
    Eigen::MatrixXcd V;
};

/// Validates distinct u and Vᵀ = −V (to 1e-12); throws std::invalid_argument.
FlowState make_state(std::vector<Complex> u, Eigen::MatrixXcd V);

/// Random skew V of Frobenius norm `norm` (complex entries unless `real`),
/// with u drawn from [0, n) and separated by at least 0.2.
FlowState random_state(int n, std::mt19937_64& rng, double norm = 1.0, bool real = false);

/// ∂V/∂u_i = [V_i, V], where V_i keeps row and column i of V divided by u_i − u_k.
Eigen::MatrixXcd flow_rhs(const FlowState& state, int i);

/// H_i = ½ Σ_{j≠i} V_ij² / (u_i − u_j).
Complex hamiltonian(const FlowState& state, int i);

/// {V, H_i} from the so(n) Lie–Poisson bracket and the gradient of H_i.
Eigen::MatrixXcd lie_poisson_rhs(const FlowState& state, int i);

/// max |{V, H_i} − flow_rhs(state, i)|.
double lie_poisson_check(const FlowState& state, int i);

/// max |D_j F_i − D_i F_j| for the total derivatives of the flows, by central differences.
double compatibility_residual(const FlowState& state, int i, int j, double h = 1e-5);

struct Trajectory {
    int coordinate;
    double step;
    std::vector<FlowState> nodes;
    /// ‖V + Vᵀ‖ before each re-antisymmetrization.
    std::vector<double> skew_drift;
};

/// Fixed-step RK4 in u_coordinate over a real displacement `span`.
/// Throws std::runtime_error when u_coordinate comes within one step of another pole.
Trajectory integrate_flow(const FlowState& start, int coordinate, double span, double step);

/// Largest change of an eigenvalue of V between the first node and any later node.
double spectral_drift(const Trajectory& trajectory);

struct DualResidues {
    Complex nu;
    std::vector<Eigen::MatrixXcd> A;
};

/// A_k = E_k(ν − ½ − V).
DualResidues dual_residues(const Eigen::MatrixXcd& V, Complex nu = 0.0);

struct TracePair {
    int i, j;
    Complex trace;
    Complex v_squared;
};

/// Tr(A_i A_j) next to V_ij² for i < j.
std::vector<TracePair> dual_trace_report(const DualResidues& residues, const Eigen::MatrixXcd& V);

struct SymbolicTraceReport {
    int n;
    bool all_zero;
    /// Serialized Tr(A_i A_j) + V_ij² per pair, in (i, j) order.
    std::vector<std::string> differences;
};

/// Exact check of Tr(A_i A_j) + V_ij² = 0 with the entries of V and ν as symbols.
SymbolicTraceReport symbolic_dual_trace_identity(int n);

struct MonodromyTuple {
    Complex q;
    std::vector<Eigen::MatrixXcd> M;
    Eigen::MatrixXcd M_inf;
};

/// M_k = I − E_k(qS + Sᵀ), M_∞ = −q⁻¹S⁻¹Sᵀ. Throws std::invalid_argument when
/// det(qS + Sᵀ) vanishes to 1e-10 relative to its Hadamard bound.
MonodromyTuple monodromy_matrices(const Eigen::MatrixXcd& S, Complex q);

struct MonodromyTraceReport {
    double max_trace_residual;
    double max_det_residual;
};

/// Residuals of Tr(M_i M_j) = n − 2 − 2q + q S_ij² (relative) and det M_k = −q.
MonodromyTraceReport monodromy_trace_report(const Eigen::MatrixXcd& S, const MonodromyTuple& tuple);

struct CommutatorSample {
    bool skipped;
    std::string reason;
    Complex trace;
    Complex combination;
    Complex ratio;
};

struct CommutatorReport {
    std::array<int, 4> indices;
    Complex q;
    bool constant;
    std::vector<CommutatorSample> samples;
};

/// Tr([M_k, M_i][M_j, M_l]) against (s_ij s_kl − s_il s_kj) s_ik s_jl for 0-based i<j<k<l.
CommutatorReport commutator_trace_report(const std::vector<Eigen::MatrixXcd>& samples, Complex q,
                                         std::array<int, 4> indices);

/// Random unit upper-triangular integer matrix with entries in [−range, range].
Eigen::MatrixXcd random_integer_stokes(int n, std::mt19937_64& rng, int range = 5);

/// √(−(V₁₂² + V₁₃² + V₂₃²)), an eigenvalue of a 3×3 skew V.
Complex spectral_mu(const Eigen::MatrixXcd& V);

/// y = tX² / (tX² + (t−1)W²), X = V₁₃V₂₃ + μV₁₂, W = V₁₂V₁₃ − μV₂₃. Empty near a zero denominator.
std::optional<Complex> pvi_coordinate(Complex t, const Eigen::MatrixXcd& V, Complex mu);

/// ÿ − RHS of the sixth Painlevé equation with parameter μ.
Complex pvi_defect(Complex t, Complex y, Complex dy, Complex ddy, Complex mu);

struct PviReport {
    Complex mu;
    std::vector<Complex> t;
    std::vector<Complex> y;
    std::vector<bool> flagged;
    /// max |defect| / max(|ÿ|, 1) over interior nodes with unflagged neighbours.
    double residual;
    int evaluated;
};

/// Maps an n = 3 trajectory in u₂ to (t, y) and measures the equation residual by
/// second-order finite differences. μ defaults to spectral_mu of the first node.
PviReport pvi_reduction(const Trajectory& trajectory, std::optional<Complex> mu = std::nullopt);

/// Integrates from u = (0, t0, 1) to u₂ = t1 and reduces.
PviReport pvi_check(const Eigen::MatrixXcd& V0, double t0, double t1, double step,
                    std::optional<Complex> mu = std::nullopt);

} // namespace stokes::isomonodromy
