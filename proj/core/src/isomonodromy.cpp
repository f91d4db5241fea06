#include "stokes/isomonodromy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stokes/laurent.hpp"

namespace stokes::isomonodromy {

namespace {

void check_index(const FlowState& s, int i) {
    if (i < 0 || i >= static_cast<int>(s.u.size())) throw std::out_of_range("pole index out of range");
}

Complex pole_gap(const FlowState& s, int i, int k) {
    const Complex d = s.u[i] - s.u[k];
    if (std::abs(d) == 0.0) throw std::invalid_argument("coincident poles");
    return d;
}

} // namespace

FlowState make_state(std::vector<Complex> u, Eigen::MatrixXcd V) {
    const auto n = static_cast<Eigen::Index>(u.size());
    if (V.rows() != n || V.cols() != n) throw std::invalid_argument("V must be n×n");
    if ((V + V.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("V must be skew-symmetric");
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (u[i] == u[j]) throw std::invalid_argument("poles must be distinct");
    return {std::move(u), std::move(V)};
}

FlowState random_state(int n, std::mt19937_64& rng, double norm, bool real) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Complex v(g(rng), real ? 0.0 : g(rng));
            V(i, j) = v;
            V(j, i) = -v;
        }
    if (V.norm() > 0) V *= norm / V.norm();
    std::uniform_real_distribution<double> pos(0.0, static_cast<double>(n));
    std::vector<Complex> u;
    while (static_cast<int>(u.size()) < n) {
        const double x = pos(rng);
        if (std::all_of(u.begin(), u.end(), [&](Complex w) { return std::abs(w - x) >= 0.2; })) u.emplace_back(x);
    }
    return {std::move(u), std::move(V)};
}

Eigen::MatrixXcd flow_rhs(const FlowState& state, int i) {
    check_index(state, i);
    const int n = static_cast<int>(state.u.size());
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        const Complex d = pole_gap(state, i, k);
        W(i, k) = state.V(i, k) / d;
        W(k, i) = state.V(k, i) / d;
    }
    return W * state.V - state.V * W;
}

Complex hamiltonian(const FlowState& state, int i) {
    check_index(state, i);
    Complex h = 0.0;
    for (int j = 0; j < static_cast<int>(state.u.size()); ++j)
        if (j != i) h += state.V(i, j) * state.V(i, j) / pole_gap(state, i, j);
    return 0.5 * h;
}

Eigen::MatrixXcd lie_poisson_rhs(const FlowState& state, int i) {
    check_index(state, i);
    const int n = static_cast<int>(state.u.size());
    const auto& V = state.V;
    auto delta = [](int x, int y) { return x == y ? 1.0 : 0.0; };
    // {V_ab, V_cd} for the so(n) bracket.
    auto bracket = [&](int a, int b, int c, int d) {
        return V(a, d) * delta(b, c) + V(b, c) * delta(a, d) - V(b, d) * delta(a, c) - V(a, c) * delta(b, d);
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                if (k == i) continue;
                const int c = std::min(i, k), d = std::max(i, k);
                const Complex grad = V(c, d) / pole_gap(state, i, k);
                out(a, b) += bracket(a, b, c, d) * grad;
            }
    return out;
}

double lie_poisson_check(const FlowState& state, int i) {
    return (lie_poisson_rhs(state, i) - flow_rhs(state, i)).cwiseAbs().maxCoeff();
}

double compatibility_residual(const FlowState& state, int i, int j, double h) {
    auto shifted = [&](int axis, double sign, const Eigen::MatrixXcd& dir) {
        FlowState s = state;
        s.u[axis] += sign * h;
        s.V += sign * h * dir;
        return s;
    };
    const Eigen::MatrixXcd Fi = flow_rhs(state, i), Fj = flow_rhs(state, j);
    const Eigen::MatrixXcd dj_Fi = (flow_rhs(shifted(j, 1, Fj), i) - flow_rhs(shifted(j, -1, Fj), i)) / (2 * h);
    const Eigen::MatrixXcd di_Fj = (flow_rhs(shifted(i, 1, Fi), j) - flow_rhs(shifted(i, -1, Fi), j)) / (2 * h);
    return (dj_Fi - di_Fj).cwiseAbs().maxCoeff();
}

Trajectory integrate_flow(const FlowState& start, int coordinate, double span, double step) {
    check_index(start, coordinate);
    if (step <= 0) throw std::invalid_argument("step must be positive");
    const int count = static_cast<int>(std::llround(std::abs(span) / step));
    const double h = span < 0 ? -step : step;
    Trajectory out{coordinate, step, {start}, {}};
    FlowState s = start;
    auto at = [&](const Eigen::MatrixXcd& V, double du) {
        FlowState t{s.u, V};
        t.u[coordinate] += du;
        return flow_rhs(t, coordinate);
    };
    for (int k = 0; k < count; ++k) {
        for (int o = 0; o < static_cast<int>(s.u.size()); ++o)
            if (o != coordinate && std::abs(s.u[coordinate] + h - s.u[o]) < step)
                throw std::runtime_error("integration path collides with another pole");
        const Eigen::MatrixXcd k1 = at(s.V, 0);
        const Eigen::MatrixXcd k2 = at(s.V + 0.5 * h * k1, 0.5 * h);
        const Eigen::MatrixXcd k3 = at(s.V + 0.5 * h * k2, 0.5 * h);
        const Eigen::MatrixXcd k4 = at(s.V + h * k3, h);
        s.V += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        s.u[coordinate] += h;
        out.skew_drift.push_back((s.V + s.V.transpose()).norm());
        s.V = 0.5 * (s.V - s.V.transpose());
        out.nodes.push_back(s);
    }
    return out;
}

double spectral_drift(const Trajectory& trajectory) {
    auto spectrum = [](const Eigen::MatrixXcd& V) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(V, false);
        return std::vector<Complex>(es.eigenvalues().data(), es.eigenvalues().data() + V.rows());
    };
    const auto ref = spectrum(trajectory.nodes.front().V);
    double worst = 0;
    for (std::size_t k = 1; k < trajectory.nodes.size(); ++k) {
        auto ev = spectrum(trajectory.nodes[k].V);
        for (const auto& r : ref) {
            auto it = std::min_element(ev.begin(), ev.end(),
                                       [&](Complex a, Complex b) { return std::abs(a - r) < std::abs(b - r); });
            worst = std::max(worst, std::abs(*it - r));
            ev.erase(it);
        }
    }
    return worst;
}

DualResidues dual_residues(const Eigen::MatrixXcd& V, Complex nu) {
    const auto n = V.rows();
    const Eigen::MatrixXcd B = (nu - 0.5) * Eigen::MatrixXcd::Identity(n, n) - V;
    DualResidues out{nu, {}};
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
        A.row(k) = B.row(k);
        out.A.push_back(std::move(A));
    }
    return out;
}

std::vector<TracePair> dual_trace_report(const DualResidues& residues, const Eigen::MatrixXcd& V) {
    std::vector<TracePair> out;
    const int n = static_cast<int>(residues.A.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.push_back({i, j, (residues.A[i] * residues.A[j]).trace(), V(i, j) * V(i, j)});
    return out;
}

SymbolicTraceReport symbolic_dual_trace_identity(int n) {
    using laurent::LaurentScalar;
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    std::vector<std::string> names{"nu"};
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) names.push_back("V" + std::to_string(i) + std::to_string(j));
    const auto vars = laurent::make_variables(names);
    auto entry = [&](int i, int j) -> LaurentScalar {
        if (i == j) return LaurentScalar::constant(vars, 0);
        const int a = std::min(i, j), b = std::max(i, j);
        auto v = LaurentScalar::variable(vars, "V" + std::to_string(a + 1) + std::to_string(b + 1));
        return i < j ? v : -v;
    };
    const auto shift = LaurentScalar::variable(vars, "nu") - LaurentScalar::constant(vars, laurent::GaussRational(mpq_class(1, 2)));
    // Only row k of A_k is nonzero.
    auto row = [&](int k, int c) { return (c == k ? shift : LaurentScalar::constant(vars, 0)) - entry(k, c); };

    SymbolicTraceReport out{n, true, {}};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            LaurentScalar tr = LaurentScalar::constant(vars, 0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const auto lhs = a == i ? row(i, b) : LaurentScalar::constant(vars, 0);
                    const auto rhs = b == j ? row(j, a) : LaurentScalar::constant(vars, 0);
                    tr += lhs * rhs;
                }
            const auto diff = tr + entry(i, j) * entry(i, j);
            if (!diff.is_zero()) out.all_zero = false;
            out.differences.push_back(diff.serialize());
        }
    return out;
}

MonodromyTuple monodromy_matrices(const Eigen::MatrixXcd& S, Complex q) {
    const auto n = S.rows();
    const Eigen::MatrixXcd B = q * S + S.transpose();
    double hadamard = 1;
    for (Eigen::Index r = 0; r < n; ++r) hadamard *= B.row(r).norm();
    if (std::abs(B.partialPivLu().determinant()) <= 1e-10 * hadamard)
        throw std::invalid_argument("det(qS + Sᵀ) vanishes");
    MonodromyTuple out{q, {}, {}};
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n);
        M.row(k) -= B.row(k);
        out.M.push_back(std::move(M));
    }
    out.M_inf = -S.partialPivLu().solve(S.transpose()) / q;
    return out;
}

MonodromyTraceReport monodromy_trace_report(const Eigen::MatrixXcd& S, const MonodromyTuple& tuple) {
    const int n = static_cast<int>(S.rows());
    const Complex q = tuple.q;
    MonodromyTraceReport out{0, 0};
    for (int i = 0; i < n; ++i) {
        out.max_det_residual = std::max(out.max_det_residual, std::abs(tuple.M[i].determinant() + q));
        for (int j = i + 1; j < n; ++j) {
            const Complex lhs = (tuple.M[i] * tuple.M[j]).trace();
            const Complex rhs = double(n - 2) - 2.0 * q + q * S(i, j) * S(i, j);
            out.max_trace_residual = std::max(out.max_trace_residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    return out;
}

CommutatorReport commutator_trace_report(const std::vector<Eigen::MatrixXcd>& samples, Complex q,
                                         std::array<int, 4> idx) {
    const auto [i, j, k, l] = idx;
    if (!(0 <= i && i < j && j < k && k < l)) throw std::invalid_argument("indices must satisfy i < j < k < l");
    CommutatorReport out{idx, q, true, {}};
    std::optional<Complex> first;
    for (const auto& S : samples) {
        if (l >= S.rows()) throw std::invalid_argument("index exceeds matrix size");
        CommutatorSample rec{false, {}, 0.0, 0.0, 0.0};
        try {
            const auto t = monodromy_matrices(S, q);
            const auto& M = t.M;
            const Eigen::MatrixXcd c1 = M[k] * M[i] - M[i] * M[k], c2 = M[j] * M[l] - M[l] * M[j];
            rec.trace = (c1 * c2).trace();
            rec.combination = (S(i, j) * S(k, l) - S(i, l) * S(k, j)) * S(i, k) * S(j, l);
            if (std::abs(rec.combination) < 1e-12) {
                rec.skipped = true;
                rec.reason = "zero denominator";
            } else {
                rec.ratio = rec.trace / rec.combination;
                if (!first) first = rec.ratio;
                else if (std::abs(rec.ratio - *first) > 1e-8 * std::max(1.0, std::abs(*first))) out.constant = false;
            }
        } catch (const std::invalid_argument& e) {
            rec.skipped = true;
            rec.reason = e.what();
        }
        out.samples.push_back(rec);
    }
    return out;
}

Eigen::MatrixXcd random_integer_stokes(int n, std::mt19937_64& rng, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) S(i, j) = double(d(rng));
    return S;
}

Complex spectral_mu(const Eigen::MatrixXcd& V) {
    return std::sqrt(-(V(0, 1) * V(0, 1) + V(0, 2) * V(0, 2) + V(1, 2) * V(1, 2)));
}

std::optional<Complex> pvi_coordinate(Complex t, const Eigen::MatrixXcd& V, Complex mu) {
    const Complex X = V(0, 2) * V(1, 2) + mu * V(0, 1);
    const Complex W = V(0, 1) * V(0, 2) - mu * V(1, 2);
    const Complex num = t * X * X;
    const Complex den = num + (t - 1.0) * W * W;
    if (std::abs(den) < 1e-8) return std::nullopt;
    return num / den;
}

Complex pvi_defect(Complex t, Complex y, Complex dy, Complex ddy, Complex mu) {
    const Complex a = (2.0 * mu - 1.0);
    const Complex rhs = 0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - t)) * dy * dy -
                        (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (y - t)) * dy +
                        y * (y - 1.0) * (y - t) / (t * t * (t - 1.0) * (t - 1.0)) *
                            (a * a / 2.0 + 0.5 * t * (t - 1.0) / ((y - t) * (y - t)));
    return ddy - rhs;
}

PviReport pvi_reduction(const Trajectory& trajectory, std::optional<Complex> mu) {
    if (trajectory.nodes.empty() || trajectory.nodes.front().u.size() != 3)
        throw std::invalid_argument("PVI reduction needs an n = 3 trajectory");
    if (trajectory.coordinate != 1) throw std::invalid_argument("PVI reduction varies u2");
    PviReport out;
    out.mu = mu ? *mu : spectral_mu(trajectory.nodes.front().V);
    out.residual = 0;
    out.evaluated = 0;
    for (const auto& s : trajectory.nodes) {
        const Complex t = (s.u[1] - s.u[0]) / (s.u[2] - s.u[0]);
        const auto y = pvi_coordinate(t, s.V, out.mu);
        out.t.push_back(t);
        out.y.push_back(y.value_or(Complex(NAN, NAN)));
        out.flagged.push_back(!y.has_value());
    }
    for (std::size_t k = 1; k + 1 < out.t.size(); ++k) {
        if (out.flagged[k - 1] || out.flagged[k] || out.flagged[k + 1]) continue;
        const Complex h1 = out.t[k] - out.t[k - 1], h2 = out.t[k + 1] - out.t[k];
        const Complex y0 = out.y[k - 1], y1 = out.y[k], y2 = out.y[k + 1];
        const Complex dy = (y2 * h1 * h1 - y0 * h2 * h2 + y1 * (h2 * h2 - h1 * h1)) / (h1 * h2 * (h1 + h2));
        const Complex ddy = 2.0 * (y2 * h1 - y1 * (h1 + h2) + y0 * h2) / (h1 * h2 * (h1 + h2));
        const double r = std::abs(pvi_defect(out.t[k], y1, dy, ddy, out.mu)) / std::max(std::abs(ddy), 1.0);
        out.residual = std::max(out.residual, r);
        ++out.evaluated;
    }
    return out;
}

PviReport pvi_check(const Eigen::MatrixXcd& V0, double t0, double t1, double step, std::optional<Complex> mu) {
    const auto start = make_state({0.0, t0, 1.0}, V0);
    return pvi_reduction(integrate_flow(start, 1, t1 - t0, step), mu);
}

} // namespace stokes::isomonodromy
