#pragma once

#include <functional>
#include <vector>

#include "floqlab/grid.hpp"
#include "floqlab/linalg.hpp"
#include "floqlab/types.hpp"

namespace floqlab::prop {

/// Periodic drive E(t) with period T.
struct FieldSpec {
    grid::FuncSpec shape;
    double period = 2.0 * pi;

    void validate() const;  // throws ValidationError on broken periodicity
    double operator()(double t) const { return shape(t); }
};

/// Drive quadratures at time t:
///   phi1(t) = int_0^t E(tau) cos(omega (tau - t)) dtau
///   phi2(t) = -int_0^t E(tau) sin(omega (tau - t)) dtau
///   psi(t)  = 1/2 int_0^t (phi1^2 - phi2^2) dtau
/// The psi sign is forced by requiring that the factored propagator below
/// actually solves i dU/dt = (H + E(t) x) U; they satisfy phi1' = E - omega
/// phi2, phi2' = omega phi1, and the conjugation images
///   U0(t)^dag p U0(t) = -x omega sin(omega t) + p cos(omega t) - phi1(t)
///   U0(t)^dag x U0(t) =  x cos(omega t) + (p/omega) sin(omega t) - phi2(t)/omega.
struct PhaseTriple {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double psi = 0.0;
    double t = 0.0;
    double quadrature_error = 0.0;
};

/// Adaptive composite Simpson to tolerance tol, psi by nested quadrature with
/// inner tolerance tol/10.
PhaseTriple phase_functions(const FieldSpec& field, double omega, double t, double tol = 1e-10);

/// Same quadratures for the restarted drive on [a, b]; phases referenced at b.
/// The one-period propagator of the segment is
///   exp(-i phi1 x) exp(i phi2 p / omega) exp(-i H (b-a)) exp(-i psi).
PhaseTriple segment_phases(const FieldSpec& field, double omega, double a, double b,
                           double tol = 1e-10);

/// Cumulative phase evaluation at many times in one sweep: adaptive Simpson
/// per segment for the drive integrals, fixed-order Gauss panels for psi.
/// Agrees with phase_functions to quadrature tolerance at every node.
std::vector<PhaseTriple> phase_grid(const FieldSpec& field, double omega,
                                    const std::vector<double>& times, double tol = 1e-10);

/// Complete model description: grid, drive, optional bounded potential,
/// integrator resolution.
struct FloquetScenario {
    grid::GridBasis basis;
    FieldSpec field;
    grid::FuncSpec potential;  // Kind::Zero means free
    int time_steps = 256;
    int dyson_order = 6;
    double quad_tol = 1e-10;

    double omega0() const { return 2.0 * pi / field.period; }
    bool resonant() const { return std::abs(basis.omega - omega0()) <= 1e-12; }
    bool has_potential() const { return !potential.is_zero(); }
    void validate() const;
};

/// Cached spectral factors of one scenario. Immutable after construction and
/// safe to share across threads.
struct ScenarioOps {
    FloquetScenario scenario;
    RealVector x_diag;      // grid positions
    RealVector p_diag;      // grid momenta, FFT index order
    linalg::HermEig h_eig;  // oscillator eigenpairs, used by every exp(-iHt)
    RealVector v_diag;      // potential samples (size 0 when free)

    int dim() const { return scenario.basis.n_points; }
    double period() const { return scenario.field.period; }
};

ScenarioOps make_ops(FloquetScenario scenario);

/// X <- U0(seg) X (or the adjoint), where seg covers a window of length
/// `duration` with phases `ph`. All three factors are applied in factored form;
/// the only dense product is through the oscillator eigenbasis.
void apply_free_segment(const ScenarioOps& ops, const PhaseTriple& ph, double duration, Matrix& x,
                        bool adjoint = false);

/// Dense U0(t, 0) = exp(-i phi1 x) exp(i phi2 p/omega) exp(-i H t - i psi).
Matrix free_propagator(const ScenarioOps& ops, double t);
Matrix free_propagator(const FloquetScenario& scenario, double t);

/// || P (U0(t)^dag O U0(t) - affine image of O) P || with O in {x, p}, the
/// affine right-hand side as documented at PhaseTriple, compressed to the
/// columns of `window` (an orthonormal interior basis).
double heisenberg_residual(const ScenarioOps& ops, MatrixRef window, double t, char which);

struct PerturbedResult {
    Matrix u_T;      // U(T) = U0(T) Omega(T)
    Matrix omega_T;  // interaction-picture wave operator at T
};

/// Midpoint-exponential stepping of the interaction picture:
///   Omega_{k+1} = exp(-i dt W(t_{k+1/2})) Omega_k,  W(t) = U0(t)^dag V U0(t),
/// each exponential applied exactly as U0^dag exp(-i dt V) U0. Unitary by
/// construction. Throws NoPotential for free scenarios.
PerturbedResult perturbed_floquet(const ScenarioOps& ops);

/// Same stepping, reporting U(t_k) at every node t_k = k T / steps, k = 0..steps.
void perturbed_evolution(const ScenarioOps& ops, int steps,
                         const std::function<void(int, const Matrix&)>& at_node);

/// Truncated Dyson series Omega^(J) by the nested recursion
///   Omega^(j)(t) = -i int_0^t W(tau) Omega^(j-1)(tau) dtau
/// with cumulative composite Simpson on the scenario's time_steps nodes.
/// Remainder of the truncation at order J is bounded by (T ||V||)^(J+1)/(J+1)!.
Matrix dyson_series(const ScenarioOps& ops, int order);

}  // namespace floqlab::prop
