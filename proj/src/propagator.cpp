#include "floqlab/propagator.hpp"

#include <cmath>
#include <vector>

#include "floqlab/errors.hpp"
#include "floqlab/fft.hpp"
#include "floqlab/quad.hpp"

namespace floqlab::prop {

void FieldSpec::validate() const {
    if (!(period > 0.0)) throw ValidationError("field.period must be positive");
    for (int k = 0; k < 17; ++k) {
        const double t = period * k / 16.0;
        if (!std::isfinite(shape(t))) throw ValidationError("field: non-finite drive value");
        if (std::abs(shape(t + period) - shape(t)) > 1e-12 * (1.0 + std::abs(shape(t))))
            throw ValidationError("field: drive is not periodic with the declared period");
    }
}

void FloquetScenario::validate() const {
    basis.validate();
    field.validate();
    if (time_steps < 16) throw ValidationError("time_steps must be at least 16");
    if (dyson_order < 0) throw ValidationError("dyson_order must be nonnegative");
    if (!(quad_tol > 0.0)) throw ValidationError("quad_tol must be positive");
    if (std::abs(omega0() * field.period - 2.0 * pi) > 1e-12)
        throw ValidationError("omega0 * period must equal 2 pi");
}

namespace {

struct DriveIntegrals {
    double ic = 0.0;  // int E cos(omega tau)
    double is = 0.0;  // int E sin(omega tau)
    double err = 0.0;
};

DriveIntegrals drive_integrals(const FieldSpec& field, double omega, double a, double b,
                               double tol) {
    DriveIntegrals out;
    if (a == b) return out;
    auto rc = quad::adaptive_simpson(
        [&](double tau) { return field(tau) * std::cos(omega * tau); }, a, b, tol);
    auto rs = quad::adaptive_simpson(
        [&](double tau) { return field(tau) * std::sin(omega * tau); }, a, b, tol);
    out.ic = rc.value;
    out.is = rs.value;
    out.err = rc.error + rs.error;
    return out;
}

// phases referenced at time t from cumulative drive integrals:
//   phi1 = cos(omega t) Ic + sin(omega t) Is
//   phi2 = sin(omega t) Ic - cos(omega t) Is
void rotate_phases(double omega, double t, double ic, double is, double& phi1, double& phi2) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    phi1 = c * ic + s * is;
    phi2 = s * ic - c * is;
}

}  // namespace

PhaseTriple segment_phases(const FieldSpec& field, double omega, double a, double b, double tol) {
    if (b < a) throw ValidationError("segment_phases: reversed interval");
    PhaseTriple ph;
    ph.t = b;
    if (a == b) return ph;

    const DriveIntegrals full = drive_integrals(field, omega, a, b, tol);
    rotate_phases(omega, b, full.ic, full.is, ph.phi1, ph.phi2);

    // psi needs the running phases of the restarted drive; inner integrals run
    // at a tenth of the requested tolerance.
    double inner_err = 0.0;
    auto integrand = [&](double tau) {
        const DriveIntegrals part = drive_integrals(field, omega, a, tau, tol / 10.0);
        inner_err = std::max(inner_err, part.err);
        double phi1 = 0.0, phi2 = 0.0;
        rotate_phases(omega, tau, part.ic, part.is, phi1, phi2);
        return phi1 * phi1 - phi2 * phi2;
    };
    auto psi_int = quad::adaptive_simpson(integrand, a, b, tol);
    ph.psi = 0.5 * psi_int.value;
    ph.quadrature_error = full.err + psi_int.error + inner_err;
    if (ph.quadrature_error > 50.0 * tol * std::max(1.0, b - a))
        throw QuadratureFailure("segment_phases: error estimate exceeds tolerance");
    return ph;
}

PhaseTriple phase_functions(const FieldSpec& field, double omega, double t, double tol) {
    if (t < 0.0) throw ValidationError("phase_functions: t must be nonnegative");
    if (!(tol > 0.0)) throw ValidationError("phase_functions: tol must be positive");
    return segment_phases(field, omega, 0.0, t, tol);
}

std::vector<PhaseTriple> phase_grid(const FieldSpec& field, double omega,
                                    const std::vector<double>& times, double tol) {
    std::vector<PhaseTriple> out(times.size());
    double ic = 0.0, is = 0.0, psi = 0.0, err = 0.0;
    double prev = 0.0;
    const double seg_tol = tol / std::max<size_t>(times.size(), 1);
    // Gauss panels are exact to machine precision only on short windows; keep
    // panel length below a quarter drive period.
    const double max_len = 0.5 * pi / std::max(1.0, omega);
    for (size_t j = 0; j < times.size(); ++j) {
        const double t = times[j];
        if (t < prev) throw ValidationError("phase_grid: times must be nondecreasing");
        while (prev < t) {
            const double stop = std::min(t, prev + max_len);
            auto local = [&](double tau) {
                const double dic =
                    quad::gauss([&](double u) { return field(u) * std::cos(omega * u); }, prev, tau);
                const double dis =
                    quad::gauss([&](double u) { return field(u) * std::sin(omega * u); }, prev, tau);
                double phi1 = 0.0, phi2 = 0.0;
                rotate_phases(omega, tau, ic + dic, is + dis, phi1, phi2);
                return phi1 * phi1 - phi2 * phi2;
            };
            psi += 0.5 * quad::gauss(local, prev, stop, 32);
            const DriveIntegrals seg = drive_integrals(field, omega, prev, stop, seg_tol);
            ic += seg.ic;
            is += seg.is;
            err += seg.err;
            prev = stop;
        }
        PhaseTriple ph;
        ph.t = t;
        ph.psi = psi;
        ph.quadrature_error = err;
        rotate_phases(omega, t, ic, is, ph.phi1, ph.phi2);
        out[j] = ph;
    }
    return out;
}

ScenarioOps make_ops(FloquetScenario scenario) {
    scenario.validate();
    ScenarioOps ops;
    ops.x_diag = grid::position_diag(scenario.basis);
    ops.p_diag = grid::momentum_diag(scenario.basis);
    ops.h_eig = linalg::herm_eig(grid::hamiltonian_op(scenario.basis), 0.0);
    if (scenario.has_potential()) {
        const int n = scenario.basis.n_points;
        ops.v_diag.resize(n);
        for (int k = 0; k < n; ++k) {
            const double v = scenario.potential(scenario.basis.point(k));
            if (!std::isfinite(v)) throw NonFinite("scenario potential not finite on the grid");
            ops.v_diag[k] = v;
        }
    }
    ops.scenario = std::move(scenario);
    return ops;
}

namespace {

void scale_rows_phase(Matrix& x, const RealVector& angle) {
    const int n = int(x.rows());
    Vector factors(n);
    for (int k = 0; k < n; ++k) factors[k] = std::polar(1.0, angle[k]);
    x.array().colwise() *= factors.array();
}

// X <- exp(-i H t) X (or the adjoint) through the cached oscillator eigenpairs.
void apply_oscillator(const ScenarioOps& ops, double t, Matrix& x, bool adjoint) {
    const double sign = adjoint ? 1.0 : -1.0;
    Matrix rotated = ops.h_eig.vectors.adjoint() * x;
    const int n = int(rotated.rows());
    Vector factors(n);
    for (int j = 0; j < n; ++j) factors[j] = std::polar(1.0, sign * ops.h_eig.values[j] * t);
    rotated.array().colwise() *= factors.array();
    x.noalias() = ops.h_eig.vectors * rotated;
}

}  // namespace

void apply_free_segment(const ScenarioOps& ops, const PhaseTriple& ph, double duration, Matrix& x,
                        bool adjoint) {
    const double omega = ops.scenario.basis.omega;
    const int n = ops.dim();
    RealVector angle(n);
    if (!adjoint) {
        apply_oscillator(ops, duration, x, false);
        fft::forward_columns(x);
        for (int j = 0; j < n; ++j) angle[j] = ph.phi2 * ops.p_diag[j] / omega;
        scale_rows_phase(x, angle);
        fft::inverse_columns(x);
        for (int k = 0; k < n; ++k) angle[k] = -ph.phi1 * ops.x_diag[k];
        scale_rows_phase(x, angle);
        x *= std::polar(1.0, -ph.psi);
    } else {
        for (int k = 0; k < n; ++k) angle[k] = ph.phi1 * ops.x_diag[k];
        scale_rows_phase(x, angle);
        fft::forward_columns(x);
        for (int j = 0; j < n; ++j) angle[j] = -ph.phi2 * ops.p_diag[j] / omega;
        scale_rows_phase(x, angle);
        fft::inverse_columns(x);
        apply_oscillator(ops, duration, x, true);
        x *= std::polar(1.0, ph.psi);
    }
}

Matrix free_propagator(const ScenarioOps& ops, double t) {
    if (t < 0.0) throw ValidationError("free_propagator: t must be nonnegative");
    const PhaseTriple ph = segment_phases(ops.scenario.field, ops.scenario.basis.omega, 0.0, t,
                                          ops.scenario.quad_tol);
    // exp(-iHt) applied to the identity collapses to one dense product.
    Matrix u = linalg::expm_skew(ops.h_eig, -t);
    const int n = ops.dim();
    RealVector angle(n);
    fft::forward_columns(u);
    for (int j = 0; j < n; ++j) angle[j] = ph.phi2 * ops.p_diag[j] / ops.scenario.basis.omega;
    scale_rows_phase(u, angle);
    fft::inverse_columns(u);
    for (int k = 0; k < n; ++k) angle[k] = -ph.phi1 * ops.x_diag[k];
    scale_rows_phase(u, angle);
    u *= std::polar(1.0, -ph.psi);
    return u;
}

Matrix free_propagator(const FloquetScenario& scenario, double t) {
    return free_propagator(make_ops(scenario), t);
}

double heisenberg_residual(const ScenarioOps& ops, MatrixRef window, double t, char which) {
    if (which != 'x' && which != 'p')
        throw ValidationError("heisenberg_residual: observable must be 'x' or 'p'");
    const double omega = ops.scenario.basis.omega;
    const PhaseTriple ph = phase_functions(ops.scenario.field, omega, t, ops.scenario.quad_tol);
    const Matrix u = free_propagator(ops, t);

    const Matrix x = grid::position_op(ops.scenario.basis);
    const Matrix p = grid::momentum_op(ops.scenario.basis);
    const int n = ops.dim();
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    Matrix observable, expected;
    if (which == 'p') {
        observable = p;
        expected = -omega * s * x + c * p - ph.phi1 * Matrix::Identity(n, n);
    } else {
        observable = x;
        expected = c * x + (s / omega) * p - (ph.phi2 / omega) * Matrix::Identity(n, n);
    }
    const Matrix evolved = u.adjoint() * observable * u;
    return grid::compressed_norm(evolved - expected, window);
}

namespace {

// One conjugated kick: X <- U0(t)^dag diag(exp(-i dt V)) U0(t) X, which equals
// exp(-i dt W(t)) X for W(t) = U0(t)^dag V U0(t).
void apply_kick(const ScenarioOps& ops, const PhaseTriple& ph, double t, double dt, Matrix& x) {
    apply_free_segment(ops, ph, t, x, false);
    const int n = ops.dim();
    RealVector angle(n);
    for (int k = 0; k < n; ++k) angle[k] = -dt * ops.v_diag[k];
    scale_rows_phase(x, angle);
    apply_free_segment(ops, ph, t, x, true);
}

}  // namespace

void perturbed_evolution(const ScenarioOps& ops, int steps,
                         const std::function<void(int, const Matrix&)>& at_node) {
    if (!ops.scenario.has_potential()) throw NoPotential("perturbed evolution needs a potential");
    if (steps < 16) throw ValidationError("perturbed evolution: need at least 16 steps");
    const double period = ops.period();
    const double dt = period / steps;
    const double omega = ops.scenario.basis.omega;
    const int n = ops.dim();

    std::vector<double> times(2 * steps);
    for (int k = 0; k < steps; ++k) {
        times[2 * k] = (k + 0.5) * dt;
        times[2 * k + 1] = (k + 1.0) * dt;
    }
    const auto phases = phase_grid(ops.scenario.field, omega, times, ops.scenario.quad_tol);

    Matrix omega_t = Matrix::Identity(n, n);
    at_node(0, omega_t);  // U(0) = I
    Matrix u_node(n, n);
    for (int k = 0; k < steps; ++k) {
        apply_kick(ops, phases[2 * k], times[2 * k], dt, omega_t);
        u_node = omega_t;
        apply_free_segment(ops, phases[2 * k + 1], times[2 * k + 1], u_node, false);
        at_node(k + 1, u_node);
    }
}

PerturbedResult perturbed_floquet(const ScenarioOps& ops) {
    if (!ops.scenario.has_potential()) throw NoPotential("perturbed_floquet needs a potential");
    const int steps = ops.scenario.time_steps;
    const double period = ops.period();
    const double dt = period / steps;
    const double omega = ops.scenario.basis.omega;
    const int n = ops.dim();

    std::vector<double> times(steps + 1);
    for (int k = 0; k < steps; ++k) times[k] = (k + 0.5) * dt;
    times[steps] = period;
    const auto phases = phase_grid(ops.scenario.field, omega, times, ops.scenario.quad_tol);

    PerturbedResult out;
    out.omega_T = Matrix::Identity(n, n);
    for (int k = 0; k < steps; ++k) apply_kick(ops, phases[k], times[k], dt, out.omega_T);
    out.u_T = out.omega_T;
    apply_free_segment(ops, phases[steps], period, out.u_T, false);
    return out;
}

namespace {

// Dense W(t) = U0(t)^dag diag(V) U0(t) with the free factor built from
// precomputed phases.
Matrix conjugated_potential(const ScenarioOps& ops, const PhaseTriple& ph, double t) {
    const int n = ops.dim();
    Matrix u = Matrix::Identity(n, n);
    apply_free_segment(ops, ph, t, u, false);
    return u.adjoint() * ops.v_diag.cast<Complex>().asDiagonal() * u;
}

}  // namespace

Matrix dyson_series(const ScenarioOps& ops, int order) {
    if (order < 0) throw ValidationError("dyson_series: order must be nonnegative");
    const int n = ops.dim();
    if (order == 0 || !ops.scenario.has_potential()) return Matrix::Identity(n, n);

    int steps = ops.scenario.time_steps;
    if (steps % 2 != 0) ++steps;
    const double period = ops.period();
    const double h = period / steps;
    const Matrix identity = Matrix::Identity(n, n);
    const Complex minus_i(0.0, -1.0);

    std::vector<double> times(steps + 1);
    for (int j = 0; j <= steps; ++j) times[j] = j * h;
    const auto phases =
        phase_grid(ops.scenario.field, ops.scenario.basis.omega, times, ops.scenario.quad_tol);

    // Streaming cumulative Simpson over node pairs (2k, 2k+1, 2k+2). For each
    // order r we carry: the cumulative value at the last even node, the
    // integrand -i W Omega^(r-1) at that node, and Omega^(r) at the frontier
    // odd/even nodes for the next order's integrand.
    std::vector<Matrix> base(order + 1), f_even(order + 1);
    std::vector<Matrix> s_odd(order + 1), s_even(order + 1);
    {
        const Matrix w0 = conjugated_potential(ops, phases[0], 0.0);
        for (int r = 1; r <= order; ++r) {
            base[r] = Matrix::Zero(n, n);
            f_even[r] = r == 1 ? Matrix(minus_i * w0) : Matrix::Zero(n, n);
        }
        s_odd[0] = identity;
        s_even[0] = identity;
    }

    for (int pair = 0; pair < steps / 2; ++pair) {
        const double t_odd = (2 * pair + 1) * h;
        const double t_even = (2 * pair + 2) * h;
        const Matrix w_odd = conjugated_potential(ops, phases[2 * pair + 1], t_odd);
        const Matrix w_even = conjugated_potential(ops, phases[2 * pair + 2], t_even);

        std::vector<Matrix> next_odd(order + 1), next_even(order + 1);
        next_odd[0] = identity;
        next_even[0] = identity;
        for (int r = 1; r <= order; ++r) {
            const Matrix f0 = f_even[r];
            const Matrix f1 = minus_i * (w_odd * next_odd[r - 1]);
            const Matrix f2 = minus_i * (w_even * next_even[r - 1]);
            next_odd[r] = base[r] + (h / 12.0) * (5.0 * f0 + 8.0 * f1 - f2);
            next_even[r] = base[r] + (h / 3.0) * (f0 + 4.0 * f1 + f2);
            base[r] = next_even[r];
            f_even[r] = f2;
        }
        s_odd = std::move(next_odd);
        s_even = std::move(next_even);
    }

    Matrix sum = identity;
    for (int r = 1; r <= order; ++r) sum += s_even[r];
    return sum;
}

}  // namespace floqlab::prop
