#include "floqlab/commutator.hpp"

#include <cmath>

#include "floqlab/errors.hpp"
#include "floqlab/linalg.hpp"
#include "floqlab/quad.hpp"

namespace floqlab::commutator {

Matrix ad_k(MatrixRef a, MatrixRef b, int k) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw DimensionMismatch("ad_k: operands must be square and same size");
    if (k < 0) throw ValidationError("ad_k: order must be nonnegative");
    Matrix out = b;
    for (int i = 0; i < k; ++i) out = a * out - out * a;
    return out;
}

CommutatorBt commutator_BT(const prop::ScenarioOps& ops, MatrixRef window) {
    return commutator_BT(ops, window, ops.scenario.time_steps);
}

CommutatorBt commutator_BT(const prop::ScenarioOps& ops, MatrixRef window, int steps) {
    if (steps % 2 != 0) ++steps;
    const auto& basis = ops.scenario.basis;
    const double omega = basis.omega;
    const double period = ops.period();
    const double h = period / steps;
    const int n = ops.dim();

    const RealVector dv = grid::derivative_samples(basis, ops.scenario.potential);
    const Matrix p = grid::momentum_op(basis);

    CommutatorBt out;
    Matrix weighted_sum = Matrix::Zero(n, n);
    Matrix u_final;
    if (!ops.scenario.has_potential()) {
        // Free limit: the integrand vanishes and the one-period operator is
        // the explicit propagator.
        u_final = prop::free_propagator(ops, period);
    } else {
        prop::perturbed_evolution(ops, steps, [&](int k, const Matrix& u) {
            const double t = k * h;
            double w = (k == 0 || k == steps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            w *= h / 3.0;
            const Matrix du = dv.cast<Complex>().asDiagonal() * u;
            weighted_sum.noalias() += (w * std::cos(omega * t)) * (u.adjoint() * du);
            if (k == steps) u_final = u;
        });
    }

    const prop::PhaseTriple ph =
        prop::phase_functions(ops.scenario.field, omega, period, ops.scenario.quad_tol);
    out.direct = u_final.adjoint() * p * u_final - p;
    out.integral = -ph.phi1 * Matrix::Identity(n, n) - weighted_sum;
    out.interior_gap = grid::compressed_norm(out.direct - out.integral, window);
    return out;
}

grid::FuncSpec mollify(const grid::GridBasis& basis, const grid::FuncSpec& v, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw ValidationError("mollify: epsilon must lie in (0, 1]");
    const auto [nodes, weights] = quad::gauss_hermite(48);
    const int n = basis.n_points;
    std::vector<double> samples(n);
    const double norm = 1.0 / std::sqrt(pi);  // GH weight is exp(-u^2); kernel mass is 1
    for (int k = 0; k < n; ++k) {
        const double x = basis.point(k);
        double acc = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * v(x - 2.0 * epsilon * nodes[i]);
        const double value = norm * acc;
        if (!std::isfinite(value)) throw QuadratureFailure("mollify: non-finite sample");
        samples[k] = value;
    }
    return grid::FuncSpec::tabulated(-basis.half_width, basis.spacing(), std::move(samples));
}

namespace {

// Spatial L1 norm of the centered second difference; the tabulated descriptor
// interpolates linearly between grid points for the off-grid shifts.
double second_difference_l1(const grid::GridBasis& basis, const grid::FuncSpec& v, double t) {
    double acc = 0.0;
    for (int k = 0; k < basis.n_points; ++k) {
        const double x = basis.point(k);
        acc += std::abs(v(x - t) + v(x + t) - 2.0 * v(x));
    }
    return acc * basis.spacing();
}

double c11_sum(const grid::GridBasis& basis, const grid::FuncSpec& v, double t_min, int& nodes) {
    // 40 log-spaced nodes per decade between t_min and 1, trapezoid in log t:
    // int g/t^2 dt = int (g(t)/t) d(log t).
    const int per_decade = 40;
    const double decades = std::log10(1.0 / t_min);
    nodes = std::max(2, int(std::ceil(per_decade * decades)) + 1);
    const double step = std::log(1.0 / t_min) / (nodes - 1);
    double sum = 0.0;
    double prev_val = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double t = t_min * std::exp(step * i);
        const double integrand = second_difference_l1(basis, v, t) / t;
        if (i > 0) sum += 0.5 * (integrand + prev_val) * step;
        prev_val = integrand;
    }
    return sum;
}

}  // namespace

RegularitySeminorm c11_seminorm(const grid::GridBasis& basis, const grid::FuncSpec& v,
                                double t_min) {
    if (!(t_min > 0.0) || t_min > 0.1)
        throw ValidationError("c11_seminorm: t_min must lie in (0, 0.1]");
    RegularitySeminorm out;
    out.t_min = t_min;
    out.value = c11_sum(basis, v, t_min, out.t_nodes);
    int refined_nodes = 0;
    const double refined = c11_sum(basis, v, 0.5 * t_min, refined_nodes);
    const double scale = std::max({std::abs(out.value), std::abs(refined), 1e-300});
    out.converged = std::abs(refined - out.value) <= 0.05 * scale;
    if (!out.converged && std::abs(refined) > 1e-12)
        throw NotConverged("c11_seminorm: halving t_min moved the value by more than 5%");
    return out;
}

BchReport bch_check(MatrixRef a, MatrixRef b, int terms) {
    if (terms < 1) throw ValidationError("bch_check: need at least one term");
    const int n = int(a.rows());
    const Matrix exp_b = linalg::expm_general(b);
    const Matrix exp_mb = linalg::expm_general(-b);
    const Matrix lhs = exp_mb * a * exp_b - a;

    const Matrix ad_ab = ad_k(a, b, 1);
    Matrix term = ad_ab;  // ad_B^{k-1}(ad_A B) at k = 1
    Matrix series = Matrix::Zero(n, n);
    double factorial = 1.0;
    for (int k = 1; k <= terms; ++k) {
        factorial *= k;
        series += ((k % 2 == 1 ? 1.0 : -1.0) / factorial) * term;
        if (k < terms) term = b * term - term * b;
    }

    BchReport out;
    out.series_gap = linalg::op_norm(lhs - series);
    const double bound = std::exp(linalg::op_norm(b)) * linalg::op_norm(ad_ab);
    const Matrix exp_ib = linalg::expm_general(Complex(0, 1) * b);
    out.margin_exp_commutator = bound - linalg::op_norm(a * exp_ib - exp_ib * a);
    out.margin_conjugation = bound - linalg::op_norm(lhs);
    return out;
}

PowerGrowth power_growth(MatrixRef a, MatrixRef u, int j, int m_max) {
    if (j < 0 || j > 3) throw ValidationError("power_growth: j must lie in 0..3");
    if (m_max < 1 || m_max > 64) throw ValidationError("power_growth: m_max must lie in 1..64");
    PowerGrowth out;
    double csq = 0.0;
    for (int i = 0; i <= j; ++i) {
        const double norm_i = linalg::op_norm(ad_k(a, u, i));
        csq += norm_i * norm_i;
    }
    const double c = std::sqrt(csq);
    const int n = int(u.rows());
    Matrix power = Matrix::Identity(n, n);
    for (int m = 1; m <= m_max; ++m) {
        power = power * u;
        const double measured = linalg::op_norm(ad_k(a, power, j));
        const double bound = std::pow(c, j) * std::pow(double(m), j);
        out.measured.push_back(measured);
        out.bound.push_back(bound);
        if (m >= j && measured > bound + 1e-9) out.violated = true;
    }
    return out;
}

FourierCalculus fourier_calculus(MatrixRef u, const std::vector<std::pair<int, Complex>>& coeffs,
                                 MatrixRef a, int j) {
    if (j < 0 || j > 2) throw ValidationError("fourier_calculus: j must lie in 0..2");
    const int n = int(u.rows());
    FourierCalculus out;
    out.phi_u = Matrix::Zero(n, n);
    out.adj_commuted = Matrix::Zero(n, n);
    const Matrix u_fwd = u;
    const Matrix u_inv = u.adjoint();
    for (const auto& [m, c] : coeffs) {
        Matrix power = Matrix::Identity(n, n);
        const Matrix& factor = m >= 0 ? u_fwd : u_inv;
        for (int i = 0; i < std::abs(m); ++i) power = power * factor;
        out.phi_u += c * power;
        out.adj_commuted += c * ad_k(a, power, j);
    }
    out.gap = linalg::op_norm(ad_k(a, out.phi_u, j) - out.adj_commuted);
    return out;
}

}  // namespace floqlab::commutator
