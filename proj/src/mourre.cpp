#include "floqlab/mourre.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "floqlab/commutator.hpp"
#include "floqlab/errors.hpp"

namespace floqlab::mourre {

Arc Arc::between(double lo_raw, double hi_raw) {
    Arc arc;
    arc.lo = linalg::wrap_angle(lo_raw);
    arc.hi = linalg::wrap_angle(hi_raw);
    arc.wraps = arc.lo > arc.hi;
    return arc;
}

bool Arc::contains(double theta) const {
    const double t = linalg::wrap_angle(theta);
    if (!wraps) return t >= lo && t <= hi;
    return t >= lo || t <= hi;
}

double Arc::length() const {
    const double raw = wraps ? (pi - lo) + (hi + pi) : hi - lo;
    return raw;
}

double Arc::endpoint_distance(double theta) const {
    return std::min(linalg::circle_distance(theta, lo), linalg::circle_distance(theta, hi));
}

ArcSelection select_arc(const linalg::SpectralDecomposition& dec, const Arc& arc) {
    ArcSelection sel;
    const bool full_circle = arc.length() >= 2.0 * pi - 1e-15;
    for (int j = 0; j < dec.dim(); ++j) {
        if (full_circle || arc.contains(dec.phases[j])) sel.indices.push_back(j);
        if (!full_circle && arc.endpoint_distance(dec.phases[j]) <= dec.cluster_tol)
            sel.endpoint_warning = true;
    }
    return sel;
}

Matrix spectral_projector(const linalg::SpectralDecomposition& dec, const Arc& arc) {
    const int n = dec.dim();
    const ArcSelection sel = select_arc(dec, arc);
    Matrix proj = Matrix::Zero(n, n);
    for (int j : sel.indices) proj += dec.vectors.col(j) * dec.vectors.col(j).adjoint();
    return proj;
}

namespace {

// Orthonormal basis of span{ P v_j : j in members } where the columns passed
// in are already P v_j. Rank decided by column-pivoted QR.
Matrix orthonormal_span(const Matrix& cols) {
    if (cols.cols() == 0) return cols;
    Eigen::ColPivHouseholderQR<Matrix> qr(cols);
    qr.setThreshold(1e-8);
    const int rank = int(qr.rank());
    Matrix q = qr.householderQ() * Matrix::Identity(cols.rows(), rank);
    return q;
}

}  // namespace

MourreReport mourre_report(MatrixRef u, MatrixRef a, const Arc& arc) {
    const auto dec = linalg::unitary_eig(u);
    return mourre_report(dec, u, a, arc, nullptr);
}

MourreReport mourre_report(MatrixRef u, MatrixRef a, const Arc& arc, MatrixRef interior_window,
                           double weight_min) {
    const auto dec = linalg::unitary_eig(u);
    const Matrix window = interior_window;
    return mourre_report(dec, u, a, arc, &window, weight_min);
}

MourreReport mourre_report(const linalg::SpectralDecomposition& dec, MatrixRef u, MatrixRef a,
                           const Arc& arc, const Matrix* interior_window, double weight_min) {
    MourreReport report;
    report.arc = arc;
    const ArcSelection sel = select_arc(dec, arc);
    report.endpoint_warning = sel.endpoint_warning;
    if (sel.indices.empty()) throw EmptyArc("mourre_report: no spectrum on the arc");

    Matrix basis;
    if (interior_window != nullptr) {
        const Matrix& q = *interior_window;
        std::vector<int> kept;
        for (int j : sel.indices) {
            const double weight = (q.adjoint() * dec.vectors.col(j)).squaredNorm();
            if (weight >= weight_min) kept.push_back(j);
        }
        if (kept.empty()) throw EmptyArc("mourre_report: no interior spectral vectors on the arc");
        Matrix projected(q.rows(), int(kept.size()));
        for (size_t c = 0; c < kept.size(); ++c)
            projected.col(int(c)) = q * (q.adjoint() * dec.vectors.col(kept[c]));
        basis = orthonormal_span(projected);
    } else {
        basis.resize(dec.vectors.rows(), int(sel.indices.size()));
        for (size_t c = 0; c < sel.indices.size(); ++c)
            basis.col(int(c)) = dec.vectors.col(sel.indices[c]);
    }

    const Matrix commutator_op = u.adjoint() * a * u - a;
    Matrix compressed = basis.adjoint() * commutator_op * basis;
    compressed = 0.5 * (compressed + compressed.adjoint().eval());
    const auto eig = linalg::herm_eig(compressed, 0.0);

    report.dim_range = int(eig.values.size());
    report.compressed_spectrum = eig.values;
    report.strict_c = eig.values[0];

    const int k_cap = std::min(report.dim_range - 1,
                               std::max(1, int(std::ceil(0.05 * report.dim_range))));
    for (int k = 0; k <= k_cap; ++k) report.rank_k_constants.push_back({k, eig.values[k]});

    const double threshold = eig.values[k_cap];
    std::vector<double> svals;
    for (int i = 0; i < k_cap; ++i)
        if (eig.values[i] < threshold) svals.push_back(threshold - eig.values[i]);
    std::sort(svals.begin(), svals.end(), std::greater<double>());
    report.remainder_svals.resize(int(svals.size()));
    for (size_t i = 0; i < svals.size(); ++i) report.remainder_svals[int(i)] = svals[i];
    return report;
}

VirialResidual virial_residual(MatrixRef u, MatrixRef a, const linalg::SpectralDecomposition& dec,
                               int cluster_index) {
    if (cluster_index < 0 || cluster_index >= int(dec.clusters.size()))
        throw ValidationError("virial_residual: cluster index out of range");
    const auto& cluster = dec.clusters[cluster_index];
    for (int j : cluster) {
        const Complex eig = std::polar(1.0, dec.phases[j]);
        if ((u * dec.vectors.col(j) - eig * dec.vectors.col(j)).norm() > 10.0 * dec.residual_tol)
            throw NotAnEigenvalue("virial_residual: cluster member fails the eigen residual");
    }
    Matrix basis(dec.vectors.rows(), int(cluster.size()));
    for (size_t c = 0; c < cluster.size(); ++c) basis.col(int(c)) = dec.vectors.col(cluster[c]);

    const Matrix commutator_op = u.adjoint() * a * u - a;
    VirialResidual out;
    out.value = linalg::op_norm(Matrix(basis.adjoint() * commutator_op * basis));
    for (size_t c = 0; c < cluster.size(); ++c) {
        const Vector v = basis.col(int(c));
        out.scalars.push_back(std::abs(v.dot(commutator_op * v)));
    }
    out.scalar_max = *std::max_element(out.scalars.begin(), out.scalars.end());
    return out;
}

EigenCount eigen_count(const linalg::SpectralDecomposition& dec, const Arc& arc,
                       const grid::InteriorWeight& weight, double weight_min) {
    const Matrix q = grid::interior_basis(weight);
    EigenCount out;
    for (const auto& cluster : dec.clusters) {
        bool inside = true;
        for (int j : cluster) {
            if (!arc.contains(dec.phases[j]) ||
                (q.adjoint() * dec.vectors.col(j)).squaredNorm() < weight_min) {
                inside = false;
                break;
            }
        }
        if (inside) {
            ++out.count;
            out.multiplicities.push_back(int(cluster.size()));
        }
    }
    return out;
}

PerturbationCriteria theorem_a_criteria(const prop::ScenarioOps& ops) {
    const auto& basis = ops.scenario.basis;
    PerturbationCriteria out;

    const auto seminorm = commutator::c11_seminorm(basis, ops.scenario.potential);
    out.c11_value = seminorm.value;
    out.c11_converged = seminorm.converged;

    const RealVector dv = grid::derivative_samples(basis, ops.scenario.potential);
    out.sup_dv = dv.cwiseAbs().maxCoeff();
    double tail_max = 0.0;
    for (int k = 0; k < basis.n_points; ++k)
        if (std::abs(basis.point(k)) >= 0.9 * basis.half_width)
            tail_max = std::max(tail_max, std::abs(dv[k]));
    out.vanishing_derivative = tail_max <= std::max(1e-10, 1e-6 * out.sup_dv);

    const double period = ops.period();
    const auto ph =
        prop::phase_functions(ops.scenario.field, basis.omega, period, ops.scenario.quad_tol);
    out.strict_bound_1 = period * out.sup_dv - std::abs(ph.phi1);
    out.strict_bound_2 = 2.0 * pi * out.sup_dv - std::abs(ph.phi2);
    return out;
}

namespace {

Matrix hermitian_exp(const Matrix& h, double s) {
    const auto eig = linalg::herm_eig(h, 0.0);
    const int n = int(eig.values.size());
    RealVector scale(n);
    for (int j = 0; j < n; ++j) scale[j] = std::exp(s * eig.values[j]);
    return eig.vectors * scale.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix floquet_operator(const prop::ScenarioOps& ops) {
    if (ops.scenario.has_potential()) return prop::perturbed_floquet(ops).u_T;
    return prop::free_propagator(ops, ops.period());
}

}  // namespace

std::vector<EpsFamily> build_regularized_family(const prop::ScenarioOps& ops, MatrixRef a,
                                                MatrixRef interior_window,
                                                const std::vector<double>& eps_grid) {
    const Matrix u = floquet_operator(ops);
    const Matrix projector = interior_window * interior_window.adjoint();

    std::vector<EpsFamily> out;
    for (double eps : eps_grid) {
        EpsFamily fam;
        fam.eps = eps;
        if (ops.scenario.has_potential()) {
            prop::FloquetScenario smoothed = ops.scenario;
            smoothed.potential =
                commutator::mollify(ops.scenario.basis, ops.scenario.potential, eps);
            fam.u_eps = prop::perturbed_floquet(prop::make_ops(smoothed)).u_T;
        } else {
            fam.u_eps = u;
        }
        const Matrix b_raw = a - fam.u_eps * a * fam.u_eps.adjoint();
        fam.b_eps = projector * (0.5 * (b_raw + b_raw.adjoint().eval())) * projector;
        fam.b_eps = 0.5 * (fam.b_eps + fam.b_eps.adjoint().eval());
        fam.exp_minus = hermitian_exp(fam.b_eps, -eps);
        fam.exp_plus = hermitian_exp(fam.b_eps, eps);
        fam.lem1_margin =
            linalg::op_norm(Matrix(fam.u_eps.adjoint() * fam.exp_minus - u.adjoint())) / eps;
        out.push_back(std::move(fam));
    }
    return out;
}

Matrix t_plus(const EpsFamily& fam, Complex z) {
    const int n = int(fam.u_eps.rows());
    return Matrix::Identity(n, n) - z * (fam.u_eps.adjoint() * fam.exp_minus);
}

Matrix t_minus(const EpsFamily& fam, Complex z) {
    const int n = int(fam.u_eps.rows());
    return Matrix::Identity(n, n) -
           (1.0 / std::conj(z)) * (fam.u_eps.adjoint() * fam.exp_plus.adjoint());
}

RegularizedFamilyReport regularized_family(const prop::ScenarioOps& ops, MatrixRef a,
                                           MatrixRef interior_window,
                                           const std::vector<double>& eps_grid,
                                           const std::vector<Complex>& z_grid) {
    RegularizedFamilyReport report;
    report.epsilon_grid = eps_grid;
    report.z_grid = z_grid;
    const int ne = int(eps_grid.size()), nz = int(z_grid.size());
    report.norms_plus.resize(ne, nz);
    report.norms_minus.resize(ne, nz);

    const auto family = build_regularized_family(ops, a, interior_window, eps_grid);
    for (const auto& fam : family) report.lem1_margins.push_back(fam.lem1_margin);

    for (int ie = 0; ie < ne; ++ie) {
        for (int iz = 0; iz < nz; ++iz) {
            const Complex z = z_grid[iz];
            double norms[2] = {0.0, 0.0};
            bool failed = false;
            for (int branch = 0; branch < 2; ++branch) {
                const Matrix t = branch == 0 ? t_plus(family[ie], z) : t_minus(family[ie], z);
                Eigen::PartialPivLU<Matrix> lu(t);
                const double rc = lu.rcond();
                report.rcond_min = std::min(report.rcond_min, rc);
                if (!(rc > 1e-15)) {
                    failed = true;
                    break;
                }
                const Matrix g = lu.inverse();
                if (!g.allFinite()) {
                    failed = true;
                    break;
                }
                norms[branch] = linalg::op_norm(g);
            }
            if (failed) {
                report.failures.push_back({ie, iz});
                report.norms_plus(ie, iz) = std::numeric_limits<double>::quiet_NaN();
                report.norms_minus(ie, iz) = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            report.norms_plus(ie, iz) = norms[0];
            report.norms_minus(ie, iz) = norms[1];
            const double both = std::max(norms[0], norms[1]);
            report.fitted_C_eps = std::max(report.fitted_C_eps, eps_grid[ie] * both);
            if (std::abs(z) < 1.0)
                report.fitted_C_z =
                    std::max(report.fitted_C_z, (1.0 - std::norm(z)) * both);
        }
    }
    return report;
}

std::vector<Complex> make_z_grid(const Arc& arc, int n_radii, int n_angles) {
    std::vector<Complex> grid;
    const double len = arc.length();
    for (int ir = 0; ir < n_radii; ++ir) {
        const double frac = n_radii == 1 ? 0.0 : double(ir) / (n_radii - 1);
        const double gap = 1e-1 * std::pow(1e-3, frac);  // 1e-1 down to 1e-4
        const double r = 1.0 - gap;
        for (int ia = 0; ia < n_angles; ++ia) {
            const double theta = arc.lo + len * (ia + 0.5) / n_angles;
            grid.push_back(std::polar(r, theta));
        }
    }
    return grid;
}

}  // namespace floqlab::mourre
