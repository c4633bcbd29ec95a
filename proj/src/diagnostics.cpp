#include "floqlab/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "floqlab/errors.hpp"

namespace floqlab::diagnostics {

Vector k_vector(MatrixRef a, VectorRef phi, double epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("k_vector: epsilon must be positive");
    const int n = int(a.rows());
    const Matrix lhs = Matrix::Identity(n, n) + Complex(0, epsilon) * a;
    Eigen::PartialPivLU<Matrix> lu(lhs);
    const Vector x = lu.solve(phi);
    if (!x.allFinite()) throw SolveFailure("k_vector: solve produced non-finite values");
    return x;
}

BoundaryTrace boundary_trace(MatrixRef u, VectorRef phi, VectorRef psi,
                             const std::vector<double>& theta_grid,
                             const std::vector<double>& r_sequence) {
    for (double r : r_sequence)
        if (!(r > 0.0 && r < 1.0))
            throw ValidationError("boundary_trace: radii must lie in (0, 1)");
    const int n = int(u.rows());
    const int nt = int(theta_grid.size()), nr = int(r_sequence.size());
    BoundaryTrace out;
    out.theta_grid = theta_grid;
    out.r_sequence = r_sequence;
    out.values_inside.resize(nt, nr);
    out.values_outside.resize(nt, nr);

    const Matrix u_dag = u.adjoint();
    for (int it = 0; it < nt; ++it) {
        for (int ir = 0; ir < nr; ++ir) {
            const Complex z = std::polar(r_sequence[ir], theta_grid[it]);
            bool ok = true;
            for (int branch = 0; branch < 2; ++branch) {
                const Complex coeff = branch == 0 ? z : 1.0 / std::conj(z);
                const Matrix lhs = Matrix::Identity(n, n) - coeff * u_dag;
                Eigen::PartialPivLU<Matrix> lu(lhs);
                const Vector x = lu.solve(psi);
                if (!x.allFinite()) {
                    ok = false;
                    break;
                }
                const Complex value = phi.dot(x);
                (branch == 0 ? out.values_inside : out.values_outside)(it, ir) = value;
            }
            if (!ok) {
                out.failures.push_back({it, ir});
                out.values_inside(it, ir) = std::numeric_limits<double>::quiet_NaN();
                out.values_outside(it, ir) = std::numeric_limits<double>::quiet_NaN();
            }
        }
    }
    if (nr > 1) {
        out.cauchy_gaps_inside.resize(nt, nr - 1);
        out.cauchy_gaps_outside.resize(nt, nr - 1);
        for (int it = 0; it < nt; ++it)
            for (int ir = 0; ir + 1 < nr; ++ir) {
                out.cauchy_gaps_inside(it, ir) =
                    std::abs(out.values_inside(it, ir + 1) - out.values_inside(it, ir));
                out.cauchy_gaps_outside(it, ir) =
                    std::abs(out.values_outside(it, ir + 1) - out.values_outside(it, ir));
            }
    }
    return out;
}

RealVector poisson_density(MatrixRef u, VectorRef phi, const std::vector<double>& theta_grid,
                           double r) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("poisson_density: r must lie in (0, 1)");
    const int n = int(u.rows());
    const Matrix u_dag = u.adjoint();
    RealVector density(int(theta_grid.size()));
    for (size_t it = 0; it < theta_grid.size(); ++it) {
        const Complex z = std::polar(r, theta_grid[it]);
        const Matrix inside = Matrix::Identity(n, n) - z * u_dag;
        const Matrix outside = Matrix::Identity(n, n) - (1.0 / std::conj(z)) * u_dag;
        const Vector xi = Eigen::PartialPivLU<Matrix>(inside).solve(phi);
        const Vector xo = Eigen::PartialPivLU<Matrix>(outside).solve(phi);
        const Complex value = phi.dot(xi) - phi.dot(xo);
        if (std::abs(value.imag()) > 1e-10 * (1.0 + std::abs(value.real())))
            throw SolveFailure("poisson_density: density came out non-real");
        density[int(it)] = value.real() / (2.0 * pi);
    }
    return density;
}

RealVector poisson_density(const linalg::SpectralDecomposition& dec, VectorRef phi,
                           const std::vector<double>& theta_grid, double r) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("poisson_density: r must lie in (0, 1)");
    const int n = dec.dim();
    RealVector weights(n);
    for (int j = 0; j < n; ++j) weights[j] = std::norm(dec.vectors.col(j).dot(phi));
    RealVector density(int(theta_grid.size()));
    for (size_t it = 0; it < theta_grid.size(); ++it) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double beta = theta_grid[it] - dec.phases[j];
            const double kernel =
                (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(beta) + r * r);
            acc += weights[j] * kernel;
        }
        density[int(it)] = acc / (2.0 * pi);
    }
    return density;
}

namespace {

double dyadic_sup(const linalg::SpectralDecomposition& dec, const Matrix& op,
                  const std::vector<Vector>& samples, const std::vector<mourre::Arc>& arcs,
                  bool project_after) {
    // C3: ||op E(arc) psi||^2/len;  C4 (project_after): ||E(arc) op psi||^2/len.
    double sup = 0.0;
    for (const auto& arc : arcs) {
        const auto sel = mourre::select_arc(dec, arc);
        if (sel.indices.empty()) continue;
        Matrix basis(dec.vectors.rows(), int(sel.indices.size()));
        for (size_t c = 0; c < sel.indices.size(); ++c)
            basis.col(int(c)) = dec.vectors.col(sel.indices[c]);
        const double len = arc.length();
        for (const auto& psi : samples) {
            double norm2 = 0.0;
            if (!project_after) {
                const Vector projected = basis * (basis.adjoint() * psi);
                norm2 = (op * projected).squaredNorm();
            } else {
                norm2 = (basis.adjoint() * (op * psi)).squaredNorm();
            }
            sup = std::max(sup, norm2 / len);
        }
    }
    return sup;
}

}  // namespace

SmoothnessReport usmooth_constants(MatrixRef u, MatrixRef b, const std::vector<Vector>& samples,
                                   int n_max, const std::vector<Complex>& z_grid) {
    if (n_max < 16) throw ValidationError("usmooth_constants: n_max must be at least 16");
    if (samples.empty()) throw ValidationError("usmooth_constants: need at least one sample");
    const int n = int(u.rows());
    SmoothnessReport report;
    report.n_max = n_max;
    report.z_points = int(z_grid.size());

    // C1 by forward/backward orbit sums; the tail of the partial sums decides
    // the growth flag.
    const Matrix u_dag = u.adjoint();
    double c1 = 0.0;
    for (const auto& psi : samples) {
        Vector fwd = psi, bwd = psi;
        double sum = (b * psi).squaredNorm();
        double tail = 0.0;
        const int tail_start = (3 * n_max) / 4;
        for (int k = 1; k <= n_max; ++k) {
            fwd = u * fwd;
            bwd = u_dag * bwd;
            const double inc = (b * fwd).squaredNorm() + (b * bwd).squaredNorm();
            sum += inc;
            if (k > tail_start) tail += inc;
        }
        c1 = std::max(c1, sum / (2.0 * pi));
        // A summable orbit has a vanishing tail; a constant-rate orbit keeps
        // adding its share.
        if (tail > 0.25 * sum * (double(n_max - tail_start) / n_max) * 2.0)
            report.c1_diverging = true;
    }
    report.c1 = c1;

    // C2 and C5 on the z grid.
    for (const Complex& z : z_grid) {
        const Matrix lhs = Matrix::Identity(n, n) - z * u_dag;
        Eigen::PartialPivLU<Matrix> lu(lhs);
        for (const auto& psi : samples) {
            const Vector bpsi = b.adjoint() * psi;
            const Vector x = lu.solve(bpsi);
            report.c5 = std::max(report.c5,
                                 (1.0 - std::norm(z)) * x.squaredNorm() / (2.0 * pi));
            // Re((1+zU^dag)(1-zU^dag)^{-1}) acting on bpsi: y + z U^dag y with
            // y the resolvent image.
            const Vector cayley = x + z * (u_dag * x);
            report.c2 = std::max(report.c2, std::abs(std::real(bpsi.dot(cayley))) / (2.0 * pi));
        }
    }

    // C3 and C4 over the dyadic arc family.
    const auto dec = linalg::unitary_eig(u, 1e-7, 1e-8);
    const int k_max = std::max(2, int(std::floor(std::log2(double(n)))) - 1);
    const auto arcs = dyadic_arcs(2, k_max);
    report.c3 = dyadic_sup(dec, b, samples, arcs, false);
    report.c4 = dyadic_sup(dec, Matrix(b.adjoint()), samples, arcs, true);

    const double values[4] = {report.c1, report.c3, report.c4, report.c5};
    double spread = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double scale = std::max({values[i], values[j], 1e-300});
            spread = std::max(spread, std::abs(values[i] - values[j]) / scale);
        }
    report.agreement_spread = spread;
    return report;
}

ReturnProbability return_probability(MatrixRef u, VectorRef psi, int m) {
    if (m < 1 || m > 4096) throw ValidationError("return_probability: m must lie in 1..4096");
    ReturnProbability out;
    out.a.resize(m);
    Vector state = psi;
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) {
        state = u * state;
        const double overlap = std::norm(psi.dot(state));
        out.a[k - 1] = overlap;
        sum += overlap;
    }
    out.cesaro = sum / m;
    return out;
}

std::vector<mourre::Arc> dyadic_arcs(int k_min, int k_max, int offsets_per_length) {
    std::vector<mourre::Arc> arcs;
    for (int k = k_min; k <= k_max; ++k) {
        const double len = 2.0 * pi / std::pow(2.0, k);
        for (int o = 0; o < offsets_per_length; ++o) {
            const double lo = -pi + 2.0 * pi * o / offsets_per_length;
            arcs.push_back(mourre::Arc::between(lo, lo + len));
        }
    }
    return arcs;
}

}  // namespace floqlab::diagnostics
