#include "floqlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "floqlab/errors.hpp"

namespace floqlab::linalg {

double wrap_angle(double theta) {
    theta = std::fmod(theta, 2.0 * pi);
    if (theta <= -pi) theta += 2.0 * pi;
    if (theta > pi) theta -= 2.0 * pi;
    return theta;
}

double circle_distance(double a, double b) {
    const double d = std::abs(wrap_angle(a - b));
    return d;
}

bool is_hermitian(MatrixRef m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= tol;
}

bool is_unitary(MatrixRef m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Matrix g = m.adjoint() * m;
    return (g - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

void require_finite(MatrixRef m, const char* who) {
    if (!m.allFinite()) throw NonFinite(std::string(who) + ": non-finite entries");
}

HermEig herm_eig(MatrixRef h, double tol) {
    if (h.rows() != h.cols()) throw DimensionMismatch("herm_eig: matrix not square");
    if (h.rows() > dimension_cap)
        throw DimensionMismatch("herm_eig: dimension exceeds cap " + std::to_string(dimension_cap));
    require_finite(h, "herm_eig");
    const double scale = h.norm();
    if (!is_hermitian(h, std::max(1e-12 * scale, 1e-300)))
        throw NotHermitian("herm_eig: input is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) throw NoConvergence("herm_eig: eigensolver did not converge");

    HermEig out{solver.eigenvalues(), solver.eigenvectors()};
    if (tol > 0.0 && scale > 0.0) {
        const double resid = (h * out.vectors - out.vectors * out.values.asDiagonal().toDenseMatrix().cast<Complex>()).norm();
        if (resid > tol * scale)
            throw NoConvergence("herm_eig: recomposition residual " + std::to_string(resid) +
                                " exceeds tolerance");
    }
    return out;
}

double SpectralDecomposition::max_residual(MatrixRef u) const {
    double worst = 0.0;
    for (int j = 0; j < dim(); ++j) {
        const Complex eig = std::polar(1.0, phases[j]);
        worst = std::max(worst, (u * vectors.col(j) - eig * vectors.col(j)).norm());
    }
    return worst;
}

namespace {

// Single-linkage clustering of sorted phases with a circular metric: consecutive
// phases within cluster_tol link up, and the +/-pi seam may merge the first and
// last cluster.
std::vector<std::vector<int>> cluster_phases(const RealVector& phases, double cluster_tol) {
    const int n = int(phases.size());
    std::vector<std::vector<int>> clusters;
    if (n == 0) return clusters;
    clusters.push_back({0});
    for (int j = 1; j < n; ++j) {
        if (phases[j] - phases[j - 1] <= cluster_tol)
            clusters.back().push_back(j);
        else
            clusters.push_back({j});
    }
    if (clusters.size() > 1) {
        const double seam_gap = (phases[0] + pi) + (pi - phases[n - 1]);
        if (seam_gap <= cluster_tol) {
            auto& first = clusters.front();
            auto& last = clusters.back();
            last.insert(last.end(), first.begin(), first.end());
            clusters.front() = std::move(last);
            clusters.pop_back();
        }
    }
    return clusters;
}

}  // namespace

SpectralDecomposition unitary_eig(MatrixRef u, double cluster_tol, double residual_tol) {
    if (u.rows() != u.cols()) throw DimensionMismatch("unitary_eig: matrix not square");
    const int n = int(u.rows());
    require_finite(u, "unitary_eig");
    if (!is_unitary(u, 1e-10 * std::sqrt(double(n)) * 10.0))
        throw NotUnitary("unitary_eig: input is not unitary");
    if (cluster_tol < 10.0 * residual_tol)
        throw DegenerateClustering("unitary_eig: cluster_tol below 10x residual_tol");

    const Matrix re = 0.5 * (u + u.adjoint());
    const Matrix im = Complex(0.0, -0.5) * (u - u.adjoint());

    HermEig base = herm_eig(re, 0.0);
    Matrix vectors = base.vectors;
    RealVector cosines = base.values;
    RealVector sines(n);

    // Degenerate Re(U) blocks (notably the +/-theta pairs sharing one cosine)
    // get resolved by diagonalizing the compressed Im(U) inside each block.
    const double block_tol = 1e-8 * std::max(1.0, cosines.cwiseAbs().maxCoeff());
    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && cosines[stop] - cosines[stop - 1] <= block_tol) ++stop;
        const int width = stop - start;
        if (width == 1) {
            const Vector v = vectors.col(start);
            sines[start] = std::real(v.dot(im * v));
        } else {
            const Matrix block_basis = vectors.middleCols(start, width);
            const Matrix im_block = block_basis.adjoint() * im * block_basis;
            HermEig sub = herm_eig(0.5 * (im_block + im_block.adjoint()), 0.0);
            vectors.middleCols(start, width) = block_basis * sub.vectors;
            for (int j = 0; j < width; ++j) sines[start + j] = sub.values[j];
        }
        start = stop;
    }

    SpectralDecomposition dec;
    dec.cluster_tol = cluster_tol;
    dec.residual_tol = residual_tol;
    dec.phases.resize(n);
    for (int j = 0; j < n; ++j) {
        double theta = std::atan2(sines[j], cosines[j]);
        if (theta <= -pi) theta = pi;  // keep the branch closed at +pi
        dec.phases[j] = theta;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dec.phases[a] < dec.phases[b]; });
    RealVector sorted_phases(n);
    Matrix sorted_vectors(n, n);
    for (int j = 0; j < n; ++j) {
        sorted_phases[j] = dec.phases[order[j]];
        sorted_vectors.col(j) = vectors.col(order[j]);
    }
    dec.phases = sorted_phases;
    dec.vectors = sorted_vectors;
    dec.clusters = cluster_phases(dec.phases, cluster_tol);
    return dec;
}

Matrix expm_skew(const HermEig& eig, double s) {
    const int n = int(eig.values.size());
    Vector phase(n);
    for (int j = 0; j < n; ++j) phase[j] = std::polar(1.0, s * eig.values[j]);
    return eig.vectors * phase.asDiagonal() * eig.vectors.adjoint();
}

Matrix expm_skew(MatrixRef h, double s) { return expm_skew(herm_eig(h, 0.0), s); }

Matrix expm_general(MatrixRef b) {
    if (b.rows() != b.cols()) throw DimensionMismatch("expm_general: matrix not square");
    const int n = int(b.rows());
    const double norm = b.cwiseAbs().rowwise().sum().maxCoeff();  // induced 1-norm of |B|
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    const Matrix a = b / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(n, n);
    Matrix sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (term * a) / double(k);
        sum += term;
        if (term.norm() <= 1e-18 * sum.norm()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

namespace {

// splitmix64: deterministic start vectors for the power iteration.
uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Vector seeded_start(int n, uint64_t seed) {
    uint64_t state = seed;
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        const double re = double(splitmix64(state) >> 11) * 0x1p-53 - 0.5;
        const double im = double(splitmix64(state) >> 11) * 0x1p-53 - 0.5;
        v[i] = Complex(re, im);
    }
    v /= v.norm();
    return v;
}

}  // namespace

double op_norm(MatrixRef b) {
    require_finite(b, "op_norm");
    const int n = int(b.cols());
    if (n == 0 || b.rows() == 0) return 0.0;
    const double fro = b.norm();
    if (fro == 0.0) return 0.0;

    // Power iteration on B^dag B. The Rayleigh quotient lambda = ||B v||^2
    // carries the a-posteriori certificate |lambda - lambda_max| <= ||r|| with
    // r = B^dag B v - lambda v, so acceptance is by verified residual, not by
    // stagnation of the estimate. A tight cluster at the top makes the
    // residual plateau; that triggers a restart and finally the dense route,
    // whose answer is exact to working precision.
    const int max_iters = std::max(500, 2 * n);
    for (int restart = 0; restart < 2; ++restart) {
        Vector v = seeded_start(n, 0x5eed0000ULL + 101 * restart);
        double plateau_ref = -1.0;
        int plateau_age = 0;
        for (int it = 0; it < max_iters; ++it) {
            const Vector w = b * v;
            const double lambda = w.squaredNorm();
            if (lambda <= 1e-280 * fro * fro) break;  // start vector fell into the kernel
            Vector next = b.adjoint() * w;
            const double resid = (next - lambda * v).norm();
            if (resid <= 5e-9 * lambda) {
                const double bound = lambda + resid;
                return std::sqrt(0.5 * (lambda + bound));
            }
            if (plateau_ref < 0.0 || resid < 0.98 * plateau_ref) {
                plateau_ref = resid;
                plateau_age = 0;
            } else if (++plateau_age >= 50) {
                break;  // stagnated
            }
            next /= next.norm();
            v = std::move(next);
        }
    }
    const RealVector svals = singular_values(b);
    return svals[0];
}

RealVector singular_values(MatrixRef b) {
    require_finite(b, "singular_values");
    const Matrix gram = b.adjoint() * b;
    HermEig eig = herm_eig(0.5 * (gram + gram.adjoint()), 0.0);
    const int n = int(eig.values.size());
    RealVector svals(n);
    for (int j = 0; j < n; ++j) svals[j] = std::sqrt(std::max(0.0, eig.values[n - 1 - j]));
    return svals;
}

}  // namespace floqlab::linalg
