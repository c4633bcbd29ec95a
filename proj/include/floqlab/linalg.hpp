#pragma once

#include <vector>

#include "floqlab/types.hpp"

namespace floqlab::linalg {

/// Largest matrix dimension the dense kernels are designed for.
inline constexpr int dimension_cap = 4096;

/// Frobenius-norm predicates. `tol` bounds ||M - M^dag||_F resp. ||M^dag M - I||_F.
bool is_hermitian(MatrixRef m, double tol);
bool is_unitary(MatrixRef m, double tol);

void require_finite(MatrixRef m, const char* who);

/// Hermitian eigendecomposition, eigenvalues ascending, eigenvectors orthonormal.
/// When tol > 0 the recomposition residual ||H V - V diag(lambda)||_F is verified
/// against tol * ||H||_F and NoConvergence is thrown on failure.
struct HermEig {
    RealVector values;
    Matrix vectors;
};
HermEig herm_eig(MatrixRef h, double tol = 1e-12);

/// Eigenphases and eigenvectors of a unitary matrix with multiplicity clusters.
struct SpectralDecomposition {
    RealVector phases;               // in (-pi, pi], ascending
    Matrix vectors;                  // orthonormal columns, vectors.col(j) <-> phases[j]
    std::vector<std::vector<int>> clusters;  // partition of indices by phase proximity
    double cluster_tol = 0.0;
    double residual_tol = 0.0;

    int dim() const { return int(phases.size()); }
    /// max_j ||U v_j - exp(i phase_j) v_j||.
    double max_residual(MatrixRef u) const;
};

inline constexpr double default_cluster_tol = 1e-7;
inline constexpr double default_residual_tol = 1e-9;

/// Spectral decomposition of a unitary matrix by joint diagonalization of the
/// commuting Hermitian pair Re(U) = (U + U^dag)/2 and Im(U) = (U - U^dag)/(2i):
/// eigenvectors of Re(U) are rotated within degenerate blocks to diagonalize
/// Im(U), which resolves the +/-theta ambiguity of the cosine. Phases come out
/// of atan2 of the diagonalized pair, so they live on (-pi, pi].
SpectralDecomposition unitary_eig(MatrixRef u, double cluster_tol = default_cluster_tol,
                                  double residual_tol = default_residual_tol);

/// exp(i s H) for Hermitian H, through the eigendecomposition of H.
Matrix expm_skew(MatrixRef h, double s);
Matrix expm_skew(const HermEig& eig, double s);

/// General (non-normal) matrix exponential by scaling-and-squaring with a
/// fixed-degree Taylor core. Accurate to ~1e-12 for ||B|| <= 1.
Matrix expm_general(MatrixRef b);

/// Operator norm (largest singular value) by power iteration on B^dag B with a
/// deterministic seeded start; restarts on stagnation, relative accuracy ~1e-8.
double op_norm(MatrixRef b);

/// All singular values, descending: square roots of the eigenvalues of B^dag B.
RealVector singular_values(MatrixRef b);

/// Wrap an angle to (-pi, pi].
double wrap_angle(double theta);

/// Distance on the circle: min_k |a - b + 2 pi k|.
double circle_distance(double a, double b);

}  // namespace floqlab::linalg
