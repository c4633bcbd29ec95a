#pragma once

#include <vector>

#include "floqlab/linalg.hpp"
#include "floqlab/mourre.hpp"
#include "floqlab/types.hpp"

namespace floqlab::diagnostics {

/// Regularization vector (I + i eps A)^{-1} phi, the explicit member of the
/// domain-interpolation family used for boundary values.
Vector k_vector(MatrixRef a, VectorRef phi, double epsilon);

/// Matrix elements of the resolvents from inside and outside the unit circle:
///   F+(theta, r) = <phi, (1 - r e^{i theta} U^dag)^{-1} psi>
///   F-(theta, r) = <phi, (1 - r^{-1} e^{i theta} U^dag)^{-1} psi>
/// with the Cauchy increments |F(theta, r_k) - F(theta, r_{k+1})| along each
/// radius sequence. Dense solves at every (theta, r) point.
struct BoundaryTrace {
    std::vector<double> theta_grid;
    std::vector<double> r_sequence;
    Eigen::MatrixXcd values_inside;   // theta index by r index
    Eigen::MatrixXcd values_outside;
    RealMatrix cauchy_gaps_inside;    // theta by (r pairs)
    RealMatrix cauchy_gaps_outside;
    std::vector<std::pair<int, int>> failures;
};
BoundaryTrace boundary_trace(MatrixRef u, VectorRef phi, VectorRef psi,
                             const std::vector<double>& theta_grid,
                             const std::vector<double>& r_sequence);

/// Poisson-smoothed spectral density of phi at radius r:
///   d(theta) = (1/2pi) <phi, [(1-zU^dag)^{-1} - (1-zbar^{-1}U^dag)^{-1}] phi>,
/// z = r e^{i theta}. Real and nonnegative up to roundoff; integrates to
/// ||phi||^2 over the circle.
RealVector poisson_density(MatrixRef u, VectorRef phi, const std::vector<double>& theta_grid,
                           double r);

/// Same density through the spectral decomposition of U; agrees with the
/// solve route to roundoff and costs O(n) per theta after one diagonalization.
RealVector poisson_density(const linalg::SpectralDecomposition& dec, VectorRef phi,
                           const std::vector<double>& theta_grid, double r);

/// The five summability constants of the smoothness characterization,
/// evaluated on a documented sample family (all sups are lower bounds):
///   C1: (1/2pi) sup_psi sum_{|n|<=n_max} ||B U^n psi||^2
///   C2: (1/2pi) sup_{psi,z} |<B* psi, Re((1+zU^dag)(1-zU^dag)^{-1}) B* psi>|
///   C3: sup ||B E(arc) psi||^2 / |arc| over the dyadic arc family
///   C4: sup ||E(arc) B* psi||^2 / |arc|
///   C5: (1/2pi) sup_{psi,z} (1-|z|^2) ||(1-zU^dag)^{-1} B* psi||^2
struct SmoothnessReport {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;
    int n_max = 0;
    int z_points = 0;
    double agreement_spread = 0.0;  // max pairwise relative gap among C1, C3, C4, C5
    bool c1_diverging = false;      // growth flag: the partial sums keep climbing
};
SmoothnessReport usmooth_constants(MatrixRef u, MatrixRef b, const std::vector<Vector>& samples,
                                   int n_max, const std::vector<Complex>& z_grid);

/// a_n = |<psi, U^n psi>|^2 for n = 1..m and the Cesaro mean (1/m) sum a_n.
struct ReturnProbability {
    RealVector a;
    double cesaro = 0.0;
};
ReturnProbability return_probability(MatrixRef u, VectorRef psi, int m);

/// Dyadic arcs: lengths 2 pi / 2^k for k = k_min..k_max, offsets on a coarse
/// grid; the affordable stand-in for the sup over all arcs.
std::vector<mourre::Arc> dyadic_arcs(int k_min, int k_max, int offsets_per_length = 8);

}  // namespace floqlab::diagnostics
