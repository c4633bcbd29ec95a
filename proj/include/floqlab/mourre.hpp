#pragma once

#include <utility>
#include <vector>

#include "floqlab/grid.hpp"
#include "floqlab/linalg.hpp"
#include "floqlab/propagator.hpp"
#include "floqlab/types.hpp"

namespace floqlab::mourre {

/// Oriented interval on the torus, angles in (-pi, pi]. When wraps is set the
/// arc runs from lo through the +/-pi seam to hi.
struct Arc {
    double lo = -pi;
    double hi = pi;
    bool wraps = false;

    static Arc full() { return {-pi, pi, false}; }
    static Arc between(double lo, double hi);  // normalizes angles, infers wraps

    bool contains(double theta) const;
    double length() const;
    /// Circular distance from theta to the nearer endpoint.
    double endpoint_distance(double theta) const;
};

/// Indices of the decomposition phases lying on the arc.
struct ArcSelection {
    std::vector<int> indices;
    bool endpoint_warning = false;  // some phase within cluster_tol of an endpoint
};
ArcSelection select_arc(const linalg::SpectralDecomposition& dec, const Arc& arc);

/// E_Theta = sum of v_j v_j^dag over arc members. Orthogonal projection.
Matrix spectral_projector(const linalg::SpectralDecomposition& dec, const Arc& arc);

/// Spectrum of the compressed commutator E (U^dag A U - A) E on the range of
/// E, interior-filtered when a window is supplied: members keep only
/// eigenvectors with ||P v||^2 >= weight_min, and the compression runs over an
/// orthonormalized basis of their projected span.
struct MourreReport {
    Arc arc;
    RealVector compressed_spectrum;              // ascending
    double strict_c = 0.0;                       // smallest compressed eigenvalue
    std::vector<std::pair<int, double>> rank_k_constants;  // (k, (k+1)-th smallest)
    RealVector remainder_svals;  // |below-threshold part| at the largest listed k, descending
    int dim_range = 0;
    bool endpoint_warning = false;
};

/// Member filter for interior-compressed reports. Spectral vectors of
/// translation-type models spread over the whole line, so their interior
/// weights sit well below 1; the filter only needs to reject pure-exterior
/// directions whose projections would destabilize the orthonormalization.
inline constexpr double default_weight_min = 0.25;

/// Genuine-eigenvector threshold: a localized state keeps most of its mass in
/// the window, a discretized continuum state does not.
inline constexpr double eigen_count_weight_min = 0.5;

MourreReport mourre_report(MatrixRef u, MatrixRef a, const Arc& arc);
MourreReport mourre_report(MatrixRef u, MatrixRef a, const Arc& arc,
                           MatrixRef interior_window, double weight_min = default_weight_min);
MourreReport mourre_report(const linalg::SpectralDecomposition& dec, MatrixRef u, MatrixRef a,
                           const Arc& arc, const Matrix* interior_window,
                           double weight_min = default_weight_min);

/// || P_theta (U^dag A U - A) P_theta || over one multiplicity cluster plus the
/// per-eigenvector scalar residuals |<v, (U^dag A U - A) v>|.
struct VirialResidual {
    double value = 0.0;
    double scalar_max = 0.0;
    std::vector<double> scalars;
};
VirialResidual virial_residual(MatrixRef u, MatrixRef a, const linalg::SpectralDecomposition& dec,
                               int cluster_index);

/// Number of multiplicity clusters inside the arc whose members all carry
/// interior weight ||P v||^2 >= weight_min, with their sizes.
struct EigenCount {
    int count = 0;
    std::vector<int> multiplicities;
};
EigenCount eigen_count(const linalg::SpectralDecomposition& dec, const Arc& arc,
                       const grid::InteriorWeight& weight,
                       double weight_min = eigen_count_weight_min);

/// Numerical evaluation of the perturbation hypotheses: the second-difference
/// regularity integral of V, decay of V' at the window edge, and the two
/// strictness margins (negative margin = hypothesis satisfied)
///   margin_1 = T sup|V'| - |phi1(T)|,  margin_2 = 2 pi sup|V'| - |phi2(T)|.
struct PerturbationCriteria {
    double c11_value = 0.0;
    bool c11_converged = false;
    bool vanishing_derivative = false;
    double strict_bound_1 = 0.0;
    double strict_bound_2 = 0.0;
    double sup_dv = 0.0;
};
PerturbationCriteria theorem_a_criteria(const prop::ScenarioOps& ops);

/// One mollification level of the resolvent regularization: the smoothed
/// propagator U_eps, the window-compressed commutator B(eps) = P(A - U_eps A
/// U_eps^dag)P, and its Hermitian exponentials.
struct EpsFamily {
    double eps = 0.0;
    Matrix u_eps;
    Matrix b_eps;
    Matrix exp_minus;  // exp(-eps B)
    Matrix exp_plus;   // exp(+eps B)
    double lem1_margin = 0.0;  // ||U_eps^dag exp(-eps B) - U^dag|| / eps
};

std::vector<EpsFamily> build_regularized_family(const prop::ScenarioOps& ops, MatrixRef a,
                                                MatrixRef interior_window,
                                                const std::vector<double>& eps_grid);

Matrix t_plus(const EpsFamily& fam, Complex z);
Matrix t_minus(const EpsFamily& fam, Complex z);

/// Norm sweep of G_eps^{+-}(z) = T_eps^{+-}(z)^{-1} over the (eps, z) grid,
/// with the fitted constants sup eps ||G|| and sup (1-|z|^2) ||G||.
struct RegularizedFamilyReport {
    std::vector<double> epsilon_grid;
    std::vector<Complex> z_grid;
    RealMatrix norms_plus;   // eps index by z index
    RealMatrix norms_minus;
    std::vector<double> lem1_margins;
    double fitted_C_eps = 0.0;
    double fitted_C_z = 0.0;
    double rcond_min = 1.0;
    std::vector<std::pair<int, int>> failures;  // (eps index, z index) of failed solves
};

RegularizedFamilyReport regularized_family(const prop::ScenarioOps& ops, MatrixRef a,
                                           MatrixRef interior_window,
                                           const std::vector<double>& eps_grid,
                                           const std::vector<Complex>& z_grid);

/// Default annular sampling of the sector over an arc: n_radii radii with
/// 1 - r geometric in [1e-4, 1e-1], n_angles angles strictly inside the arc.
std::vector<Complex> make_z_grid(const Arc& arc, int n_radii = 8, int n_angles = 16);

}  // namespace floqlab::mourre
