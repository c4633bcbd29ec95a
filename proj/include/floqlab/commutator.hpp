#pragma once

#include <vector>

#include "floqlab/grid.hpp"
#include "floqlab/propagator.hpp"
#include "floqlab/types.hpp"

namespace floqlab::commutator {

/// Iterated commutator ad_A^k(B): ad^0 = B, ad^k = A ad^{k-1} - ad^{k-1} A.
Matrix ad_k(MatrixRef a, MatrixRef b, int k);

/// Both derivations of the one-period momentum commutator:
///   direct   = U(T)^dag p U(T) - p
///   integral = -phi1(T) I - sum_j w_j cos(omega t_j) U(t_j)^dag V' U(t_j)
/// (composite Simpson over the scenario's time_steps nodes), and the norm of
/// their difference compressed to the interior window.
struct CommutatorBt {
    Matrix direct;
    Matrix integral;
    double interior_gap = 0.0;
};
CommutatorBt commutator_BT(const prop::ScenarioOps& ops, MatrixRef window);
CommutatorBt commutator_BT(const prop::ScenarioOps& ops, MatrixRef window, int steps);

/// Gaussian mollification V_eps(x) = int V(x - eps tau) exp(-tau^2/4) dtau / sqrt(4 pi),
/// tabulated on the grid through Gauss-Hermite quadrature. The kernel has unit
/// mass and variance 2, so ||V_eps||_inf <= ||V||_inf and Gaussians widen by
/// 2 eps^2 in variance.
grid::FuncSpec mollify(const grid::GridBasis& basis, const grid::FuncSpec& v, double epsilon);

/// The regularity integral int_{t_min}^1 g(t)/t^2 dt with
///   g(t) = int |V(x-t) + V(x+t) - 2V(x)| dx
/// discretized on log-spaced t nodes (trapezoid in log t) with the spatial L1
/// norm on the grid window. Finiteness of the t->0 limit is the membership
/// criterion for the C^{1,1} smoothness class used by the spectral theory.
struct RegularitySeminorm {
    double value = 0.0;
    int t_nodes = 0;
    double t_min = 0.0;
    bool converged = false;  // halving t_min moved the value by <= 5%
};
RegularitySeminorm c11_seminorm(const grid::GridBasis& basis, const grid::FuncSpec& v,
                                double t_min = 1e-3);

/// Conjugation series check: e^{-B} A e^{B} - A against the partial sum
///   sum_{k=1..terms} (-1)^(k-1)/k! ad_B^{k-1}(ad_A B),
/// plus the margins of the two norm bounds
///   ||ad_A e^{iB}|| <= e^{||B||} ||ad_A B||,
///   ||e^{-B} A e^{B} - A|| <= e^{||B||} ||ad_A B||  (margin = bound - measured >= 0).
struct BchReport {
    double series_gap = 0.0;
    double margin_exp_commutator = 0.0;
    double margin_conjugation = 0.0;
};
BchReport bch_check(MatrixRef a, MatrixRef b, int terms);

/// Measured ||ad_A^j U^m|| for m = 1..m_max against the bound C^j m^j with
/// C = sqrt(sum_{i<=j} ||ad_A^i U||^2). Violations beyond 1e-9 slack are
/// flagged.
struct PowerGrowth {
    std::vector<double> measured;  // index m-1
    std::vector<double> bound;
    bool violated = false;
};
PowerGrowth power_growth(MatrixRef a, MatrixRef u, int j, int m_max);

/// Finite Fourier functional calculus Phi(U) = sum_m c_m U^m and the exchange
/// of ad_A^j with the sum.
struct FourierCalculus {
    Matrix phi_u;
    Matrix adj_commuted;
    double gap = 0.0;
};
FourierCalculus fourier_calculus(MatrixRef u, const std::vector<std::pair<int, Complex>>& coeffs,
                                 MatrixRef a, int j);

}  // namespace floqlab::commutator
