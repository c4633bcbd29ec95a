#pragma once

#include <string>
#include <vector>

#include "floqlab/propagator.hpp"
#include "floqlab/types.hpp"

namespace floqlab::scenarios {

/// Qualitative spectral expectation attached to a named model.
enum class Expectation { PurePoint, AcTranslation, PerturbedStrict, PerturbedCompact };

const char* to_string(Expectation e);
Expectation expectation_from_string(const std::string& name);

struct NamedScenario {
    std::string name;
    prop::FloquetScenario scenario;
    Expectation expected;
};

/// The canonical model library:
///   NONRES       drive period detuned from the oscillator (89/55 convergent),
///                localized quasi-energy states
///   RES_NULL     resonant drive at the doubled frequency, both drive
///                quadratures vanish over a period, pure point
///   RES_SIN      resonant sine drive, one-period translation in position
///   RES_COS      resonant cosine drive, one-period boost in momentum
///   PERT_STRICT  RES_SIN plus a small gaussian inside the strictness bound
///   PERT_COMPACT RES_SIN plus a wide gaussian with decaying slope that
///                violates the strictness bound (compact remainder only)
std::vector<NamedScenario> builtin_scenarios();

/// Look up one scenario by name; throws ValidationError for unknown names.
NamedScenario find_scenario(const std::string& name);

/// Verifier of the covariance e^{itA} T e^{-itA} = e^{it} T and its discrete
/// consequences, all compressed to the columns of `window`:
///   max_residual     max over t_grid of || P (e^{itA} T e^{-itA} - e^{it} T) P ||
///   power_residuals  || P (T^{-n} A T^n - A - n) P ||, n = 1..3
///   ad_residuals     || P (ad_A^k T - T) P ||, k = 1..2
struct HeisenbergCoupleReport {
    double max_residual = 0.0;
    std::vector<double> power_residuals;
    std::vector<double> ad_residuals;
};
HeisenbergCoupleReport heisenberg_couple_check(MatrixRef t_unitary, MatrixRef a,
                                               const std::vector<double>& t_grid,
                                               MatrixRef window);

/// Kolmogorov-Smirnov distance of sorted phases (in (-pi, pi]) from the
/// uniform distribution on the circle.
double ks_uniform_distance(const RealVector& phases);

}  // namespace floqlab::scenarios
