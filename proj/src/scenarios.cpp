#include "floqlab/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "floqlab/commutator.hpp"
#include "floqlab/errors.hpp"
#include "floqlab/linalg.hpp"

namespace floqlab::scenarios {

const char* to_string(Expectation e) {
    switch (e) {
        case Expectation::PurePoint: return "pure_point";
        case Expectation::AcTranslation: return "ac_translation";
        case Expectation::PerturbedStrict: return "perturbed_strict";
        case Expectation::PerturbedCompact: return "perturbed_compact";
    }
    return "pure_point";
}

Expectation expectation_from_string(const std::string& name) {
    if (name == "pure_point") return Expectation::PurePoint;
    if (name == "ac_translation") return Expectation::AcTranslation;
    if (name == "perturbed_strict") return Expectation::PerturbedStrict;
    if (name == "perturbed_compact") return Expectation::PerturbedCompact;
    throw ValidationError("unknown expectation: " + name);
}

namespace {

prop::FloquetScenario reference(double half_width = 12.0) {
    prop::FloquetScenario s;
    s.basis.n_points = 512;
    s.basis.half_width = half_width;
    s.basis.omega = 1.0;
    s.field.period = 2.0 * pi;
    s.field.shape = grid::FuncSpec::sine(1.0, 1.0);
    s.time_steps = 256;
    s.dyson_order = 6;
    return s;
}

}  // namespace

std::vector<NamedScenario> builtin_scenarios() {
    std::vector<NamedScenario> list;

    {
        // Detuned drive: omega0/omega is the golden-ratio convergent 55/89, as
        // close to generic non-resonance as a finite run allows.
        NamedScenario nonres{"NONRES", reference(), Expectation::PurePoint};
        const double omega0 = 55.0 / 89.0;
        nonres.scenario.field.period = 2.0 * pi / omega0;
        nonres.scenario.field.shape = grid::FuncSpec::sine(1.0, omega0);
        list.push_back(nonres);
    }
    {
        // Doubled drive frequency: both one-period quadratures vanish.
        NamedScenario null{"RES_NULL", reference(), Expectation::PurePoint};
        null.scenario.field.shape = grid::FuncSpec::sine(1.0, 2.0);
        list.push_back(null);
    }
    list.push_back({"RES_SIN", reference(), Expectation::AcTranslation});
    {
        NamedScenario cos{"RES_COS", reference(), Expectation::AcTranslation};
        cos.scenario.field.shape = grid::FuncSpec::cosine(1.0, 1.0);
        list.push_back(cos);
    }
    {
        NamedScenario strict{"PERT_STRICT", reference(), Expectation::PerturbedStrict};
        strict.scenario.potential = grid::FuncSpec::gaussian(0.1, 1.0);
        list.push_back(strict);
    }
    {
        // The wide window (L = 28) leaves enough faithful modes for the
        // compact-remainder rank structure to be visible.
        NamedScenario compact{"PERT_COMPACT", reference(28.0), Expectation::PerturbedCompact};
        compact.scenario.potential = grid::FuncSpec::gaussian(4.0, 3.0);
        list.push_back(compact);
    }
    return list;
}

NamedScenario find_scenario(const std::string& name) {
    for (auto& s : builtin_scenarios())
        if (s.name == name) return s;
    throw ValidationError("unknown scenario: " + name);
}

HeisenbergCoupleReport heisenberg_couple_check(MatrixRef t_unitary, MatrixRef a,
                                               const std::vector<double>& t_grid,
                                               MatrixRef window) {
    HeisenbergCoupleReport report;
    const int n = int(t_unitary.rows());
    const auto a_eig = linalg::herm_eig(a, 0.0);

    for (double t : t_grid) {
        const Matrix rot = linalg::expm_skew(a_eig, t);
        const Matrix conjugated = rot * t_unitary * rot.adjoint();
        const Matrix expected = std::polar(1.0, t) * t_unitary;
        report.max_residual =
            std::max(report.max_residual, grid::compressed_norm(conjugated - expected, window));
    }

    const Matrix t_dag = t_unitary.adjoint();
    Matrix conj = a;
    for (int k = 1; k <= 3; ++k) {
        conj = t_dag * conj * t_unitary;  // T^{-k} A T^k
        const Matrix defect = conj - a - double(k) * Matrix::Identity(n, n);
        report.power_residuals.push_back(grid::compressed_norm(defect, window));
    }

    Matrix ad = t_unitary;
    for (int k = 1; k <= 2; ++k) {
        ad = a * ad - ad * a;
        report.ad_residuals.push_back(grid::compressed_norm(ad - t_unitary, window));
    }
    return report;
}

double ks_uniform_distance(const RealVector& phases) {
    std::vector<double> sorted(phases.begin(), phases.end());
    std::sort(sorted.begin(), sorted.end());
    const int n = int(sorted.size());
    double dist = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = (sorted[i] + pi) / (2.0 * pi);
        dist = std::max(dist, std::abs(cdf - double(i) / n));
        dist = std::max(dist, std::abs(cdf - double(i + 1) / n));
    }
    return dist;
}

}  // namespace floqlab::scenarios
