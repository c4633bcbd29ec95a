#pragma once

#include <string>
#include <vector>

#include "floqlab/grid.hpp"
#include "floqlab/mourre.hpp"
#include "floqlab/propagator.hpp"

namespace floqlab::config {

/// One batch-run description: which model, which windows and grids, where the
/// outputs go. Parsed from the key-value text format (dotted section keys,
/// '#' comments) or from a flat JSON object with identical keys; unknown keys
/// are rejected.
struct RunConfig {
    std::string scenario_name = "RES_SIN";  // builtin name, or "inline"
    prop::FloquetScenario inline_scenario;

    double arc_lo = -pi;
    double arc_hi = pi;

    double interior_fraction = 0.5;
    double interior_momentum_fraction = 0.5;
    bool interior_rotation_safe = true;
    double interior_keep_cut = grid::projector_keep_threshold;
    double weight_min = mourre::default_weight_min;

    double radius = 0.99;         // density / single-radius diagnostics
    int n_max = 0;                // 0 -> 4 * n_points
    double t_min = 1e-3;          // regularity integral lower cut
    int return_steps = 512;
    int theta_points = 256;
    int radius_points = 10;
    std::vector<double> eps_grid{0.4, 0.2, 0.1, 0.05};
    int z_radii = 8;
    int z_angles = 16;
    double bump_width = 1.5;      // smoothness-probe observable

    std::string potential_override;  // c11/theorem-a on an explicit descriptor
    std::string conjugate = "a2";    // a1 | a2 | x | p

    std::string output_dir = ".";
    uint64_t seed = 1;
    std::string format = "csv";  // csv | json
    int jobs = 1;

    /// Builtin scenario by name, or the inline one.
    prop::FloquetScenario scenario() const;
    mourre::Arc arc() const {
        if (arc_hi - arc_lo >= 2.0 * pi - 1e-12) return mourre::Arc::full();
        return mourre::Arc::between(arc_lo, arc_hi);
    }
    grid::InteriorWeight interior(const grid::GridBasis& basis) const;
    void validate() const;  // throws ValidationError with the key path
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);
std::string save_config(const RunConfig& config);

}  // namespace floqlab::config
