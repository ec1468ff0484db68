#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heatlab/field.hpp"
#include "heatlab/shapes.hpp"

namespace heatlab {

enum class ScenarioKind {
    simulate,
    synthesize_additive,
    synthesize_multiplicative,
    verify_static,
    verify_boundary,
    verify_strip,
    check_p1,
    study_convergence,
    check_pulse,
    damping_sweep,
    lift_additive,
};

const char* to_string(ScenarioKind k) noexcept;
ScenarioKind parse_kind(const std::string& s);

/// One experiment. Key names mirror the YAML layout documented in the README.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::simulate;
    std::string name = "run";
    std::uint64_t seed = 0;

    // field
    std::size_t n_points = kDefaultPoints;
    int k_max = kDefaultModes;

    // heat
    double T = 0.1;
    double dt = 1e-4;
    std::string solver = "spectral";  ///< spectral | cn
    double reaction = 0.0;            ///< constant v on (0, 1) for cn runs

    // synthesis
    double length_l = 0.4;
    double epsilon = 0.05;
    double delta = 0.0;  ///< pulse length; 0 picks it from epsilon
    std::vector<double> m_grid{1e2, 1e3, 1e4, 1e5};

    // obstruction
    int m = 2;
    Interval omega{0.6, 0.9};
    Interval strip{0.6, 0.9};
    int samples = 20;
    double v_bound = 20.0;

    ShapeSpec y0;
    ShapeSpec target;

    // study
    ScenarioKind study_base = ScenarioKind::check_pulse;
    std::string sweep_param;
    std::vector<double> sweep_values;

    std::string out_dir = "out";
    int workers = 1;
};

/// Range checks; throws ConfigError naming the field.
void validate(const ScenarioConfig& cfg);

ScenarioConfig parse_config(const std::string& yaml_text);
ScenarioConfig load_config(const std::string& path);
/// YAML text that parse_config maps back to the same config.
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace heatlab
