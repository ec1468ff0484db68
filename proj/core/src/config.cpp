#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "heatlab/config.hpp"
#include "heatlab/errors.hpp"

namespace heatlab {
namespace {

constexpr const char* kKindNames[] = {
    "simulate",     "synthesize_additive", "synthesize_multiplicative", "verify_static",
    "verify_boundary", "verify_strip",     "check_p1",                  "study_convergence",
    "check_pulse",  "damping_sweep",       "lift_additive",
};

template <class T>
void read(const YAML::Node& section, const char* key, T& into, const std::string& field) {
    const YAML::Node n = section[key];
    if (!n) return;
    try {
        into = n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(field, "cannot parse value");
    }
}

void read_interval(const YAML::Node& section, const char* key, Interval& into, const std::string& field) {
    const YAML::Node n = section[key];
    if (!n) return;
    std::vector<double> v;
    read(section, key, v, field);
    if (v.size() != 2) throw ConfigError(field, "expected [lo, hi]");
    if (!(0.0 <= v[0] && v[0] < v[1] && v[1] <= 1.0)) throw ConfigError(field, "need 0 <= lo < hi <= 1");
    into = Interval(v[0], v[1]);
}

void read_shape(const YAML::Node& section, const char* key, ShapeSpec& into, const std::string& field) {
    const YAML::Node n = section[key];
    if (!n) return;
    if (!n.IsMap()) throw ConfigError(field, "expected a map with a shape key");
    read(n, "shape", into.shape, field + ".shape");
    read(n, "params", into.params, field + ".params");
    read(n, "scale", into.scale, field + ".scale");
    read(n, "path", into.path, field + ".path");
    validate_shape(into, field);
}

void check_unknown(const YAML::Node& node, std::initializer_list<const char*> keys, const std::string& where) {
    if (!node) return;
    if (!node.IsMap()) throw ConfigError(where, "expected a map");
    for (const auto& kv : node) {
        const auto k = kv.first.as<std::string>();
        bool ok = false;
        for (const char* known : keys) ok = ok || k == known;
        if (!ok) throw ConfigError(where.empty() ? k : where + "." + k, "unknown key");
    }
}

}  // namespace

const char* to_string(ScenarioKind k) noexcept { return kKindNames[static_cast<int>(k)]; }

ScenarioKind parse_kind(const std::string& s) {
    for (int i = 0; i < static_cast<int>(std::size(kKindNames)); ++i)
        if (s == kKindNames[i]) return static_cast<ScenarioKind>(i);
    throw ConfigError("scenario", "unknown scenario kind '" + s + "'");
}

void validate(const ScenarioConfig& c) {
    if (c.n_points < 9 || c.n_points > (1u << 20)) throw ConfigError("field.n_points", "must be in [9, 2^20]");
    if (c.k_max < 1 || c.k_max > static_cast<int>(c.n_points) - 2)
        throw ConfigError("field.k_max", "must be in [1, n_points - 2]");
    if (!(c.T > 0.0) || !std::isfinite(c.T)) throw ConfigError("heat.T", "must be positive and finite");
    if (!(c.dt > 0.0) || !(c.dt < c.T)) throw ConfigError("heat.dt", "must be in (0, T)");
    if (c.solver != "spectral" && c.solver != "cn") throw ConfigError("heat.solver", "must be spectral or cn");
    if (!std::isfinite(c.reaction)) throw ConfigError("heat.reaction", "must be finite");
    if (!(c.length_l > 0.0 && c.length_l < 1.0)) throw ConfigError("synthesis.length_l", "must be in (0, 1)");
    if (!(c.epsilon > 0.0)) throw ConfigError("synthesis.epsilon", "must be positive");
    if (c.delta < 0.0 || !(c.delta < c.T / 2.0 || c.delta == 0.0))
        throw ConfigError("synthesis.delta", "must be in [0, T/2)");
    if (c.m_grid.empty()) throw ConfigError("synthesis.m_grid", "must not be empty");
    for (double m : c.m_grid)
        if (!(m > 0.0)) throw ConfigError("synthesis.m_grid", "entries must be positive");
    if (c.m < 2) throw ConfigError("obstruction.m", "must be >= 2");
    if (c.samples < 0) throw ConfigError("obstruction.samples", "must be >= 0");
    if (!(c.v_bound >= 0.0)) throw ConfigError("obstruction.v_bound", "must be >= 0");
    if (c.workers < 1) throw ConfigError("output.workers", "must be >= 1");
    if (c.kind == ScenarioKind::study_convergence) {
        if (c.study_base == ScenarioKind::study_convergence) throw ConfigError("study.base", "cannot nest studies");
        static const char* params[] = {"delta", "dt", "n_points", "m"};
        bool ok = false;
        for (const char* p : params) ok = ok || c.sweep_param == p;
        if (!ok) throw ConfigError("study.param", "must be one of delta, dt, n_points, m");
    }
}

ScenarioConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", e.what());
    }
    if (!root.IsMap()) throw ConfigError("<document>", "expected a map at top level");
    check_unknown(root, {"scenario", "name", "seed", "field", "heat", "synthesis", "obstruction", "states", "study", "output"},
                  "");

    ScenarioConfig c;
    std::string kind;
    read(root, "scenario", kind, "scenario");
    if (kind.empty()) throw ConfigError("scenario", "missing");
    c.kind = parse_kind(kind);
    read(root, "name", c.name, "name");
    read(root, "seed", c.seed, "seed");

    const YAML::Node field = root["field"];
    check_unknown(field, {"n_points", "k_max"}, "field");
    if (field) {
        read(field, "n_points", c.n_points, "field.n_points");
        read(field, "k_max", c.k_max, "field.k_max");
    }
    const YAML::Node heat = root["heat"];
    check_unknown(heat, {"T", "dt", "solver", "reaction"}, "heat");
    if (heat) {
        read(heat, "T", c.T, "heat.T");
        read(heat, "dt", c.dt, "heat.dt");
        read(heat, "solver", c.solver, "heat.solver");
        read(heat, "reaction", c.reaction, "heat.reaction");
    }
    const YAML::Node syn = root["synthesis"];
    check_unknown(syn, {"length_l", "epsilon", "delta", "m_grid"}, "synthesis");
    if (syn) {
        read(syn, "length_l", c.length_l, "synthesis.length_l");
        read(syn, "epsilon", c.epsilon, "synthesis.epsilon");
        read(syn, "delta", c.delta, "synthesis.delta");
        read(syn, "m_grid", c.m_grid, "synthesis.m_grid");
    }
    const YAML::Node obs = root["obstruction"];
    check_unknown(obs, {"m", "omega", "strip", "samples", "v_bound"}, "obstruction");
    if (obs) {
        read(obs, "m", c.m, "obstruction.m");
        read_interval(obs, "omega", c.omega, "obstruction.omega");
        read_interval(obs, "strip", c.strip, "obstruction.strip");
        read(obs, "samples", c.samples, "obstruction.samples");
        read(obs, "v_bound", c.v_bound, "obstruction.v_bound");
    }
    const YAML::Node states = root["states"];
    check_unknown(states, {"y0", "target"}, "states");
    if (states) {
        read_shape(states, "y0", c.y0, "states.y0");
        read_shape(states, "target", c.target, "states.target");
    }
    const YAML::Node study = root["study"];
    check_unknown(study, {"base", "param", "values"}, "study");
    if (study) {
        std::string base;
        read(study, "base", base, "study.base");
        if (!base.empty()) {
            try {
                c.study_base = parse_kind(base);
            } catch (const ConfigError&) {
                throw ConfigError("study.base", "unknown scenario kind '" + base + "'");
            }
        }
        read(study, "param", c.sweep_param, "study.param");
        read(study, "values", c.sweep_values, "study.values");
    }
    const YAML::Node out = root["output"];
    check_unknown(out, {"dir", "workers"}, "output");
    if (out) {
        read(out, "dir", c.out_dir, "output.dir");
        read(out, "workers", c.workers, "output.workers");
    }
    validate(c);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ScenarioConfig& c) {
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    const auto shape = [&](const char* key, const ShapeSpec& s) {
        e << YAML::Key << key << YAML::Value << YAML::BeginMap;
        e << YAML::Key << "shape" << YAML::Value << s.shape;
        e << YAML::Key << "params" << YAML::Value << YAML::Flow << s.params;
        e << YAML::Key << "scale" << YAML::Value << s.scale;
        if (!s.path.empty()) e << YAML::Key << "path" << YAML::Value << s.path;
        e << YAML::EndMap;
    };
    e << YAML::BeginMap;
    e << YAML::Key << "scenario" << YAML::Value << to_string(c.kind);
    e << YAML::Key << "name" << YAML::Value << c.name;
    e << YAML::Key << "seed" << YAML::Value << c.seed;
    e << YAML::Key << "field" << YAML::Value << YAML::BeginMap << YAML::Key << "n_points" << YAML::Value << c.n_points
      << YAML::Key << "k_max" << YAML::Value << c.k_max << YAML::EndMap;
    e << YAML::Key << "heat" << YAML::Value << YAML::BeginMap << YAML::Key << "T" << YAML::Value << c.T << YAML::Key
      << "dt" << YAML::Value << c.dt << YAML::Key << "solver" << YAML::Value << c.solver << YAML::Key << "reaction"
      << YAML::Value << c.reaction << YAML::EndMap;
    e << YAML::Key << "synthesis" << YAML::Value << YAML::BeginMap << YAML::Key << "length_l" << YAML::Value
      << c.length_l << YAML::Key << "epsilon" << YAML::Value << c.epsilon << YAML::Key << "delta" << YAML::Value
      << c.delta << YAML::Key << "m_grid" << YAML::Value << YAML::Flow << c.m_grid << YAML::EndMap;
    e << YAML::Key << "obstruction" << YAML::Value << YAML::BeginMap << YAML::Key << "m" << YAML::Value << c.m
      << YAML::Key << "omega" << YAML::Value << YAML::Flow << std::vector<double>{c.omega.lo, c.omega.hi}
      << YAML::Key << "strip" << YAML::Value << YAML::Flow << std::vector<double>{c.strip.lo, c.strip.hi}
      << YAML::Key << "samples" << YAML::Value << c.samples << YAML::Key << "v_bound" << YAML::Value << c.v_bound
      << YAML::EndMap;
    e << YAML::Key << "states" << YAML::Value << YAML::BeginMap;
    shape("y0", c.y0);
    shape("target", c.target);
    e << YAML::EndMap;
    if (c.kind == ScenarioKind::study_convergence) {
        e << YAML::Key << "study" << YAML::Value << YAML::BeginMap << YAML::Key << "base" << YAML::Value
          << to_string(c.study_base) << YAML::Key << "param" << YAML::Value << c.sweep_param << YAML::Key
          << "values" << YAML::Value << YAML::Flow << c.sweep_values << YAML::EndMap;
    }
    e << YAML::Key << "output" << YAML::Value << YAML::BeginMap << YAML::Key << "dir" << YAML::Value << c.out_dir
      << YAML::Key << "workers" << YAML::Value << c.workers << YAML::EndMap;
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

}  // namespace heatlab
