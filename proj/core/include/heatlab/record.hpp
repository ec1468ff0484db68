#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "heatlab/config.hpp"
#include "heatlab/obstruction.hpp"

namespace heatlab {

inline constexpr const char* kVersion = "heatlab 0.1.0";

struct NormRow {
    double t = 0.0;
    double l2 = 0.0;
    double min = 0.0;
};

/// Space-time samples for plotting; y[s][i] is the state at t[s], x[i].
struct FieldDump {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<std::vector<double>> y;
};

struct SweepRow {
    std::string param;
    double value = 0.0;
    double predicted = 0.0;
    double measured = 0.0;
    double runtime_s = 0.0;  ///< wall clock; kept out of record.json
    bool verdict = false;
    std::string error;
};

struct RunRecord {
    ScenarioConfig config;
    std::string version = kVersion;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, bool>> verdicts;
    std::vector<NormRow> norms;
    std::optional<FieldDump> fields;
    std::vector<PairingSample> pairings;
    std::vector<SweepRow> sweep;
    /// Pipeline failure as "stage: message"; empty on success.
    std::string error;
    double runtime_s = 0.0;

    void scalar(const std::string& name, double v) { scalars.emplace_back(name, v); }
    void verdict(const std::string& name, bool ok) { verdicts.emplace_back(name, ok); }
    std::optional<double> find_scalar(const std::string& name) const;
    std::optional<bool> find_verdict(const std::string& name) const;
    bool pass() const;
};

/// Deterministic JSON: no wall-clock fields, config embedded as YAML text.
nlohmann::ordered_json to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::ordered_json& j);

RunRecord read_record(const std::string& path);
/// Re-parses the embedded config and checks the record's internal consistency.
/// Returns a list of problems; empty means valid.
std::vector<std::string> validate_record(const RunRecord& r);

}  // namespace heatlab
