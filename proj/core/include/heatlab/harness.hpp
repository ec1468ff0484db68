#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "heatlab/config.hpp"
#include "heatlab/record.hpp"

namespace heatlab {

/// Runs one scenario. Pipeline failures are caught and stored in
/// RunRecord::error as "stage: message"; config errors propagate.
RunRecord run_scenario(const ScenarioConfig& cfg);

/// One run per sweep value on up to cfg.workers threads. Rows come back in
/// sweep order whatever the completion order.
std::vector<SweepRow> convergence_study(const ScenarioConfig& base, const std::string& param,
                                        const std::vector<double>& values, int workers);

/// Writes record.json, scalars.csv, norms.csv and, when present, fields.csv,
/// pairings.csv and sweep.csv, plus timing.json with the wall-clock figures.
void emit_outputs(const RunRecord& record, const std::filesystem::path& dir);

}  // namespace heatlab
