#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "heatlab/errors.hpp"
#include "heatlab/harness.hpp"

namespace heatlab {
namespace {

ScenarioConfig with_value(const ScenarioConfig& base, const std::string& param, double v) {
    ScenarioConfig c = base;
    c.kind = base.study_base;
    c.sweep_param.clear();
    c.sweep_values.clear();
    if (param == "delta") {
        c.delta = v;
    } else if (param == "dt") {
        c.dt = v;
    } else if (param == "n_points") {
        if (!(v >= 9.0) || v != std::floor(v)) throw ConfigError("study.values", "n_points must be an integer >= 9");
        c.n_points = static_cast<std::size_t>(v);
        c.k_max = std::min(c.k_max, static_cast<int>(c.n_points) - 2);
    } else if (param == "m") {
        c.m_grid = {v};
        c.m = static_cast<int>(v);
    } else {
        throw ConfigError("study.param", "unknown sweep parameter '" + param + "'");
    }
    return c;
}

SweepRow run_one(const ScenarioConfig& base, const std::string& param, double v) {
    SweepRow row;
    row.param = param;
    row.value = v;
    row.predicted = std::nan("");
    row.measured = std::nan("");
    try {
        const RunRecord r = run_scenario(with_value(base, param, v));
        row.runtime_s = r.runtime_s;
        row.predicted = r.find_scalar("predicted_error").value_or(std::nan(""));
        row.measured = r.find_scalar(param == "dt" ? "time_error" : "measured_error").value_or(std::nan(""));
        row.verdict = r.pass();
        row.error = r.error;
    } catch (const std::exception& e) {
        row.verdict = false;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> convergence_study(const ScenarioConfig& base, const std::string& param,
                                        const std::vector<double>& values, int workers) {
    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = run_one(base, param, values[i]);
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), values.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

}  // namespace heatlab
