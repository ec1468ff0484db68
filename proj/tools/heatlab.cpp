// heatlab: run control-synthesis and obstruction scenarios from YAML configs.

#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "heatlab/errors.hpp"
#include "heatlab/harness.hpp"

namespace {

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "Scenario YAML file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "Output directory (overrides output.dir)");
    sub->add_option("--seed", c.seed, "64-bit seed (overrides seed)");
    sub->add_option("--workers", c.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
}

int run(const std::string& command, const Common& c, const std::set<heatlab::ScenarioKind>& allowed) {
    using namespace heatlab;
    ScenarioConfig cfg;
    try {
        cfg = load_config(c.config);
        if (c.seed) cfg.seed = *c.seed;
        if (c.workers) cfg.workers = *c.workers;
        if (!c.out.empty()) cfg.out_dir = c.out;
        if (!allowed.count(cfg.kind))
            throw ConfigError("scenario", std::string("'") + to_string(cfg.kind) + "' is not a " + command + " scenario");
        validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    RunRecord rec;
    try {
        rec = run_scenario(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        emit_outputs(rec, cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 3;
    }

    std::cout << cfg.name << " (" << to_string(cfg.kind) << ", seed " << cfg.seed << ")\n";
    if (!rec.error.empty()) std::cout << "  error: " << rec.error << "\n";
    for (const auto& [name, ok] : rec.verdicts) std::cout << "  " << (ok ? "PASS " : "FAIL ") << name << "\n";
    std::cout << (rec.pass() ? "PASS" : "FAIL") << "  -> " << cfg.out_dir << "\n";
    return rec.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    using K = heatlab::ScenarioKind;
    CLI::App app{"heatlab: heat-equation controllability experiments"};
    app.require_subcommand(1);

    Common sim, syn, ver, stu;
    add_common(app.add_subcommand("simulate", "Forward solve"), sim);
    add_common(app.add_subcommand("synthesize", "Build and check a control"), syn);
    add_common(app.add_subcommand("verify", "Obstruction certificates and P1 bounds"), ver);
    add_common(app.add_subcommand("study", "Convergence sweep"), stu);

    std::string record_path;
    auto* check = app.add_subcommand("check-record", "Re-read and re-validate a record.json");
    check->add_option("record", record_path, "Path to record.json")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("simulate")) return run("simulate", sim, {K::simulate});
    if (app.got_subcommand("synthesize"))
        return run("synthesize", syn,
                   {K::synthesize_additive, K::synthesize_multiplicative, K::check_pulse, K::damping_sweep,
                    K::lift_additive});
    if (app.got_subcommand("verify"))
        return run("verify", ver, {K::verify_static, K::verify_boundary, K::verify_strip, K::check_p1});
    if (app.got_subcommand("study")) return run("study", stu, {K::study_convergence});

    try {
        const heatlab::RunRecord r = heatlab::read_record(record_path);
        const auto problems = heatlab::validate_record(r);
        for (const auto& p : problems) std::cout << "  problem: " << p << "\n";
        std::cout << (problems.empty() && r.pass() ? "PASS" : "FAIL") << "\n";
        return problems.empty() && r.pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
