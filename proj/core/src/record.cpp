#include <algorithm>
#include <cmath>
#include <fstream>

#include "heatlab/errors.hpp"
#include "heatlab/record.hpp"

namespace heatlab {

using nlohmann::ordered_json;

std::optional<double> RunRecord::find_scalar(const std::string& name) const {
    for (const auto& [k, v] : scalars)
        if (k == name) return v;
    return std::nullopt;
}

std::optional<bool> RunRecord::find_verdict(const std::string& name) const {
    for (const auto& [k, v] : verdicts)
        if (k == name) return v;
    return std::nullopt;
}

bool RunRecord::pass() const {
    return error.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.second; });
}

ordered_json to_json(const RunRecord& r) {
    ordered_json j;
    j["version"] = r.version;
    j["kind"] = to_string(r.config.kind);
    j["seed"] = r.config.seed;
    j["config"] = dump_config(r.config);
    j["pass"] = r.pass();
    j["error"] = r.error;
    ordered_json s = ordered_json::object();
    for (const auto& [k, v] : r.scalars) s[k] = v;
    j["scalars"] = s;
    ordered_json v = ordered_json::object();
    for (const auto& [k, ok] : r.verdicts) v[k] = ok;
    j["verdicts"] = v;
    ordered_json norms = ordered_json::array();
    for (const auto& n : r.norms) norms.push_back({n.t, n.l2, n.min});
    j["norms"] = norms;
    if (r.fields) j["fields"] = {{"x", r.fields->x}, {"t", r.fields->t}, {"y", r.fields->y}};
    ordered_json p = ordered_json::array();
    for (const auto& s2 : r.pairings)
        p.push_back({{"id", s2.id}, {"lhs", s2.lhs}, {"rhs", s2.rhs}, {"residual", s2.residual},
                     {"distance", s2.distance}, {"pass", s2.pass}});
    j["pairings"] = p;
    ordered_json sw = ordered_json::array();
    for (const auto& row : r.sweep)
        sw.push_back({{"param", row.param}, {"value", row.value}, {"predicted", row.predicted},
                      {"measured", row.measured}, {"verdict", row.verdict}, {"error", row.error}});
    j["sweep"] = sw;
    return j;
}

RunRecord record_from_json(const ordered_json& j) {
    RunRecord r;
    try {
        r.version = j.at("version").get<std::string>();
        r.config = parse_config(j.at("config").get<std::string>());
        r.error = j.at("error").get<std::string>();
        for (const auto& [k, v] : j.at("scalars").items())
            r.scalars.emplace_back(k, v.is_null() ? std::nan("") : v.get<double>());
        for (const auto& [k, v] : j.at("verdicts").items()) r.verdicts.emplace_back(k, v.get<bool>());
        for (const auto& n : j.at("norms")) r.norms.push_back({n.at(0).get<double>(), n.at(1).get<double>(), n.at(2).get<double>()});
        if (j.contains("fields")) {
            const auto& f = j.at("fields");
            r.fields = FieldDump{f.at("x").get<std::vector<double>>(), f.at("t").get<std::vector<double>>(),
                                 f.at("y").get<std::vector<std::vector<double>>>()};
        }
        for (const auto& p : j.at("pairings"))
            r.pairings.push_back(PairingSample{p.at("id").get<int>(), p.at("lhs").get<double>(),
                                               p.at("rhs").get<double>(), p.at("residual").get<double>(),
                                               p.at("distance").get<double>(), p.at("pass").get<bool>()});
        for (const auto& s : j.at("sweep"))
            r.sweep.push_back(SweepRow{s.at("param").get<std::string>(), s.at("value").get<double>(),
                                       s.at("predicted").get<double>(), s.at("measured").get<double>(), 0.0,
                                       s.at("verdict").get<bool>(), s.at("error").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed record: ") + e.what());
    }
    return r;
}

RunRecord read_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open record " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
    RunRecord r = record_from_json(j);
    if (j.at("pass").get<bool>() != r.pass()) throw InvalidInput(path + ": stored pass flag disagrees with verdicts");
    return r;
}

std::vector<std::string> validate_record(const RunRecord& r) {
    std::vector<std::string> problems;
    try {
        validate(r.config);
    } catch (const ConfigError& e) {
        problems.emplace_back(std::string("config: ") + e.what());
    }
    if (r.version.empty()) problems.emplace_back("missing version");
    for (const auto& n : r.norms)
        if (!std::isfinite(n.t) || !std::isfinite(n.l2) || n.l2 < 0.0) problems.emplace_back("bad norm row");
    for (std::size_t i = 1; i < r.norms.size(); ++i)
        if (r.norms[i].t < r.norms[i - 1].t) problems.emplace_back("norm rows out of time order");
    if (r.fields) {
        for (const auto& row : r.fields->y)
            if (row.size() != r.fields->x.size()) problems.emplace_back("field row length mismatch");
        if (r.fields->y.size() != r.fields->t.size()) problems.emplace_back("field time count mismatch");
    }
    for (const auto& p : r.pairings)
        if (!std::isfinite(p.lhs) || !std::isfinite(p.rhs)) problems.emplace_back("non-finite pairing");
    if (r.verdicts.empty() && r.error.empty()) problems.emplace_back("record has no verdicts");
    return problems;
}

}  // namespace heatlab
