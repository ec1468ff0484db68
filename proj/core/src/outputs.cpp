#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "heatlab/errors.hpp"
#include "heatlab/harness.hpp"

namespace heatlab {
namespace fs = std::filesystem;
namespace {

std::ofstream open(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << std::setprecision(17);
    return out;
}

void close(std::ofstream& out, const fs::path& p) {
    out.close();
    if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

void emit_outputs(const RunRecord& r, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    {
        const fs::path p = dir / "record.json";
        auto out = open(p);
        out << to_json(r).dump(2) << "\n";
        close(out, p);
    }
    {
        const fs::path p = dir / "scalars.csv";
        auto out = open(p);
        out << "name,value\n";
        for (const auto& [k, v] : r.scalars) out << k << "," << v << "\n";
        for (const auto& [k, ok] : r.verdicts) out << "verdict_" << k << "," << (ok ? 1 : 0) << "\n";
        out << "seed," << r.config.seed << "\n";
        close(out, p);
    }
    {
        const fs::path p = dir / "norms.csv";
        auto out = open(p);
        out << "t,l2,interior_min\n";
        for (const auto& n : r.norms) out << n.t << "," << n.l2 << "," << n.min << "\n";
        close(out, p);
    }
    if (r.fields) {
        const fs::path p = dir / "fields.csv";
        auto out = open(p);
        out << "x,t,y\n";
        for (std::size_t s = 0; s < r.fields->t.size(); ++s)
            for (std::size_t i = 0; i < r.fields->x.size(); ++i)
                out << r.fields->x[i] << "," << r.fields->t[s] << "," << r.fields->y[s][i] << "\n";
        close(out, p);
    }
    if (!r.pairings.empty()) {
        const fs::path p = dir / "pairings.csv";
        auto out = open(p);
        out << "sample_id,lhs,rhs,residual,pass\n";
        for (const auto& s : r.pairings)
            out << s.id << "," << s.lhs << "," << s.rhs << "," << s.residual << "," << (s.pass ? 1 : 0) << "\n";
        close(out, p);
    }
    if (!r.sweep.empty()) {
        const fs::path p = dir / "sweep.csv";
        auto out = open(p);
        out << "param,value,predicted,measured,runtime_s,verdict\n";
        for (const auto& row : r.sweep)
            out << row.param << "," << row.value << "," << row.predicted << "," << row.measured << ","
                << row.runtime_s << "," << (row.verdict ? "pass" : "fail") << "\n";
        close(out, p);
    }
    {
        const fs::path p = dir / "timing.json";
        auto out = open(p);
        nlohmann::ordered_json j;
        j["runtime_s"] = r.runtime_s;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : r.sweep) rows.push_back({{"value", row.value}, {"runtime_s", row.runtime_s}});
        j["sweep"] = rows;
        out << j.dump(2) << "\n";
        close(out, p);
    }
}

}  // namespace heatlab
