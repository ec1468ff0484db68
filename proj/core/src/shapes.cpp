#include <cmath>
#include <fstream>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/random.hpp"
#include "heatlab/shapes.hpp"

namespace heatlab {
namespace {

double smoothstep(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s * s * (3.0 - 2.0 * s);
}

std::size_t expected_params(const std::string& shape) {
    if (shape == "sine") return 1;
    if (shape == "bump" || shape == "indicator") return 2;
    if (shape == "hat") return 3;
    return 0;
}

}  // namespace

void validate_shape(const ShapeSpec& spec, const std::string& field) {
    static const char* known[] = {"sine", "bump", "parabola", "hat", "indicator", "zero", "file"};
    bool ok = false;
    for (const char* k : known) ok = ok || spec.shape == k;
    if (!ok) throw ConfigError(field, "unknown shape '" + spec.shape + "'");
    if (spec.shape == "file") {
        if (spec.path.empty()) throw ConfigError(field, "file shape needs a path");
        return;
    }
    if (spec.params.size() != expected_params(spec.shape))
        throw ConfigError(field, spec.shape + " takes " + std::to_string(expected_params(spec.shape)) + " parameters");
    if (!std::isfinite(spec.scale) || spec.scale < 0.0) throw ConfigError(field, "scale must be finite and >= 0");
    const auto& p = spec.params;
    if (spec.shape == "sine" && (p[0] < 1.0 || p[0] != std::floor(p[0])))
        throw ConfigError(field, "sine mode must be a positive integer");
    if ((spec.shape == "bump" || spec.shape == "indicator") && !(0.0 <= p[0] && p[0] < p[1] && p[1] <= 1.0))
        throw ConfigError(field, "need 0 <= a < b <= 1");
    if (spec.shape == "hat" && !(0.0 <= p[0] && p[0] < p[1] && p[1] < p[2] && p[2] <= 1.0))
        throw ConfigError(field, "need 0 <= a < b < c <= 1");
}

GridFunction read_grid_file(const std::string& path, std::size_t n_points) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open state file " + path);
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (!in.eof()) throw InvalidInput("non-numeric content in state file " + path);
    if (v.size() != n_points)
        throw InvalidInput("state file " + path + " has " + std::to_string(v.size()) + " values, expected " +
                           std::to_string(n_points));
    return GridFunction(std::move(v));
}

GridFunction make_shape(const ShapeSpec& spec, std::size_t n_points) {
    validate_shape(spec, "shape");
    if (spec.shape == "file") return spec.scale * read_grid_file(spec.path, n_points);
    const auto& p = spec.params;
    const double pi = std::numbers::pi;
    std::function<double(double)> f;
    if (spec.shape == "sine") {
        const double k = p[0];
        f = [=](double x) { return std::sin(k * pi * x); };
    } else if (spec.shape == "bump") {
        f = [=](double x) { return smooth_bump(x, p[0], p[1]); };
    } else if (spec.shape == "parabola") {
        f = [](double x) { return x * (1.0 - x); };
    } else if (spec.shape == "hat") {
        f = [=](double x) {
            if (x <= p[0] || x >= p[2]) return 0.0;
            return x <= p[1] ? (x - p[0]) / (p[1] - p[0]) : (p[2] - x) / (p[2] - p[1]);
        };
    } else if (spec.shape == "indicator") {
        const double w = 0.05 * (p[1] - p[0]);
        f = [=](double x) { return smoothstep((x - p[0]) / w) * smoothstep((p[1] - x) / w); };
    } else {
        f = [](double) { return 0.0; };
    }
    GridFunction g = GridFunction::sample(n_points, f);
    // sin(k pi) is not exactly zero in floating point
    std::vector<double> v = g.values();
    v.front() = 0.0;
    v.back() = 0.0;
    return spec.scale * GridFunction(std::move(v));
}

}  // namespace heatlab
