#pragma once

#include <string>
#include <vector>

#include "heatlab/field.hpp"

namespace heatlab {

/// Named analytic state or a file of grid values.
///   sine [k]            sin(k pi x)
///   bump [a, b]         C-infinity bump supported on (a, b)
///   parabola            x (1 - x)
///   hat [a, b, c]       piecewise linear, peak 1 at b
///   indicator [a, b]    indicator of (a, b) with smoothstep ramps of width 0.05 (b - a)
///   zero
///   file                whitespace-separated values, one per grid point
struct ShapeSpec {
    std::string shape = "zero";
    std::vector<double> params;
    double scale = 1.0;
    std::string path;
};

/// Throws ConfigError naming `field` when the spec is malformed.
void validate_shape(const ShapeSpec& spec, const std::string& field);

GridFunction make_shape(const ShapeSpec& spec, std::size_t n_points);

/// Values read from a text file; the count must match n_points.
GridFunction read_grid_file(const std::string& path, std::size_t n_points);

}  // namespace heatlab
