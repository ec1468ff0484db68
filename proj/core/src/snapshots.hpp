#pragma once

#include <utility>
#include <vector>

#include "heatlab/heat.hpp"

namespace heatlab::detail {

/// Uniform coarse times plus geometric refinement around every window edge.
/// Always contains t0 and T; at most cap entries.
std::vector<double> snapshot_times(double t0, double T,
                                   const std::vector<std::pair<double, double>>& windows,
                                   std::size_t cap);

/// Appends time, norms and extrema; the state itself only when keep is set.
void record_snapshot(Trajectory& traj, double t, const GridFunction& g, bool keep);

}  // namespace heatlab::detail
