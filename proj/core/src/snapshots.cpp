#include "snapshots.hpp"

#include <algorithm>
#include <cmath>

namespace heatlab::detail {

std::vector<double> snapshot_times(double t0, double T,
                                   const std::vector<std::pair<double, double>>& windows,
                                   std::size_t cap) {
    cap = std::max<std::size_t>(cap, 2);
    std::vector<double> refine;
    for (const auto& [a, b] : windows) {
        const double L = b - a;
        refine.insert(refine.end(), {a, a + 0.5 * L, b});
        // geometric spacing away from each edge resolves transients that a
        // uniform grid would step straight over
        for (int i = 0; i < 24; ++i) {
            const double d = L * std::ldexp(1.0, i);
            if (b + d < T) refine.push_back(b + d);
            if (a - d > t0) refine.push_back(a - d);
        }
    }
    std::sort(refine.begin(), refine.end());
    refine.erase(std::unique(refine.begin(), refine.end()), refine.end());
    if (refine.size() + 2 > cap / 2 && !refine.empty()) {
        const std::size_t keep = std::max<std::size_t>(1, cap / 2);
        std::vector<double> thinned;
        for (std::size_t i = 0; i < keep; ++i)
            thinned.push_back(refine[i * refine.size() / keep]);
        refine = std::move(thinned);
    }
    std::vector<double> ts = refine;
    const std::size_t n_uniform = cap - refine.size();
    for (std::size_t i = 0; n_uniform >= 2 && i < n_uniform; ++i)
        ts.push_back(t0 + (T - t0) * static_cast<double>(i) / static_cast<double>(n_uniform - 1));
    for (double& t : ts) t = std::clamp(t, t0, T);
    ts.push_back(t0);
    ts.push_back(T);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    while (ts.size() > cap) ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(ts.size() / 2));
    return ts;
}

void record_snapshot(Trajectory& traj, double t, const GridFunction& g, bool keep) {
    traj.times.push_back(t);
    traj.diag.l2_norms.push_back(norm_l2(g));
    double imin = g.size() > 2 ? g[1] : 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) imin = std::min(imin, g[i]);
    traj.diag.interior_min.push_back(imin);
    traj.diag.min_value = std::min(traj.diag.min_value, g.min());
    traj.diag.max_value = std::max(traj.diag.max_value, g.max());
    if (keep) traj.states.push_back(g);
}

}  // namespace heatlab::detail
