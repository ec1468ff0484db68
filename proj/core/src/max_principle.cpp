#include <algorithm>
#include <limits>

#include "heatlab/heat.hpp"

namespace heatlab {

MpReport maximum_principle_report(const Trajectory& traj, const MpContext& ctx) {
    MpReport r;
    r.min_value = traj.diag.min_value;
    r.max_value = traj.diag.max_value;

    r.i_applicable = ctx.y0_nonneg && ctx.u_nonneg && ctx.boundary_max >= 0.0;
    r.i_pass = !r.i_applicable || r.min_value >= -ctx.negativity_tol;

    r.K = std::max({0.0, ctx.initial_max, ctx.boundary_max});
    r.ii_applicable = ctx.u_zero && ctx.v_nonpos;
    r.ii_pass = !r.ii_applicable || r.max_value <= r.K + ctx.bound_tol;

    r.iii_applicable = ctx.y0_nonneg && ctx.y0_nonzero && ctx.u_nonneg && ctx.v_nonpos;
    r.interior_min = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < traj.times.size() && s < traj.diag.interior_min.size(); ++s) {
        const double t = traj.times[s];
        if (t > traj.times.front() && t >= ctx.positivity_from)
            r.interior_min = std::min(r.interior_min, traj.diag.interior_min[s]);
    }
    const bool any = r.interior_min != std::numeric_limits<double>::infinity();
    if (!any) r.interior_min = 0.0;
    r.iii_pass = !r.iii_applicable || !any || r.interior_min > 0.0;
    return r;
}

}  // namespace heatlab
