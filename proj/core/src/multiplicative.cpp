#include <string>

#include "heatlab/errors.hpp"
#include "heatlab/synthesis.hpp"

namespace heatlab {

MultiplicativePlan synthesize_multiplicative_mobile(const GridFunction& y0, const GridFunction& y_d,
                                                    double length_l, double T, double epsilon,
                                                    const MultiplicativeOptions& opts) {
    if (y0.size() != y_d.size()) throw InvalidInput("y0 and y_d must share a grid");
    if (y0.min() < 0.0 || y_d.min() < 0.0) throw InvalidInput("y0 and y_d must be nonnegative");
    if (norm_l2(y0) == 0.0) throw DegenerateState("y0 is identically zero");
    const double t0 = opts.damping.t_start;
    if (!(T > t0)) throw InvalidInput("T must exceed the start time");

    MultiplicativePlan plan;
    // Stage 1 drives the state below eps/2 within the first half of the horizon.
    try {
        plan.damping = damping_sweep(y0, length_l, epsilon, t0 + 0.5 * (T - t0), opts.damping);
    } catch (const std::exception& e) {
        throw StageFailure("damping", e.what());
    }
    plan.T_M = plan.damping.T_M;
    const GridFunction& yM = plan.damping.final_state;

    // Stage 2 steers the zero-data part to y_d, which puts the full additive
    // state within eps/2 of y_d + yhat_1(T).
    MobileOptions aopts = opts.additive;
    aopts.t_origin = plan.T_M;
    try {
        plan.additive = synthesize_mobile_additive(y_d, length_l, T, epsilon / 2.0, aopts);
    } catch (const std::exception& e) {
        throw StageFailure("additive", e.what());
    }

    LiftOptions lopts = opts.lift;
    lopts.t_origin = plan.T_M;
    try {
        plan.lift = lift_to_multiplicative(plan.additive, yM, lopts);
    } catch (const std::exception& e) {
        throw StageFailure("lift", e.what());
    }

    const SineSeries& yM_s = plan.lift.y0_series;
    const std::size_t n = y0.size();
    const GridFunction residue = evaluate_series(evolve_free(yM_s, T - plan.T_M), n);
    // With v = u / y the multiplicative and additive trajectories coincide, so
    // the additive final state is the multiplicative one.
    plan.final_state =
        evaluate_series(evolve_additive_final(yM_s, plan.additive.source_windows(), T, plan.T_M), n);
    plan.residue_norm = norm_l2(residue);
    plan.stage2_error = distance_l2(plan.final_state, y_d + residue);
    plan.total_error = distance_l2(plan.final_state, y_d);

    plan.v_windows = plan.damping.windows;
    plan.v_windows.insert(plan.v_windows.end(), plan.lift.windows.begin(), plan.lift.windows.end());

    if (plan.damping.certificate.shortcut) {
        plan.schedule = plan.additive.schedule;
    } else {
        std::vector<double> breaks = plan.damping.schedule.breakpoints;
        std::vector<double> pos = plan.damping.schedule.positions;
        const auto& ab = plan.additive.schedule.breakpoints;
        breaks.insert(breaks.end(), ab.begin() + 1, ab.end());
        const auto& ap = plan.additive.schedule.positions;
        pos.insert(pos.end(), ap.begin(), ap.end());
        plan.schedule = SupportSchedule(length_l, std::move(breaks), std::move(pos));
    }
    return plan;
}

}  // namespace heatlab
