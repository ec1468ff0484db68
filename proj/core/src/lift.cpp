#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "heatlab/errors.hpp"
#include "heatlab/synthesis.hpp"

namespace heatlab {
namespace {

// Windows clipped to end at t, keeping their amplitudes.
std::vector<SourceWindow> clip_windows(const std::vector<SourceWindow>& windows, double t) {
    std::vector<SourceWindow> out;
    for (const auto& w : windows) {
        if (w.t_start >= t) break;
        SourceWindow c = w;
        c.t_end = std::min(c.t_end, t);
        out.push_back(std::move(c));
    }
    return out;
}

GridFunction state_at(const std::vector<SourceWindow>& windows, const SineSeries& y0, double t0, double t,
                      std::size_t n) {
    return evaluate_series(evolve_additive_final(y0, clip_windows(windows, t), t, t0), n);
}

struct LiftData {
    std::vector<SourceWindow> windows;
    SineSeries y0;
    double t0;
    std::vector<double> u;  // amplitude * profile on the grid
    std::size_t n;
};

}  // namespace

GridFunction additive_state_at(const MobilePlan& plan, const SineSeries& y0_series, double t_origin,
                               double t) {
    return state_at(plan.source_windows(), y0_series, t_origin, t, plan.n_points);
}

LiftResult lift_to_multiplicative(const MobilePlan& plan, const GridFunction& y0, const LiftOptions& opts) {
    if (y0.min() < 0.0) throw InvalidInput("lift needs y0 >= 0");
    if (norm_l2(y0) == 0.0)
        throw DegenerateState("y0 is identically zero; the reachable set from zero is {0}");
    if (plan.n_points != 0 && plan.n_points != y0.size())
        throw InvalidInput("plan grid and y0 grid differ");

    LiftResult res;
    res.y0_series = project_to_sine(y0, plan.k_max > 0 ? plan.k_max : static_cast<int>(y0.size()) - 2);
    const auto windows = plan.source_windows();
    const std::size_t n = y0.size();
    double rho = std::numeric_limits<double>::infinity();
    double v_sup = 0.0, u_sup = 0.0, resid = 0.0;

    for (std::size_t j = 0; j < plan.controls.size(); ++j) {
        if (!plan.active[j]) continue;
        const SourceWindow w = plan.controls[j].window();
        if (w.t_start < opts.t_origin + opts.start_margin)
            throw InvalidInput("lift window starts at " + std::to_string(w.t_start) +
                               ", before the positivity margin after the origin");
        auto data = std::make_shared<LiftData>();
        data->windows = windows;
        data->y0 = res.y0_series;
        data->t0 = opts.t_origin;
        data->n = n;
        data->u.resize(n);
        const auto& moll = plan.decomposition.mollified[j].values;
        for (std::size_t i = 0; i < n; ++i) data->u[i] = w.amplitude * moll[i];

        double v_sup_w = 0.0;
        const int S = std::max(2, opts.samples_per_window);
        for (int s = 0; s < S; ++s) {
            const double t = s + 1 == S ? w.t_end : w.t_start + (w.t_end - w.t_start) * s / (S - 1);
            const GridFunction y = state_at(windows, res.y0_series, opts.t_origin, t, n);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = data->u[i];
                if (!(u > 0.0)) continue;
                rho = std::min(rho, y[i]);
                u_sup = std::max(u_sup, u);
                if (!(y[i] > 0.0)) continue;
                const double v = u / y[i];
                v_sup_w = std::max(v_sup_w, v);
                resid = std::max(resid, std::abs(u - v * y[i]) / u);
            }
        }
        v_sup = std::max(v_sup, v_sup_w);

        ReactionField field = [data](double t) {
            const GridFunction y = state_at(data->windows, data->y0, data->t0, t, data->n);
            std::vector<double> v(data->n, 0.0);
            for (std::size_t i = 0; i < data->n; ++i) {
                if (!(data->u[i] > 0.0)) continue;
                if (!(y[i] > 0.0)) throw DegenerateState("additive state vanished on the control support");
                v[i] = data->u[i] / y[i];
            }
            return GridFunction(std::move(v));
        };
        const double len = w.t_end - w.t_start;
        const double cap = v_sup_w > 0.0 ? std::min(len / 64.0, opts.step_growth / v_sup_w) : len / 64.0;
        res.windows.push_back(ReactionWindow{w.t_start, w.t_end, std::move(field), w.support, cap});
    }
    std::sort(res.windows.begin(), res.windows.end(),
              [](const ReactionWindow& a, const ReactionWindow& b) { return a.t_start < b.t_start; });

    res.rho_measured = rho == std::numeric_limits<double>::infinity() ? 0.0 : rho;
    if (!res.windows.empty() && !(res.rho_measured >= opts.floor_rho))
        throw DegenerateState("state minimum " + std::to_string(res.rho_measured) +
                              " on the control support is below the lift floor");
    res.u_sup = u_sup;
    res.v_sup = v_sup;
    res.identity_residual = resid;
    res.recommended_dt = v_sup > 0.0 ? opts.step_growth / v_sup : 0.0;
    return res;
}

}  // namespace heatlab
