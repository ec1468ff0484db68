#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/heat.hpp"
#include "snapshots.hpp"

namespace heatlab {
namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// One exact Duhamel step of length tau with constant source coefficients c.
void advance(std::vector<double>& a, const std::vector<double>* c, double tau) {
    if (tau <= 0.0) return;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const double lam = kPi2 * k * k;
        a[i] *= std::exp(-lam * tau);
        if (c) a[i] += (*c)[i] * (-std::expm1(-lam * tau)) / lam;
    }
}

// Series profiles are checked on the grid where they interpolate exactly.
GridFunction profile_on_grid(const SourceWindow& w) {
    if (std::holds_alternative<GridFunction>(w.profile)) return std::get<GridFunction>(w.profile);
    const auto& s = std::get<SineSeries>(w.profile);
    return evaluate_series(s, static_cast<std::size_t>(std::max(s.k_max() + 2, 3)));
}

struct Prepared {
    double t_start, t_end;
    std::vector<double> c;
};

std::vector<Prepared> prepare(const std::vector<SourceWindow>& windows, double t0, double T, int k_max) {
    std::vector<Prepared> out;
    out.reserve(windows.size());
    double prev_end = t0;
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto& win = windows[w];
        if (!(win.t_start < win.t_end)) throw InvalidInput("source window needs t_start < t_end");
        if (win.t_start < t0 || win.t_end > T) throw InvalidInput("source window outside the horizon");
        if (w > 0 && win.t_start < prev_end) throw InvalidInput("source windows overlap or are unordered");
        prev_end = win.t_end;

        const GridFunction g = profile_on_grid(win);
        double scale = 0.0;
        for (double v : g.values()) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            const bool inside = x > win.support.lo && x < win.support.hi;
            if (!inside && std::abs(g[i]) > 1e-12 * std::max(1.0, scale))
                throw InvalidInput("source profile has mass outside its declared support");
        }
        out.push_back({win.t_start, win.t_end, source_series(win, k_max).coeffs()});
    }
    return out;
}

// Advance a from t to t_to through the prepared windows.
void advance_to(std::vector<double>& a, double& t, double t_to, const std::vector<Prepared>& wins) {
    while (t < t_to) {
        const Prepared* active = nullptr;
        double seg_end = t_to;
        for (const auto& w : wins) {
            if (w.t_start <= t && t < w.t_end) {
                active = &w;
                seg_end = std::min(t_to, w.t_end);
                break;
            }
            if (w.t_start > t) {
                seg_end = std::min(t_to, w.t_start);
                break;
            }
        }
        advance(a, active ? &active->c : nullptr, seg_end - t);
        t = seg_end;
    }
}

}  // namespace

SineSeries evolve_free(const SineSeries& y0, double t) {
    if (t < 0.0) throw InvalidInput("free evolution needs t >= 0");
    std::vector<double> a = y0.coeffs();
    advance(a, nullptr, t);
    return SineSeries(std::move(a));
}

SineSeries source_series(const SourceWindow& w, int k_max) {
    SineSeries s = std::holds_alternative<GridFunction>(w.profile)
                       ? project_to_sine(std::get<GridFunction>(w.profile), k_max)
                       : std::get<SineSeries>(w.profile);
    std::vector<double> c(static_cast<std::size_t>(k_max), 0.0);
    for (int k = 1; k <= std::min(k_max, s.k_max()); ++k) c[static_cast<std::size_t>(k - 1)] = w.amplitude * s.coeff(k);
    return SineSeries(std::move(c));
}

SineSeries evolve_additive_final(const SineSeries& y0, const std::vector<SourceWindow>& windows,
                                 double T, double t0) {
    if (T < t0) throw InvalidInput("horizon T must not precede t0");
    const auto wins = prepare(windows, t0, T, y0.k_max());
    std::vector<double> a = y0.coeffs();
    double t = t0;
    advance_to(a, t, T, wins);
    return SineSeries(std::move(a));
}

Trajectory evolve_additive(const SineSeries& y0, const std::vector<SourceWindow>& windows, double T,
                           const SpectralOptions& opts) {
    if (T <= opts.t_start) throw InvalidInput("horizon T must exceed the start time");
    const auto wins = prepare(windows, opts.t_start, T, y0.k_max());

    std::vector<std::pair<double, double>> spans;
    bool sources_nonneg = true;
    for (const auto& w : windows) {
        spans.emplace_back(w.t_start, w.t_end);
        const GridFunction g = profile_on_grid(w);
        if (w.amplitude < 0.0 || g.min() < 0.0) sources_nonneg = false;
    }
    const auto times = detail::snapshot_times(opts.t_start, T, spans, opts.snapshot_cap);

    Trajectory traj;
    std::vector<double> a = y0.coeffs();
    double t = opts.t_start;
    traj.diag.min_value = std::numeric_limits<double>::infinity();
    traj.diag.max_value = -std::numeric_limits<double>::infinity();
    for (double ts : times) {
        advance_to(a, t, ts, wins);
        GridFunction g = evaluate_series(SineSeries(a), opts.n_eval);
        detail::record_snapshot(traj, ts, g, opts.store_states);
        if (ts == T) traj.final = std::move(g);
    }
    traj.final_series = SineSeries(std::move(a));
    const GridFunction g0 = evaluate_series(y0, opts.n_eval);
    const double y0_min = g0.min();
    traj.diag.mp_bound_K = std::max(0.0, g0.max());
    traj.diag.negativity_flag =
        sources_nonneg && y0_min >= -kNegativityTol && traj.diag.min_value < -kNegativityTol;
    return traj;
}

}  // namespace heatlab
