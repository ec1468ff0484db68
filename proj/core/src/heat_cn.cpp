#include <algorithm>
#include <cmath>
#include <limits>

#include "heatlab/errors.hpp"
#include "heatlab/heat.hpp"
#include "snapshots.hpp"

namespace heatlab {
namespace {

// Symmetric tridiagonal system with constant off-diagonal, factored once.
class Tridiag {
public:
    void factor(const std::vector<double>& diag, double off) {
        const std::size_t m = diag.size();
        off_ = off;
        cp_.resize(m);
        inv_.resize(m);
        double denom = diag[0];
        for (std::size_t i = 0; i < m; ++i) {
            if (i > 0) denom = diag[i] - off * cp_[i - 1];
            inv_[i] = 1.0 / denom;
            cp_[i] = off * inv_[i];
        }
    }

    void solve(std::vector<double>& d) const {
        const std::size_t m = d.size();
        d[0] *= inv_[0];
        for (std::size_t i = 1; i < m; ++i) d[i] = (d[i] - off_ * d[i - 1]) * inv_[i];
        for (std::size_t i = m - 1; i-- > 0;) d[i] -= cp_[i] * d[i + 1];
    }

private:
    double off_ = 0.0;
    std::vector<double> cp_, inv_;
};

// v at interior points, zero outside the window's open support.
std::vector<double> interior_coefficient(const ReactionWindow& w, const GridFunction& grid_like,
                                         double t) {
    const std::size_t n = grid_like.size();
    std::vector<double> v(n - 2, 0.0);
    GridFunction field;
    if (std::holds_alternative<GridFunction>(w.coefficient)) field = std::get<GridFunction>(w.coefficient);
    if (std::holds_alternative<ReactionField>(w.coefficient)) field = std::get<ReactionField>(w.coefficient)(t);
    if (field.size() != 0 && field.size() != n) throw InvalidInput("reaction coefficient grid size mismatch");
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double x = grid_like.x(i);
        if (!w.support.contains(x)) continue;
        v[i - 1] = std::holds_alternative<double>(w.coefficient) ? std::get<double>(w.coefficient) : field[i];
    }
    return v;
}

bool is_time_dependent(const ReactionWindow& w) {
    return std::holds_alternative<ReactionField>(w.coefficient);
}

struct Segment {
    double a, b;
    const ReactionWindow* w;
};

}  // namespace

Trajectory evolve_multiplicative(const GridFunction& y0, const std::vector<ReactionWindow>& windows,
                                 double T, double dt, const CnOptions& opts) {
    if (!(dt > 0.0)) throw InvalidInput("dt must be positive");
    if (!(T > opts.t_start)) throw InvalidInput("horizon T must exceed the start time");
    if (!y0.is_dirichlet(1e-12)) throw InvalidInput("y0 must vanish at both endpoints");
    const std::size_t n = y0.size();
    const double h = y0.spacing();
    const double inv_h2 = 1.0 / (h * h);

    std::vector<Segment> segs;
    double cursor = opts.t_start;
    bool v_nonpos = true;
    for (const auto& w : windows) {
        if (!(w.t_start < w.t_end)) throw InvalidInput("reaction window needs t_start < t_end");
        if (w.t_start < cursor - 1e-15 || w.t_end > T + 1e-15)
            throw InvalidInput("reaction windows must be ordered, disjoint and inside the horizon");
        if (w.t_start > cursor) segs.push_back({cursor, w.t_start, nullptr});
        segs.push_back({std::max(w.t_start, cursor), std::min(w.t_end, T), &w});
        cursor = std::min(w.t_end, T);
        if (std::holds_alternative<double>(w.coefficient) && std::get<double>(w.coefficient) > 0.0) v_nonpos = false;
        if (std::holds_alternative<GridFunction>(w.coefficient) && std::get<GridFunction>(w.coefficient).max() > 0.0)
            v_nonpos = false;
        if (is_time_dependent(w)) v_nonpos = false;
    }
    if (cursor < T) segs.push_back({cursor, T, nullptr});

    // effective step per segment, validated before any work happens
    std::vector<double> seg_dt(segs.size(), dt);
    for (std::size_t s = 0; s < segs.size(); ++s) {
        double d = dt;
        const auto* w = segs[s].w;
        if (w && w->max_dt > 0.0) d = std::min(d, w->max_dt);
        if (opts.positivity_dt) {
            double vneg = 0.0, vpos = 0.0;
            if (w) {
                for (double v : interior_coefficient(*w, y0, segs[s].a)) {
                    vneg = std::max(vneg, -v);
                    vpos = std::max(vpos, v);
                }
            }
            d = std::min(d, 1.0 / (inv_h2 + 0.5 * vneg));
            if (vpos > 0.0) d = std::min(d, 1.9 / vpos);
        }
        if (w && d >= w->t_end - w->t_start)
            throw InvalidInput("dt must be smaller than every reaction window length");
        seg_dt[s] = d;
    }

    std::vector<std::pair<double, double>> spans;
    for (const auto& w : windows) spans.emplace_back(w.t_start, w.t_end);
    const auto targets = detail::snapshot_times(opts.t_start, T, spans, opts.snapshot_cap);
    std::size_t next_target = 0;

    Trajectory traj;
    traj.diag.min_value = std::numeric_limits<double>::infinity();
    traj.diag.max_value = -std::numeric_limits<double>::infinity();
    std::vector<double> full = y0.values();
    const auto snapshot = [&](double t) {
        detail::record_snapshot(traj, t, GridFunction(full), true);
    };
    snapshot(opts.t_start);
    while (next_target < targets.size() && targets[next_target] <= opts.t_start) ++next_target;

    const std::size_t m = n - 2;
    std::vector<double> y(full.begin() + 1, full.end() - 1), rhs(m), diag(m);
    Tridiag solver;
    double factored_step = -1.0;
    const ReactionWindow* factored_for = nullptr;
    bool stopped = false;
    double t = opts.t_start;

    for (std::size_t s = 0; s < segs.size() && !stopped; ++s) {
        const Segment& seg = segs[s];
        const double d = seg_dt[s];
        const bool varying = seg.w && is_time_dependent(*seg.w);
        std::vector<double> v_now = seg.w ? interior_coefficient(*seg.w, y0, seg.a) : std::vector<double>(m, 0.0);
        std::vector<double> v_next = v_now;
        t = seg.a;
        while (t < seg.b) {
            double step = std::min(d, seg.b - t);
            // fold a sliver of a last step into this one
            if (seg.b - t - step < 1e-9 * d) step = seg.b - t;
            const double t_next = step == seg.b - t ? seg.b : t + step;
            if (varying) v_next = interior_coefficient(*seg.w, y0, t_next);

            const double r = 0.5 * step * inv_h2;
            for (std::size_t i = 0; i < m; ++i) {
                const double left = i > 0 ? y[i - 1] : 0.0;
                const double right = i + 1 < m ? y[i + 1] : 0.0;
                rhs[i] = y[i] + r * (left - 2.0 * y[i] + right) + 0.5 * step * v_now[i] * y[i];
            }
            if (varying || step != factored_step || factored_for != seg.w) {
                for (std::size_t i = 0; i < m; ++i) diag[i] = 1.0 + 2.0 * r - 0.5 * step * v_next[i];
                solver.factor(diag, -r);
                factored_step = varying ? -1.0 : step;
                factored_for = seg.w;
            }
            solver.solve(rhs);
            y.swap(rhs);
            t = t_next;
            if (varying) v_now.swap(v_next);

            double lo = 0.0, hi = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                full[i + 1] = y[i];
                lo = std::min(lo, y[i]);
                hi = std::max(hi, y[i]);
            }
            traj.diag.min_value = std::min(traj.diag.min_value, lo);
            traj.diag.max_value = std::max(traj.diag.max_value, hi);

            if (next_target < targets.size() && t >= targets[next_target] && t < T) {
                snapshot(t);
                while (next_target < targets.size() && targets[next_target] <= t) ++next_target;
            }
            if (opts.observer && !opts.observer(t, full)) {
                stopped = true;
                break;
            }
        }
    }

    if (traj.times.back() != t) snapshot(t);
    traj.final = GridFunction(full);
    traj.diag.mp_bound_K = std::max(0.0, y0.max());
    traj.diag.negativity_flag =
        v_nonpos && y0.min() >= 0.0 && traj.diag.min_value < -opts.negativity_tol;
    return traj;
}

}  // namespace heatlab
