#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/obstruction.hpp"

namespace heatlab {
namespace {

double dx_left(const std::vector<double>& y, double h) { return (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h); }

double dx_right(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    return (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
}

}  // namespace

P1Report check_p1_bounds(const GridFunction& y0, const GridFunction& v, double T, const P1Options& opts) {
    if (y0.size() < 3) throw InvalidInput("grid too small");
    if (v.size() != y0.size()) throw InvalidInput("v and y0 grids differ");
    if (v.max() > 0.0) throw InvalidInput("P1 bounds need v <= 0");
    if (y0.min() < 0.0) throw InvalidInput("P1 bounds need y0 >= 0");
    if (!(T > 0.0)) throw InvalidInput("horizon T must be positive");

    const std::size_t n = y0.size();
    const double h = y0.spacing();
    const double e = std::numbers::e;
    double ypp_pos = 0.0;
    double ype_max = -std::numeric_limits<double>::infinity();
    double ype_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double d1;
        if (i == 0) d1 = dx_left(y0.values(), h);
        else if (i + 1 == n) d1 = dx_right(y0.values(), h);
        else {
            d1 = (y0[i + 1] - y0[i - 1]) / (2.0 * h);
            ypp_pos = std::max(ypp_pos, (y0[i + 1] - 2.0 * y0[i] + y0[i - 1]) / (h * h));
        }
        ype_max = std::max(ype_max, d1 * std::exp(y0[i]));
        ype_min = std::min(ype_min, d1 * std::exp(y0[i]));
    }

    P1Report rep;
    rep.bound_a = ypp_pos;
    rep.bound_b = e * ype_max;
    rep.bound_c = e * ype_min;
    rep.max_yt = -std::numeric_limits<double>::infinity();
    rep.min_yx0 = rep.max_yx0 = dx_left(y0.values(), h);
    rep.min_yx1 = rep.max_yx1 = dx_right(y0.values(), h);

    std::vector<double> prev = y0.values();
    double prev_t = 0.0;
    CnOptions o;
    o.positivity_dt = opts.positivity_dt;
    o.snapshot_cap = 2;
    o.observer = [&](double t, const std::vector<double>& y) {
        const double step = t - prev_t;
        if (step > 0.0)
            for (std::size_t i = 1; i + 1 < n; ++i) rep.max_yt = std::max(rep.max_yt, (y[i] - prev[i]) / step);
        const double a = dx_left(y, h), b = dx_right(y, h);
        rep.min_yx0 = std::min(rep.min_yx0, a);
        rep.max_yx0 = std::max(rep.max_yx0, a);
        rep.min_yx1 = std::min(rep.min_yx1, b);
        rep.max_yx1 = std::max(rep.max_yx1, b);
        prev = y;
        prev_t = t;
        return true;
    };
    ReactionWindow w{0.0, T, v, Interval(0.0, 1.0)};
    const Trajectory tr = evolve_multiplicative(y0, {w}, T, opts.dt, o);
    rep.min_value = tr.diag.min_value;
    if (rep.max_yt == -std::numeric_limits<double>::infinity()) rep.max_yt = 0.0;

    rep.a_pass = rep.max_yt <= rep.bound_a + opts.tol;
    rep.b_pass = rep.min_yx0 >= -opts.tol && rep.max_yx0 <= rep.bound_b + opts.tol;
    rep.c_pass = rep.min_yx1 >= rep.bound_c - opts.tol && rep.max_yx1 <= opts.tol;
    return rep;
}

}  // namespace heatlab
