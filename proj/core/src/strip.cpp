#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "heatlab/errors.hpp"
#include "heatlab/obstruction.hpp"
#include "heatlab/sine_transform.hpp"

namespace heatlab {
namespace {

// Piecewise-linear reading of a grid function, matching the solver's data.
double interpolate(const GridFunction& f, double x) {
    const double h = f.spacing();
    const double s = std::clamp(x / h, 0.0, static_cast<double>(f.size() - 1));
    const auto i = std::min(static_cast<std::size_t>(s), f.size() - 2);
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * f[i] + w * f[i + 1];
}

}  // namespace

bool StripReport::pass() const {
    return std::all_of(samples.begin(), samples.end(), [](const StripSample& s) { return s.pass; });
}

double strip_floor(const GridFunction& y0, const Interval& strip, double T, int strip_modes) {
    if (!(T >= 0.0)) throw InvalidInput("horizon T must be nonnegative");
    if (strip_modes < 1) throw InvalidInput("strip_modes must be positive");
    const double L = strip.length();
    // fine quadrature grid; only the first strip_modes coefficients are kept
    const std::size_t N = std::max<std::size_t>(4096, static_cast<std::size_t>(strip_modes) + 1);
    std::vector<double> f(N - 1), Y(N - 1);
    for (std::size_t i = 1; i < N; ++i)
        f[i - 1] = interpolate(y0, strip.lo + L * static_cast<double>(i) / static_cast<double>(N));
    dst1(f.data(), Y.data(), N - 1);

    double sq = 0.0;
    const double pi = std::numbers::pi;
    for (int k = 1; k <= strip_modes && k < static_cast<int>(N); ++k) {
        const double d = Y[static_cast<std::size_t>(k - 1)] / static_cast<double>(N);
        const double lam = (k * pi / L) * (k * pi / L);
        sq += d * d * std::exp(-2.0 * lam * T);
    }
    return std::sqrt(0.5 * L * sq);
}

StripReport verify_strip_obstruction(const GridFunction& y0, const std::vector<std::vector<ReactionWindow>>& v_samples,
                                     const Interval& omega, const Interval& strip, double T,
                                     const StripOptions& opts) {
    if (strip.overlaps(omega)) throw InvalidInput("strip must be disjoint from the control support");
    if (y0.min() < 0.0) throw InvalidInput("strip obstruction needs y0 >= 0");
    if (y0.max() == 0.0) throw InvalidInput("strip obstruction needs y0 not identically zero");
    for (const auto& v : v_samples)
        for (const auto& w : v)
            if (w.support.lo < omega.lo || w.support.hi > omega.hi)
                throw InvalidInput("reaction samples must be supported in the control interval");

    StripReport rep;
    rep.floor = strip_floor(y0, strip, T, opts.strip_modes);
    rep.vacuous = rep.floor <= opts.comparison_tol;
    int id = 0;
    for (const auto& v : v_samples) {
        CnOptions o;
        o.positivity_dt = true;
        o.snapshot_cap = 2;
        const Trajectory tr = evolve_multiplicative(y0, v, T, opts.dt, o);
        StripSample s;
        s.id = id++;
        s.strip_norm = std::sqrt(integral_sq(tr.final, strip.lo, strip.hi));
        s.min_value = tr.diag.min_value;
        s.pass = s.strip_norm >= rep.floor - opts.comparison_tol;
        rep.samples.push_back(s);
    }
    return rep;
}

}  // namespace heatlab
