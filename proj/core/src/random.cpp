#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/random.hpp"

namespace heatlab {

double smooth_bump(double x, double a, double b) {
    if (!(x > a && x < b)) return 0.0;
    const double s = (2.0 * x - a - b) / (b - a);
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

GridFunction random_trig_profile(Rng& rng, const Interval& support, std::size_t n_points, int terms) {
    std::vector<double> c(static_cast<std::size_t>(terms)), ph(static_cast<std::size_t>(terms));
    for (int i = 0; i < terms; ++i) {
        c[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
        ph[static_cast<std::size_t>(i)] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    const double offset = rng.uniform(0.0, 1.0);
    return GridFunction::sample(n_points, [&](double x) {
        if (!support.contains(x)) return 0.0;
        const double s = (x - support.lo) / support.length();
        double acc = offset;
        for (int i = 0; i < terms; ++i)
            acc += c[static_cast<std::size_t>(i)] *
                   std::cos(std::numbers::pi * (i + 1) * s + ph[static_cast<std::size_t>(i)]);
        return std::max(acc, 0.0);
    });
}

PiecewiseControl random_source_control(Rng& rng, const Interval& support, double T, std::size_t n_points,
                                       int windows, double amplitude_max) {
    if (windows < 1) throw InvalidInput("need at least one window");
    PiecewiseControl u;
    for (int w = 0; w < windows; ++w) {
        const double a = T * w / windows;
        const double b = w + 1 == windows ? T : T * (w + 1) / windows;
        GridFunction prof = random_trig_profile(rng, support, n_points);
        u.push_back(SourceWindow{a, b, std::move(prof), support, rng.uniform(0.0, amplitude_max)});
    }
    return u;
}

BoundarySignal random_boundary_signal(Rng& rng, double T, int windows, double u_max) {
    if (windows < 1) throw InvalidInput("need at least one window");
    BoundarySignal s;
    for (int w = 0; w < windows; ++w) {
        const double a = T * w / windows;
        const double b = w + 1 == windows ? T : T * (w + 1) / windows;
        const double u0 = rng.uniform(0.0, u_max);
        const double u1 = rng.uniform(0.0, u_max);
        s.windows.push_back(BoundaryPiece{a, b, u0, u1});
    }
    return s;
}

std::vector<ReactionWindow> random_reaction(Rng& rng, const Interval& support, double T, std::size_t n_points,
                                            double bound, bool nonpositive, int windows) {
    if (windows < 1) throw InvalidInput("need at least one window");
    std::vector<ReactionWindow> out;
    for (int w = 0; w < windows; ++w) {
        const double a = T * w / windows;
        const double b = w + 1 == windows ? T : T * (w + 1) / windows;
        const double c0 = rng.uniform(-1.0, 1.0), c1 = rng.uniform(-1.0, 1.0), c2 = rng.uniform(-1.0, 1.0);
        const double ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
        GridFunction v = GridFunction::sample(n_points, [&](double x) {
            if (!support.contains(x)) return 0.0;
            const double s = (x - support.lo) / support.length();
            double r = (c0 + c1 * std::cos(2.0 * std::numbers::pi * s + ph) + c2 * std::sin(4.0 * std::numbers::pi * s)) / 3.0;
            if (nonpositive) r = -std::abs(r);
            return bound * r;
        });
        out.push_back(ReactionWindow{a, b, std::move(v), support});
    }
    return out;
}

GridFunction random_smooth_bump(Rng& rng, std::size_t n_points) {
    const int count = rng.integer(1, 3);
    std::vector<double> lo, hi, amp;
    for (int i = 0; i < count; ++i) {
        const double width = rng.uniform(0.2, 0.6);
        const double a = rng.uniform(0.02, 0.98 - width);
        lo.push_back(a);
        hi.push_back(a + width);
        amp.push_back(rng.uniform(0.2, 1.0));
    }
    return GridFunction::sample(n_points, [&](double x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < lo.size(); ++i) acc += amp[i] * smooth_bump(x, lo[i], hi[i]);
        return acc;
    });
}

}  // namespace heatlab
