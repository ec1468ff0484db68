#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "heatlab/field.hpp"
#include "heatlab/heat.hpp"

using namespace heatlab;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;

GridFunction sine_grid(std::size_t n) {
    return GridFunction::sample(n, [](double x) { return std::sin(pi * x); });
}

double bump(double x, double a, double b) {
    const double s = (2.0 * x - a - b) / (b - a);
    return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
}

}  // namespace

TEST_CASE("free evolution decays each mode", "[heat][free]") {
    const SineSeries y = evolve_free(SineSeries({0.5}), 0.1);
    REQUIRE_THAT(2.0 * y.coeff(1), WithinAbs(std::exp(-pi * pi / 10.0), 1e-14));
    REQUIRE_THAT(2.0 * y.coeff(1), WithinAbs(0.37271, 1e-5));

    const SineSeries s({0.1, -0.3, 0.7});
    const SineSeries same = evolve_free(s, 0.0);
    for (int k = 1; k <= 3; ++k) REQUIRE(same.coeff(k) == s.coeff(k));
}

TEST_CASE("free evolution obeys the first-eigenvalue bound", "[heat][free]") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(40);
        for (auto& v : c) v = d(gen);
        const SineSeries y0(c);
        const double T = 0.001 * (trial + 1);
        REQUIRE(norm_l2(evolve_free(y0, T)) <= std::exp(-pi * pi * T) * norm_l2(y0) * (1 + 1e-14));
    }
}

TEST_CASE("a late pulse reaches the damped target amplitude", "[heat][additive]") {
    const double delta = 0.01, T = 1.0;
    SourceWindow w{T - delta, T, SineSeries({0.5}), Interval(0.0, 1.0), 1.0 / delta};
    const Trajectory tr = evolve_additive(SineSeries::zeros(4), {w}, T);
    REQUIRE(tr.final_series);
    const double r = pi * pi * delta;
    const double mu = (1.0 - std::exp(-r)) / r;
    REQUIRE_THAT(2.0 * tr.final_series->coeff(1), WithinAbs(mu, 1e-12));
    REQUIRE_THAT(mu, WithinAbs(0.95225, 1e-4));
}

TEST_CASE("additive evolution without windows is free evolution", "[heat][additive]") {
    const SineSeries y0({0.2, 0.1, -0.05});
    const SineSeries a = evolve_additive_final(y0, {}, 0.3);
    const SineSeries b = evolve_free(y0, 0.3);
    for (int k = 1; k <= 3; ++k) REQUIRE_THAT(a.coeff(k), WithinAbs(b.coeff(k), 1e-15));
}

TEST_CASE("nonnegative sources from zero stay nonnegative", "[heat][additive][mp]") {
    const std::size_t n = 513;
    const auto p1 = GridFunction::sample(n, [](double x) { return bump(x, 0.1, 0.4); });
    const auto p2 = GridFunction::sample(n, [](double x) { return bump(x, 0.5, 0.9); });
    const std::vector<SourceWindow> ws{{0.1, 0.2, p1, Interval(0.1, 0.4), 3.0},
                                       {0.3, 0.5, p2, Interval(0.5, 0.9), 2.0}};
    SpectralOptions o;
    o.n_eval = n;
    const Trajectory tr = evolve_additive(SineSeries::zeros(int(n) - 2), ws, 0.6, o);
    REQUIRE(tr.diag.min_value >= -1e-10);
    REQUIRE(tr.final.min() >= -1e-10);
}

TEST_CASE("CN matches the constant-reaction closed form", "[heat][cn]") {
    const double m = 5.0, T = 0.1;
    const auto y0 = sine_grid(513);
    ReactionWindow w{0.0, T, -m, Interval(0.0, 1.0)};
    const Trajectory tr = evolve_multiplicative(y0, {w}, T, 1e-4);
    const double amp = std::exp(-(pi * pi + m) * T);
    for (std::size_t i = 0; i < y0.size(); ++i) REQUIRE_THAT(tr.final[i], WithinAbs(amp * y0[i], 1e-4));
}

TEST_CASE("CN without reaction matches free evolution", "[heat][cn]") {
    const auto y0 = GridFunction::sample(513, [](double x) { return x * (1.0 - x); });
    const Trajectory tr = evolve_multiplicative(y0, {}, 0.05, 1e-4);
    const GridFunction exact = evaluate_series(evolve_free(project_to_sine(y0, 511), 0.05), 513);
    REQUIRE(distance_l2(tr.final, exact) <= 1e-4);
}

TEST_CASE("damped window energy stays below the m bound", "[heat][cn][energy]") {
    const double m = 1000.0, T = 0.05;
    const auto y0 = sine_grid(513);
    const Interval sup(0.0, 0.4);
    double energy = 0.0, prev_t = 0.0, prev_w = integral_sq(y0, sup.lo, sup.hi);
    CnOptions o;
    o.positivity_dt = true;
    o.observer = [&](double t, const std::vector<double>& y) {
        const double w = integral_sq(GridFunction(y), sup.lo, sup.hi);
        energy += 0.5 * (t - prev_t) * (w + prev_w);
        prev_t = t;
        prev_w = w;
        return true;
    };
    evolve_multiplicative(y0, {ReactionWindow{0.0, T, -m, sup}}, T, 1e-4, o);
    REQUIRE(energy <= std::pow(norm_l2(y0), 2) / (2.0 * m));
}

TEST_CASE("boundary control series", "[heat][boundary]") {
    const BoundaryState zero = evolve_boundary({{{0.0, 1.0, 0.0, 0.0}}}, 1.0, 32);
    REQUIRE(zero.state.is_zero());

    const BoundaryState early = evolve_boundary({{{0.0, 0.05, 1.0, 0.0}}}, 0.05, 64);
    const double b1 = std::sqrt(2.0) * (1.0 - std::exp(-pi * pi * 0.05)) / pi;
    REQUIRE_THAT(early.b[0], WithinAbs(b1, 1e-12));
    REQUIRE_THAT(early.b[0], WithinAbs(0.17539, 1e-4));
    REQUIRE_THAT(early.state.coeff(1), WithinAbs(b1 / std::sqrt(2.0), 1e-12));

    // steady state 1 - x has sqrt(2) sin coefficients sqrt(2)/(k pi)
    const BoundaryState late = evolve_boundary({{{0.0, 10.0, 1.0, 0.0}}}, 10.0, 64);
    for (int k = 1; k <= 8; ++k)
        REQUIRE_THAT(late.b[std::size_t(k - 1)], WithinAbs(std::sqrt(2.0) / (k * pi), 1e-12));
}

TEST_CASE("maximum principle on a damped sine", "[heat][mp]") {
    const auto y0 = sine_grid(257);
    CnOptions o;
    o.positivity_dt = true;
    const Trajectory tr = evolve_multiplicative(y0, {ReactionWindow{0.0, 0.2, -5.0, Interval(0.0, 0.4)}}, 0.2, 1e-4, o);
    MpContext ctx;
    ctx.initial_max = y0.max();
    const MpReport r = maximum_principle_report(tr, ctx);
    REQUIRE(r.min_value >= -1e-10);
    REQUIRE(r.max_value <= 1.0 + 1e-12);
    REQUIRE(r.ii_applicable);
    REQUIRE(r.pass());
}

TEST_CASE("maximum principle on zero data", "[heat][mp]") {
    const Trajectory tr = evolve_multiplicative(GridFunction::zeros(65), {}, 0.01, 1e-3);
    REQUIRE(tr.diag.min_value == 0.0);
    REQUIRE(tr.diag.max_value == 0.0);
    MpContext ctx;
    ctx.y0_nonzero = false;
    REQUIRE(maximum_principle_report(tr, ctx).pass());
}

TEST_CASE("positivity spreads from a localized bump", "[heat][mp]") {
    const auto y0 = GridFunction::sample(257, [](double x) { return bump(x, 0.1, 0.2); });
    CnOptions o;
    o.positivity_dt = true;
    const Trajectory tr =
        evolve_multiplicative(y0, {ReactionWindow{0.0, 0.01, -100.0, Interval(0.5, 0.9)}}, 0.01, 1e-5, o);
    MpContext ctx;
    ctx.initial_max = y0.max();
    ctx.positivity_from = 0.01;
    const MpReport r = maximum_principle_report(tr, ctx);
    REQUIRE(r.iii_applicable);
    REQUIRE(r.interior_min > 0.0);
    REQUIRE(r.pass());
}
