#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "heatlab/errors.hpp"
#include "heatlab/synthesis.hpp"

using namespace heatlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

// Straight from the definitions, with long double to keep small r honest.
double psi_oracle(double r) {
    const long double R = r;
    const long double g = (1.0L - std::exp(-R)) / R - 1.0L;
    return static_cast<double>(g * g);
}

double psi_hat_oracle(double r) {
    const long double R = r;
    const long double g = (std::exp(-R) - std::exp(-2.0L * R)) / R - 1.0L;
    return static_cast<double>(g * g);
}

double bump(double x, double a, double b) {
    const double s = (2.0 * x - a - b) / (b - a);
    return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
}

SineSeries random_target(std::mt19937_64& gen, int K) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) c[std::size_t(k - 1)] = d(gen) / (k * k);
    return SineSeries(c);
}

}  // namespace

TEST_CASE("psi and psi_hat closed forms", "[synthesis][psi]") {
    REQUIRE(psi(0.0) == 0.0);
    REQUIRE(psi_hat(0.0) == 0.0);
    REQUIRE_THAT(psi(1.0), WithinAbs(std::exp(-2.0), 1e-15));
    REQUIRE_THAT(psi(1.0), WithinAbs(0.135335, 1e-6));
    REQUIRE_THAT(psi_hat(1.0), WithinAbs(std::pow(std::exp(-1.0) - std::exp(-2.0) - 1.0, 2), 1e-15));
    REQUIRE_THAT(psi_hat(1.0), WithinAbs(0.588989, 1e-6));
    for (double r : {1e-3, 0.01, 0.3, 0.7, 2.0, 50.0}) {
        REQUIRE_THAT(psi(r), WithinRel(psi_oracle(r), 1e-9));
        REQUIRE_THAT(psi_hat(r), WithinRel(psi_hat_oracle(r), 1e-9));
    }
    REQUIRE_THROWS_AS(psi(-1.0), InvalidInput);
}

TEST_CASE("psi and psi_hat are increasing and below one", "[synthesis][psi]") {
    double prev = 0.0, prev_hat = 0.0;
    for (int e = -20; e <= 10; ++e) {
        const double r = std::ldexp(1.0, e);
        REQUIRE(psi(r) > prev);
        REQUIRE(psi(r) < 1.0);
        // 1 - psi_hat(r) ~ 2 e^{-r}/r drops below machine epsilon past r ~ 36,
        // so strictness is only observable up to there
        if (r <= 32.0) {
            REQUIRE(psi_hat(r) > prev_hat);
            REQUIRE(psi_hat(r) < 1.0);
        } else {
            REQUIRE(psi_hat(r) >= prev_hat);
            REQUIRE(psi_hat(r) <= 1.0);
        }
        prev = psi(r);
        prev_hat = psi_hat(r);
    }
}

TEST_CASE("pulse error prediction for a single mode", "[synthesis][pulse]") {
    const SineSeries t({0.5});
    const double expected = std::sqrt(2.0 * pi * pi * 0.25 * psi_oracle(pi * pi * 0.01));
    REQUIRE_THAT(predict_pulse_error(t, 0.01, PulseVariant::plain), WithinRel(expected, 1e-10));
    REQUIRE_THAT(predict_pulse_error(t, 0.01, PulseVariant::plain), WithinAbs(0.10609, 2e-5));
}

TEST_CASE("pulse error shrinks with delta and stays below the target norm", "[synthesis][pulse]") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 10; ++trial) {
        const SineSeries t = random_target(gen, 32);
        for (auto v : {PulseVariant::plain, PulseVariant::zero_tail}) {
            double prev = predict_pulse_error(t, 0.2, v);
            REQUIRE(prev < norm_h01(t));
            for (double d = 0.1; d > 1e-9; d /= 2) {
                const double e = predict_pulse_error(t, d, v);
                REQUIRE(e <= prev);
                prev = e;
            }
            REQUIRE(prev < 1e-3 * norm_h01(t));
        }
    }
}

TEST_CASE("choose_delta follows the halving sequence", "[synthesis][pulse]") {
    const SineSeries t({0.5});
    // independent halving with the oracle psi
    double d = 0.1;
    while (std::sqrt(2.0 * pi * pi * 0.25 * psi_oracle(pi * pi * d)) > 0.2) d /= 2;
    REQUIRE(choose_delta(t, 0.2, PulseVariant::plain, 0.1) == d);

    REQUIRE(choose_delta(t, norm_h01(t), PulseVariant::plain, 0.1) == 0.1);
    REQUIRE(choose_delta(SineSeries::zeros(4), 1e-6, PulseVariant::plain, 0.1) == 0.1);
}

TEST_CASE("pulse windows", "[synthesis][pulse]") {
    const SineSeries t({0.5});
    const PulseControl plain = build_pulse_control(t, Interval(0, 1), 1.0, 0.01, PulseVariant::plain);
    const SourceWindow w = plain.window();
    REQUIRE_THAT(w.t_start, WithinAbs(0.99, 1e-15));
    REQUIRE(w.t_end == 1.0);
    REQUIRE_THAT(w.amplitude, WithinRel(100.0, 1e-12));

    const PulseControl zt = build_pulse_control(t, Interval(0, 1), 1.0, 0.01, PulseVariant::zero_tail);
    REQUIRE_THAT(zt.active_start(), WithinAbs(0.98, 1e-15));
    REQUIRE_THAT(zt.active_end(), WithinAbs(0.99, 1e-15));
    REQUIRE_THAT(zt.window().t_end, WithinAbs(0.99, 1e-15));
}

TEST_CASE("simulated pulse error equals the prediction", "[synthesis][pulse]") {
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 5; ++trial) {
        const SineSeries t = random_target(gen, 32);
        for (auto v : {PulseVariant::plain, PulseVariant::zero_tail}) {
            for (double d : {0.1, 0.01, 0.001}) {
                const PulseControl pc = build_pulse_control(t, Interval(0, 1), 1.0, d, v);
                const SineSeries yT = evolve_additive_final(SineSeries::zeros(32), {pc.window()}, 1.0);
                REQUIRE_THAT(norm_h01(yT - t), WithinAbs(predict_pulse_error(t, d, v), 1e-9));
                REQUIRE_THAT(norm_l2(yT - t), WithinAbs(predict_pulse_error_l2(t, d, v), 1e-9));
            }
        }
    }
}

TEST_CASE("mobile synthesis of a zero target is empty", "[synthesis][mobile]") {
    const MobilePlan p = synthesize_mobile_additive(GridFunction::zeros(257), 0.4, 1.0, 0.05);
    REQUIRE(p.source_windows().empty());
    REQUIRE(p.predicted_error == 0.0);
}

TEST_CASE("mobile synthesis with a full-length support is a single pulse", "[synthesis][mobile]") {
    const std::size_t n = 1025;
    const auto yd = GridFunction::sample(n, [](double x) { return bump(x, 0.2, 0.8); });
    const MobilePlan p = synthesize_mobile_additive(yd, 1.0, 1.0, 0.05);
    REQUIRE(p.controls.size() == 1);
    REQUIRE(p.source_windows().size() == 1);
    const SineSeries y0 = SineSeries::zeros(p.k_max);
    const GridFunction yT = evaluate_series(evolve_additive_final(y0, p.source_windows(), 1.0), n);
    REQUIRE(distance_l2(yT, yd) <= 0.05);
}

TEST_CASE("mobile windows are nested and disjoint", "[synthesis][mobile]") {
    const std::size_t n = 4097;
    const auto yd = GridFunction::sample(n, [](double x) { return x * (1.0 - x); });
    const MobilePlan p = synthesize_mobile_additive(yd, 0.4, 1.0, 0.05);
    REQUIRE(p.controls.size() == 3);
    for (std::size_t j = 1; j < p.deltas.size(); ++j) REQUIRE(p.deltas[j] <= p.deltas[j - 1] / 2);
    const auto ws = p.source_windows();
    for (std::size_t a = 0; a < ws.size(); ++a)
        for (std::size_t b = a + 1; b < ws.size(); ++b)
            REQUIRE((ws[a].t_end <= ws[b].t_start || ws[b].t_end <= ws[a].t_start));
    for (const auto& w : ws) {
        const Interval s = p.schedule.support_at(0.5 * (w.t_start + w.t_end));
        REQUIRE(s.contains(w.support));
    }
}

TEST_CASE("lift rejects zero data and is empty for zero controls", "[synthesis][lift]") {
    const MobilePlan empty = synthesize_mobile_additive(GridFunction::zeros(257), 0.4, 1.0, 0.05);
    const auto y0 = GridFunction::sample(257, [](double x) { return std::sin(pi * x); });
    const LiftResult r = lift_to_multiplicative(empty, y0);
    REQUIRE(r.windows.empty());
    REQUIRE(r.v_sup == 0.0);
    REQUIRE_THROWS_AS(lift_to_multiplicative(empty, GridFunction::zeros(257)), DegenerateState);
}

TEST_CASE("lifted reaction reproduces the additive state", "[synthesis][lift]") {
    const std::size_t n = 1025;
    const double T = 0.1;
    const auto yd = GridFunction::sample(n, [](double x) { return bump(x, 0.2, 0.8); });
    const auto y0 = GridFunction::sample(n, [](double x) { return std::sin(pi * x); });
    const MobilePlan p = synthesize_mobile_additive(yd, 1.0, T, 0.1);
    const LiftResult lift = lift_to_multiplicative(p, y0);
    REQUIRE(lift.rho_measured > 0.0);
    REQUIRE(std::isfinite(lift.v_sup));
    REQUIRE(lift.identity_residual <= 1e-10);
    const GridFunction additive = evaluate_series(evolve_additive_final(lift.y0_series, p.source_windows(), T), n);
    const Trajectory tr = evolve_multiplicative(y0, lift.windows, T, 1e-4);
    REQUIRE(distance_l2(tr.final, additive) <= 1e-3);
}

TEST_CASE("damping skips small data", "[synthesis][damping]") {
    const auto y0 = GridFunction::sample(257, [](double x) { return 0.01 * std::sin(pi * x); });
    const DampingResult d = damping_sweep(y0, 0.4, 0.1, 1.0);
    REQUIRE(d.certificate.shortcut);
    for (double m : d.m) REQUIRE(m == 0.0);
    for (double t : d.T_j) REQUIRE(t == 0.0);
    REQUIRE(d.certificate.final_ok(0.1));
}

TEST_CASE("damping sweep certificate on a sine", "[synthesis][damping]") {
    const auto y0 = GridFunction::sample(257, [](double x) { return std::sin(pi * x); });
    const DampingResult d = damping_sweep(y0, 0.4, 0.1, 1.0);
    const auto& c = d.certificate;
    REQUIRE(d.m.size() == 3);
    REQUIRE(c.final_ok(0.1));
    REQUIRE(norm_l2(d.final_state) <= 0.05);
    for (std::size_t j = 0; j < d.m.size(); ++j) {
        REQUIRE(c.window_ok(j));
        REQUIRE(c.cumulative_ok(j));
        REQUIRE(c.energy_ok(j, 1e-6));
    }
    for (std::size_t j = 1; j < d.T_j.size(); ++j) REQUIRE(d.T_j[j] >= d.T_j[j - 1]);
    REQUIRE(d.trajectory.diag.min_value >= -1e-8);
    REQUIRE_THROWS_AS(damping_sweep(-1.0 * y0, 0.4, 0.1, 1.0), InvalidInput);
}
