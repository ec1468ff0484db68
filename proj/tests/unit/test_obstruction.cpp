#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/obstruction.hpp"
#include "heatlab/quadrature.hpp"

using namespace heatlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

double gl(const std::function<double(double)>& f, double a, double b) { return gauss_legendre_composite(f, a, b, 64); }

double bump(double x, double a, double b) {
    const double s = (2.0 * x - a - b) / (b - a);
    return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
}

PiecewiseControl unit_block(double lo, double hi, double T, std::size_t n) {
    const auto prof = GridFunction::sample(n, [&](double x) { return x >= lo && x <= hi ? 1.0 : 0.0; });
    return {SourceWindow{0.0, T, prof, Interval(lo, hi), 1.0}};
}

}  // namespace

TEST_CASE("static adjoint branches at m = 2", "[obstruction][static]") {
    const StaticAdjoint a = build_static_adjoint(2, 1.0);
    for (double x : {0.1, 0.3, 0.49}) REQUIRE_THAT(a.phi(x), WithinAbs(std::sin(2 * pi * x), 1e-15));
    for (double x : {0.5, 0.7, 0.95}) REQUIRE_THAT(a.phi(x), WithinAbs(-std::sin(pi * (2 * x - 1)), 1e-15));
    REQUIRE(a.h_prefactor() == 0.0);
    for (double x = 0.0; x < 1.0; x += 0.05) REQUIRE(a.h(x, 0.5) == 0.0);
    REQUIRE_THROWS_AS(build_static_adjoint(1, 1.0), InvalidInput);
}

TEST_CASE("static adjoint source at m = 3", "[obstruction][static]") {
    const StaticAdjoint a = build_static_adjoint(3, 1.0);
    REQUIRE_THAT(a.h_prefactor(), WithinRel(27 * pi * pi / 4, 1e-14));
    for (double x = 0.0; x < 1.0; x += 0.01) REQUIRE(a.h(x, 0.3) >= 0.0);
    REQUIRE(a.h(0.2, 0.3) > 0.0);
}

TEST_CASE("static adjoint solves the backward equation", "[obstruction][static]") {
    for (int m : {2, 3}) REQUIRE(static_adjoint_residual(build_static_adjoint(m, 0.5)) <= 1e-8);
    // finite-difference round-off grows like (m - 1) / h^2, so larger m is
    // checked relative to the size of p_xx
    for (int m : {5, 8}) {
        const double scale = std::pow(m * pi, 2) * (m - 1);
        REQUIRE(static_adjoint_residual(build_static_adjoint(m, 0.5)) <= 1e-10 * scale);
    }
}

TEST_CASE("static adjoint modes and norm against quadrature", "[obstruction][static]") {
    for (int m : {2, 3, 4}) {
        const StaticAdjoint a = build_static_adjoint(m, 1.0);
        const double j = 1.0 / m;
        for (int k = 1; k <= 12; ++k) {
            const auto f = [&](double x) { return a.phi(x) * std::sin(k * pi * x); };
            REQUIRE_THAT(a.phi_mode(k), WithinAbs(gl(f, 0, j) + gl(f, j, 1), 1e-12));
            const auto g = [&](double x) { return std::sin(m * pi * x) * std::sin(k * pi * x); };
            REQUIRE_THAT(a.h_mode(k), WithinAbs(gl(g, 0, j), 1e-12));
        }
        const auto sq = [&](double x) { return a.phi(x) * a.phi(x); };
        REQUIRE_THAT(a.phi_norm(), WithinRel(std::sqrt(gl(sq, 0, j) + gl(sq, j, 1)), 1e-12));
    }
}

TEST_CASE("static unreachability gap", "[obstruction][static]") {
    const StaticAdjoint a = build_static_adjoint(2, 1.0);
    const auto yd_phi = [&](double x) { return std::max(a.phi(x), 0.0) * a.phi(x); };
    REQUIRE_THAT(gl(yd_phi, 0, 0.5) + gl(yd_phi, 0.5, 1), WithinAbs(0.25, 1e-12));
    REQUIRE_THAT(a.phi_norm(), WithinAbs(std::sqrt(0.5), 1e-15));
    REQUIRE_THAT(unreachability_gap(a), WithinAbs(0.25 / std::sqrt(0.5), 1e-14));
    REQUIRE_THAT(unreachability_gap(a), WithinAbs(0.35355, 1e-5));
    for (int m = 2; m <= 10; ++m) REQUIRE(unreachability_gap(build_static_adjoint(m, 1.0)) > 0.0);
}

TEST_CASE("static pairing of a constant block", "[obstruction][static]") {
    const double T = 1.0;
    const StaticAdjoint a = build_static_adjoint(2, T);
    PairingOptions o;
    o.n_eval = 4097;
    const ObstructionReport r = duality_pairing_static(a, {unit_block(0.6, 0.9, T, 4097)}, o);
    // rhs = int_0^T e^{rate (t - T)} dt * int_{0.6}^{0.9} phi
    const double time = -std::expm1(-a.rate() * T) / a.rate();
    const double space = gl([&](double x) { return a.phi(x); }, 0.6, 0.9);
    REQUIRE(r.samples.size() == 1);
    REQUIRE(r.samples[0].rhs < 0.0);
    REQUIRE_THAT(r.samples[0].rhs, WithinRel(time * space, 1e-3));
    REQUIRE(r.identity_residual <= 1e-6);
    REQUIRE(r.pass());
}

TEST_CASE("static pairing of zero control", "[obstruction][static]") {
    const StaticAdjoint a = build_static_adjoint(2, 1.0);
    PiecewiseControl zero = unit_block(0.6, 0.9, 1.0, 1025);
    zero[0].amplitude = 0.0;
    const ObstructionReport r = duality_pairing_static(a, {zero});
    REQUIRE(r.samples[0].lhs == 0.0);
    REQUIRE(r.samples[0].rhs == 0.0);
    REQUIRE_THROWS_AS(duality_pairing_static(a, {unit_block(0.3, 0.9, 1.0, 1025)}), InvalidInput);
}

TEST_CASE("boundary adjoint and gap", "[obstruction][boundary]") {
    const BoundaryAdjoint a{1.0};
    REQUIRE(boundary_adjoint_residual(a) <= 1e-8);
    REQUIRE_THAT(a.px0(1.0), WithinAbs(-3 * pi, 1e-14));
    REQUIRE_THAT(a.px1(1.0), WithinAbs(3 * pi, 1e-13));
    const double num = gl([](double x) { return std::pow(std::sin(3 * pi * x), 2); }, 1.0 / 3, 2.0 / 3);
    const double den = std::sqrt(gl([](double x) { return std::pow(std::sin(3 * pi * x), 2); }, 0, 1));
    REQUIRE_THAT(boundary_gap(), WithinAbs(num / den, 1e-12));
    REQUIRE_THAT(boundary_gap(), WithinAbs(0.2357, 1e-4));
}

TEST_CASE("boundary pairing of a unit left control", "[obstruction][boundary]") {
    const double T = 1.0;
    const ObstructionReport r = boundary_pairing({BoundarySignal{{{0.0, T, 1.0, 0.0}}}}, T);
    const double expected = -(1.0 - std::exp(-9 * pi * pi)) / (3 * pi);
    REQUIRE_THAT(r.samples[0].rhs, WithinAbs(expected, 1e-14));
    REQUIRE_THAT(r.samples[0].rhs, WithinAbs(-0.10610, 1e-5));
    REQUIRE(r.samples[0].residual <= 1e-6);

    const ObstructionReport z = boundary_pairing({BoundarySignal{{{0.0, T, 0.0, 0.0}}}}, T);
    REQUIRE(z.samples[0].lhs == 0.0);
    REQUIRE(z.samples[0].rhs == 0.0);
}

TEST_CASE("strip floor matches the eigen-expansion", "[obstruction][strip]") {
    const Interval strip(0.6, 0.9);
    const double L = strip.length(), T = 0.02;
    const auto y0 = GridFunction::sample(4097, [](double x) { return std::sin(pi * x); });
    double sq = 0.0;
    for (int k = 1; k <= 400; ++k) {
        const auto f = [&](double x) { return std::sin(pi * x) * std::sin(k * pi * (x - strip.lo) / L); };
        const double d = 2.0 / L * gl(f, strip.lo, strip.hi);
        sq += 0.5 * L * d * d * std::exp(-2.0 * std::pow(k * pi / L, 2) * T);
    }
    REQUIRE_THAT(strip_floor(y0, strip, T), WithinAbs(std::sqrt(sq), 1e-6));
}

TEST_CASE("strip obstruction with zero and bounded reactions", "[obstruction][strip]") {
    const auto y0 = GridFunction::sample(257, [](double x) { return std::sin(pi * x); });
    const Interval omega(0.0, 0.4), strip(0.6, 0.9);
    const std::vector<ReactionWindow> none;
    const std::vector<ReactionWindow> damp{ReactionWindow{0.0, 0.02, -20.0, omega}};
    const StripReport r = verify_strip_obstruction(y0, {none, damp}, omega, strip, 0.02);
    REQUIRE(!r.vacuous);
    REQUIRE(r.pass());
    REQUIRE(r.samples[0].strip_norm > r.floor);
    REQUIRE_THROWS_AS(verify_strip_obstruction(y0, {none}, omega, Interval(0.3, 0.6), 0.02), InvalidInput);
}

TEST_CASE("strip obstruction is vacuous when the strip starts empty", "[obstruction][strip]") {
    const auto y0 = GridFunction::sample(257, [](double x) { return bump(x, 0.05, 0.2); });
    const StripReport r = verify_strip_obstruction(y0, {{}}, Interval(0.0, 0.3), Interval(0.7, 0.9), 1e-4);
    REQUIRE(r.floor <= 1e-4);
    REQUIRE(r.vacuous);
    REQUIRE(r.pass());
}

TEST_CASE("proposition bounds on a free sine", "[obstruction][p1]") {
    const auto y0 = GridFunction::sample(257, [](double x) { return std::sin(pi * x); });
    const P1Report r = check_p1_bounds(y0, GridFunction::zeros(257), 0.05);
    // y_t = -pi^2 e^{-pi^2 t} sin(pi x) <= 0 = max(y0'')^+
    REQUIRE(r.bound_a <= 1e-3);
    REQUIRE(r.max_yt <= 1e-3);
    REQUIRE(r.pass());
}

TEST_CASE("proposition bounds on zero data", "[obstruction][p1]") {
    const P1Report r = check_p1_bounds(GridFunction::zeros(129), GridFunction::zeros(129), 0.01);
    REQUIRE(r.max_yt == 0.0);
    REQUIRE(r.bound_a == 0.0);
    REQUIRE(r.bound_b == 0.0);
    REQUIRE(r.bound_c == 0.0);
    REQUIRE(r.pass());
}

TEST_CASE("proposition bounds on a damped bump", "[obstruction][p1]") {
    const std::size_t n = 257;
    const auto y0 = GridFunction::sample(n, [](double x) { return bump(x, 0.2, 0.8); });
    const auto v = GridFunction::sample(n, [](double x) { return x > 0.5 && x < 0.8 ? -50.0 : 0.0; });
    const P1Report r = check_p1_bounds(y0, v, 0.05);
    REQUIRE(r.a_pass);
    REQUIRE(r.b_pass);
    REQUIRE(r.c_pass);
    REQUIRE(r.min_value >= -1e-8);
}
