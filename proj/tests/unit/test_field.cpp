#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "heatlab/errors.hpp"
#include "heatlab/field.hpp"
#include "heatlab/quadrature.hpp"
#include "heatlab/sine_transform.hpp"

using namespace heatlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("dst1 agrees with the direct sum", "[field][dst]") {
    for (std::size_t n : {1u, 7u, 37u, 255u}) {
        std::mt19937_64 gen(n);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        std::vector<double> in(n), out(n);
        for (auto& v : in) v = d(gen);
        dst1(in.data(), out.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += 2.0 * in[j] * std::sin(pi * double(j + 1) * double(k + 1) / double(n + 1));
            REQUIRE_THAT(out[k], WithinAbs(s, 1e-12 * double(n)));
        }
    }
}

TEST_CASE("projection of a single mode", "[field][project]") {
    const auto f = GridFunction::sample(257, [](double x) { return std::sin(pi * x); });
    const SineSeries s = project_to_sine(f, 8);
    REQUIRE_THAT(s.coeff(1), WithinAbs(0.5, 1e-12));
    for (int k = 2; k <= 8; ++k) REQUIRE(std::abs(s.coeff(k)) <= 1e-10);
}

TEST_CASE("projection of zero is zero", "[field][project]") {
    const SineSeries s = project_to_sine(GridFunction::zeros(65), 16);
    REQUIRE(s.is_zero());
}

TEST_CASE("projection of the parabola matches its closed-form coefficients", "[field][project]") {
    const auto f = GridFunction::sample(1025, [](double x) { return x * (1.0 - x); });
    const SineSeries s = project_to_sine(f, 32);
    for (int k = 1; k <= 32; ++k) {
        // int_0^1 x(1-x) sin(k pi x) dx
        const double exact = 2.0 * (1.0 - std::pow(-1.0, k)) / std::pow(k * pi, 3);
        REQUIRE_THAT(s.coeff(k), WithinAbs(exact, 1e-6));
    }
    REQUIRE_THAT(s.coeff(1), WithinAbs(0.129006, 1e-6));
}

TEST_CASE("projection rejects too many modes", "[field][project]") {
    REQUIRE_THROWS_AS(project_to_sine(GridFunction::zeros(17), 16), InvalidInput);
}

TEST_CASE("evaluate and project round trip band-limited data", "[field][evaluate]") {
    std::vector<double> c(8);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto& v : c) v = d(gen);
    const SineSeries s(c);
    const GridFunction g = evaluate_series(s, 65);
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE_THAT(g[i], WithinAbs(evaluate_at(s, g.x(i)), 1e-12));
    const SineSeries back = project_to_sine(g, 8);
    for (int k = 1; k <= 8; ++k) REQUIRE_THAT(back.coeff(k), WithinAbs(s.coeff(k), 1e-10));
}

TEST_CASE("single coefficient evaluates to sin(pi x)", "[field][evaluate]") {
    const GridFunction g = evaluate_series(SineSeries({0.5}), 33);
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE_THAT(g[i], WithinAbs(std::sin(pi * g.x(i)), 1e-14));
    REQUIRE(evaluate_series(SineSeries::zeros(4), 9).max() == 0.0);
}

TEST_CASE("L2 norms", "[field][norm]") {
    const auto f = GridFunction::sample(1025, [](double x) { return std::sin(pi * x); });
    REQUIRE_THAT(norm_l2(f), WithinAbs(std::sqrt(0.5), 1e-12));
    REQUIRE(norm_l2(GridFunction::zeros(9)) == 0.0);
    REQUIRE_THAT(norm_l2(SineSeries({0.5, 0.5})), WithinAbs(1.0, 1e-15));
    // off-grid quadrature oracle for a series
    const SineSeries s({0.3, -0.2, 0.1});
    const double q = gauss_legendre_composite([&](double x) { return std::pow(evaluate_at(s, x), 2); }, 0, 1, 8);
    REQUIRE_THAT(norm_l2(s), WithinAbs(std::sqrt(q), 1e-12));
}

TEST_CASE("H1_0 norms", "[field][norm]") {
    REQUIRE_THAT(norm_h01(SineSeries({0.5})), WithinAbs(pi / std::sqrt(2.0), 1e-14));
    REQUIRE(norm_h01(SineSeries::zeros(3)) == 0.0);
    REQUIRE_THAT(norm_h01(SineSeries({0.5, 0.25})), WithinAbs(pi, 1e-14));
}

TEST_CASE("integral of f^2 over partial cells", "[field][norm]") {
    const auto f = GridFunction::sample(2049, [](double x) { return std::sin(pi * x); });
    // int_a^b sin^2 = (b - a)/2 - (sin(2 pi b) - sin(2 pi a))/(4 pi)
    const double a = 0.1234, b = 0.6789;
    const double exact = (b - a) / 2 - (std::sin(2 * pi * b) - std::sin(2 * pi * a)) / (4 * pi);
    REQUIRE_THAT(integral_sq(f, a, b), WithinAbs(exact, 1e-6));
}

TEST_CASE("piece counts and decomposition supports", "[field][decompose]") {
    REQUIRE(piece_count(0.4) == 3);
    REQUIRE(piece_count(1.0 / 3.0) == 3);
    REQUIRE(piece_count(1.0) == 1);

    const auto yd = GridFunction::sample(1001, [](double x) { return x * (1.0 - x); });
    const TargetDecomposition d = decompose_target(yd, 0.4);
    REQUIRE(d.piece_count == 3);
    REQUIRE_THAT(d.pieces[0].support.lo, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(d.pieces[0].support.hi, WithinAbs(0.4, 1e-15));
    REQUIRE_THAT(d.pieces[1].support.hi, WithinAbs(0.8, 1e-15));
    REQUIRE_THAT(d.pieces[2].support.lo, WithinAbs(0.8, 1e-15));
    REQUIRE_THAT(d.pieces[2].support.hi, WithinAbs(1.0, 1e-15));

    // pieces add back to the target
    GridFunction sum = GridFunction::zeros(yd.size());
    for (const auto& p : d.pieces) sum = sum + p.values;
    REQUIRE(distance_l2(sum, yd) <= 1e-12);

    const TargetDecomposition third = decompose_target(yd, 1.0 / 3.0);
    REQUIRE(third.piece_count == 3);
    REQUIRE_THAT(third.pieces[2].support.lo, WithinAbs(2.0 / 3.0, 1e-12));
}

TEST_CASE("decomposition of a constant into halves", "[field][decompose]") {
    const auto one = GridFunction::sample(101, [](double) { return 1.0; });
    const TargetDecomposition d = decompose_target(one, 0.5);
    REQUIRE(d.piece_count == 2);
    REQUIRE(d.pieces[0].values[25] == 1.0);
    REQUIRE(d.pieces[0].values[75] == 0.0);
    REQUIRE(d.pieces[1].values[75] == 1.0);
}

TEST_CASE("mollification of an indicator stays within the ramp bound", "[field][mollify]") {
    const auto piece = GridFunction::sample(2001, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
    const MollifyResult r = mollify_piece(piece, Interval(0.0, 0.5), 0.05, 1.0);
    REQUIRE(r.distance <= std::sqrt(0.1));
    REQUIRE(r.values.max() <= 1.0);
    REQUIRE(r.values.min() >= 0.0);
    for (std::size_t i = 0; i < r.values.size(); ++i)
        if (r.values.x(i) >= 0.5) REQUIRE(r.values[i] == 0.0);
}

TEST_CASE("mollification of zero and of interior-supported data", "[field][mollify]") {
    const MollifyResult z = mollify_piece(GridFunction::zeros(201), Interval(0.2, 0.6), 0.05, 1e-3);
    REQUIRE(z.distance == 0.0);
    REQUIRE(z.values.max() == 0.0);

    const auto bump = GridFunction::sample(1001, [](double x) {
        const double s = (x - 0.4) / 0.1;
        return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
    });
    const MollifyResult r = mollify_piece(bump, Interval(0.2, 0.6), 0.05, 1e-6);
    REQUIRE(r.distance <= 1e-12);
}

TEST_CASE("mollification halves the margin to meet a tight tolerance", "[field][mollify]") {
    const auto piece = GridFunction::sample(4001, [](double x) { return x > 0.2 && x < 0.6 ? 1.0 : 0.0; });
    const MollifyResult r = mollify_piece(piece, Interval(0.2, 0.6), 0.08, 0.05);
    REQUIRE(r.distance <= 0.05);
    REQUIRE(r.retries > 0);
    REQUIRE_THROWS_AS(mollify_piece(piece, Interval(0.2, 0.6), 0.08, 1e-9), MollificationFailure);
}
