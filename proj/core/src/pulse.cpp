#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heatlab/errors.hpp"
#include "heatlab/synthesis.hpp"

namespace heatlab {
namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
// below this r the closed forms lose digits to cancellation; the series
// converges fast here
constexpr double kSeriesCutoff = 0.5;

// g(r) = (1 - e^{-r})/r - 1 = sum_{n>=1} (-r)^n / (n+1)!
double g_plain(double r) {
    if (r >= kSeriesCutoff) return -std::expm1(-r) / r - 1.0;
    double term = 1.0, acc = 0.0;
    for (int n = 1; n < 40; ++n) {
        term *= -r / static_cast<double>(n + 1);
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

// g(r) = (e^{-r} - e^{-2r})/r - 1 = sum_{n>=1} (-1)^n (2^{n+1} - 1) r^n / (n+1)!
double g_zero_tail(double r) {
    if (r >= kSeriesCutoff) return std::exp(-r) * -std::expm1(-r) / r - 1.0;
    double pow_term = 1.0, acc = 0.0;  // pow_term = (-r)^n / (n+1)!
    for (int n = 1; n < 60; ++n) {
        pow_term *= -r / static_cast<double>(n + 1);
        const double term = (std::ldexp(1.0, n + 1) - 1.0) * pow_term;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

double weight(double r, PulseVariant v) { return v == PulseVariant::plain ? psi(r) : psi_hat(r); }

}  // namespace

const char* to_string(PulseVariant v) noexcept { return v == PulseVariant::plain ? "plain" : "zero_tail"; }

double psi(double r) {
    if (r < 0.0 || std::isnan(r)) throw InvalidInput("psi needs r >= 0");
    if (r == 0.0) return 0.0;
    const double g = g_plain(r);
    return g * g;
}

double psi_hat(double r) {
    if (r < 0.0 || std::isnan(r)) throw InvalidInput("psi_hat needs r >= 0");
    if (r == 0.0) return 0.0;
    const double g = g_zero_tail(r);
    return g * g;
}

double predict_pulse_error(const SineSeries& target, double delta, PulseVariant variant) {
    if (!(delta > 0.0)) throw InvalidInput("delta must be positive");
    double acc = 0.0;
    for (int k = 1; k <= target.k_max(); ++k) {
        const double a = target.coeff(k);
        if (a == 0.0) continue;
        const double kk = static_cast<double>(k) * k;
        acc += a * a * kk * weight(kPi2 * kk * delta, variant);
    }
    return std::sqrt(2.0 * kPi2 * acc);
}

double predict_pulse_error_l2(const SineSeries& target, double delta, PulseVariant variant) {
    if (!(delta > 0.0)) throw InvalidInput("delta must be positive");
    double acc = 0.0;
    for (int k = 1; k <= target.k_max(); ++k) {
        const double a = target.coeff(k);
        if (a == 0.0) continue;
        acc += a * a * weight(kPi2 * static_cast<double>(k) * k * delta, variant);
    }
    return std::sqrt(2.0 * acc);
}

double choose_delta(const SineSeries& target, double epsilon, PulseVariant variant, double delta_init,
                    int max_halvings) {
    if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
    if (!(delta_init > 0.0)) throw InvalidInput("delta_init must be positive");
    double delta = delta_init;
    double err = 0.0;
    for (int i = 0; i <= max_halvings; ++i) {
        err = predict_pulse_error(target, delta, variant);
        if (err <= epsilon) return delta;
        delta /= 2.0;
    }
    throw SearchFailure("no delta after " + std::to_string(max_halvings) +
                        " halvings; predicted error " + std::to_string(err) + " still above " +
                        std::to_string(epsilon));
}

double PulseControl::active_start() const noexcept {
    return variant == PulseVariant::plain ? T - delta : T - 2.0 * delta;
}

double PulseControl::active_end() const noexcept {
    return variant == PulseVariant::plain ? T : T - delta;
}

SourceWindow PulseControl::window() const {
    const double a = active_start();
    const double b = active_end();
    // Scale by the realised window length rather than delta. Near T = 1 the
    // rounded endpoints can differ from delta by an ulp of T, which matters
    // once delta is tiny; this keeps the injected mass exact.
    return SourceWindow{a, b, target_series, support, 1.0 / (b - a)};
}

PulseControl build_pulse_control(const SineSeries& target, const Interval& support, double T,
                                 double delta, PulseVariant variant, std::size_t n_check) {
    if (!(delta > 0.0)) throw InvalidInput("delta must be positive");
    if (variant == PulseVariant::plain && !(delta < T)) throw InvalidInput("plain pulse needs delta < T");
    if (variant == PulseVariant::zero_tail && !(2.0 * delta < T))
        throw InvalidInput("zero-tail pulse needs delta < T/2");
    if (n_check == 0) n_check = static_cast<std::size_t>(target.k_max()) + 2;
    const GridFunction g = evaluate_series(target, n_check);
    double scale = 1.0;
    for (double v : g.values()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        if (!support.contains(x) && std::abs(g[i]) > 1e-12 * scale)
            throw InvalidInput("pulse profile has mass outside its support");
    }
    return PulseControl{delta, variant, target, support, T};
}

}  // namespace heatlab
