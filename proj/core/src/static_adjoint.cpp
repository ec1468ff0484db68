#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/obstruction.hpp"

namespace heatlab {
namespace {

constexpr double kPi = std::numbers::pi;

// int_{x0}^{x1} cos(w x + c) dx
double int_cos(double w, double c, double x0, double x1) {
    if (std::abs(w) < 1e-12) return (x1 - x0) * std::cos(c);
    return (std::sin(w * x1 + c) - std::sin(w * x0 + c)) / w;
}

// int_{x0}^{x1} sin(a1 x + b1) sin(a2 x + b2) dx
double int_sin_sin(double a1, double b1, double a2, double b2, double x0, double x1) {
    return 0.5 * (int_cos(a1 - a2, b1 - b2, x0, x1) - int_cos(a1 + a2, b1 + b2, x0, x1));
}

// (e^{z tau} - 1) / z with its z -> 0 limit
double expm1_ratio(double z, double tau) {
    if (std::abs(z * tau) < 1e-300) return tau;
    return std::expm1(z * tau) / z;
}

}  // namespace

double StaticAdjoint::phi(double x) const {
    const double md = m;
    if (x < 1.0 / md) return std::sin(md * kPi * x);
    return (1.0 - md) * std::sin(kPi * (md * x - 1.0) / (md - 1.0));
}

double StaticAdjoint::rate() const {
    const double md = m;
    return md * md * kPi * kPi / ((md - 1.0) * (md - 1.0));
}

double StaticAdjoint::h_prefactor() const {
    const double md = m;
    return (md - 2.0) * md * md * md * kPi * kPi / ((md - 1.0) * (md - 1.0));
}

double StaticAdjoint::h(double x, double t) const {
    if (x >= 1.0 / m || x < 0.0) return 0.0;
    return h_prefactor() * std::sin(m * kPi * x) * std::exp(rate() * (t - T));
}

double StaticAdjoint::p(double x, double t) const { return phi(x) * std::exp(rate() * (t - T)); }

double StaticAdjoint::phi_mode(int k) const {
    const double md = m;
    const double kp = k * kPi;
    const double a = kPi * md / (md - 1.0);
    const double b = -kPi / (md - 1.0);
    return int_sin_sin(md * kPi, 0.0, kp, 0.0, 0.0, 1.0 / md) +
           (1.0 - md) * int_sin_sin(a, b, kp, 0.0, 1.0 / md, 1.0);
}

double StaticAdjoint::h_mode(int k) const {
    return int_sin_sin(m * kPi, 0.0, k * kPi, 0.0, 0.0, 1.0 / m);
}

double StaticAdjoint::phi_norm() const {
    const double md = m;
    return std::sqrt(1.0 / (2.0 * md) + std::pow(md - 1.0, 3) / (2.0 * md));
}

StaticAdjoint build_static_adjoint(int m, double T) {
    if (m < 2) throw InvalidInput("static adjoint needs m >= 2");
    if (!(T > 0.0)) throw InvalidInput("horizon T must be positive");
    return StaticAdjoint{m, T};
}

double static_adjoint_residual(const StaticAdjoint& adj, int samples) {
    // powers of two keep x +- d exact on the dyadic sample points
    const double hx = 0x1p-9, ht = 0x1p-12;
    const auto central_xx = [&](double x, double t, double d) {
        return (adj.p(x + d, t) - 2.0 * adj.p(x, t) + adj.p(x - d, t)) / (d * d);
    };
    const auto central_t = [&](double x, double t, double d) {
        return (adj.p(x, t + d) - adj.p(x, t - d)) / (2.0 * d);
    };
    // two Richardson levels on step sizes d, d/2, d/4
    const auto extrapolate = [](auto&& D, double d) {
        const double a = D(d), b = D(d / 2), c = D(d / 4);
        const double r1 = (4.0 * b - a) / 3.0, r2 = (4.0 * c - b) / 3.0;
        return (16.0 * r2 - r1) / 15.0;
    };
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            double x = (i + 0.5) / samples;
            const double t = adj.T * (j + 0.5) / samples;
            // keep the stencil off the branch junction, where phi is only C^2
            if (std::abs(x - 1.0 / adj.m) < 2.0 * hx) x += 4.0 * hx;
            if (x + 2 * hx >= 1.0 || t + 2 * ht >= adj.T) continue;
            const double pxx = extrapolate([&](double d) { return central_xx(x, t, d); }, hx);
            const double pt = extrapolate([&](double d) { return central_t(x, t, d); }, ht);
            worst = std::max(worst, std::abs(-pt - pxx - adj.h(x, t)));
        }
    }
    return worst;
}

double unreachability_gap(const StaticAdjoint& adj) {
    // int_0^{1/m} sin^2(m pi x) dx = 1/(2m)
    return (1.0 / (2.0 * adj.m)) / adj.phi_norm();
}

bool ObstructionReport::pass() const {
    return std::all_of(samples.begin(), samples.end(), [](const PairingSample& s) { return s.pass; });
}

ObstructionReport duality_pairing_static(const StaticAdjoint& adj, const std::vector<PiecewiseControl>& controls,
                                         const PairingOptions& opts) {
    const int K = opts.k_max;
    std::vector<double> J(static_cast<std::size_t>(K)), I(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        J[static_cast<std::size_t>(k - 1)] = adj.phi_mode(k);
        I[static_cast<std::size_t>(k - 1)] = adj.h_mode(k);
    }
    const double kappa = adj.rate();
    const double H0 = adj.h_prefactor();
    const double T = adj.T;
    const GridFunction y_d = GridFunction::sample(opts.n_eval, [&](double x) { return std::max(adj.phi(x), 0.0); });

    ObstructionReport rep;
    rep.gap_lower_bound = unreachability_gap(adj);
    rep.pairing_value = -std::numeric_limits<double>::infinity();
    int id = 0;
    for (const auto& u : controls) {
        for (const auto& w : u)
            if (w.support.lo < 1.0 / adj.m || w.t_end > T)
                throw InvalidInput("static pairing needs controls supported in (1/m, 1) x (0, T)");

        // state from the spectral stepper
        const SineSeries yT = evolve_additive_final(SineSeries::zeros(K), u, T);

        // h-term and rhs by exact time integration, segment by segment
        std::vector<double> a(static_cast<std::size_t>(K), 0.0);
        double lhs_h = 0.0, rhs = 0.0, t = 0.0;
        const auto run = [&](double tb, const std::vector<double>* c) {
            const double tau = tb - t;
            if (tau <= 0.0) return;
            const double ea = std::exp(kappa * (t - T));
            const double time_weight = ea * expm1_ratio(kappa, tau);
            for (int k = 1; k <= K; ++k) {
                const auto i = static_cast<std::size_t>(k - 1);
                const double lam = kPi * kPi * k * k;
                const double B = c ? (*c)[i] / lam : 0.0;
                const double A = a[i] - B;
                lhs_h += H0 * 2.0 * I[i] * (A * ea * expm1_ratio(kappa - lam, tau) + B * time_weight);
                if (c) rhs += 2.0 * (*c)[i] * J[i] * time_weight;
                a[i] = A * std::exp(-lam * tau) + B;
            }
            t = tb;
        };
        for (const auto& w : u) {
            run(w.t_start, nullptr);
            const auto c = source_series(w, K).coeffs();
            run(w.t_end, &c);
        }
        run(T, nullptr);

        double lhs_phi = 0.0;
        for (int k = 1; k <= K; ++k) lhs_phi += 2.0 * yT.coeff(k) * J[static_cast<std::size_t>(k - 1)];
        PairingSample s;
        s.id = id++;
        s.lhs = lhs_phi + lhs_h;
        s.rhs = rhs;
        s.residual = std::abs(s.lhs - s.rhs);
        s.distance = distance_l2(evaluate_series(yT, opts.n_eval), y_d);
        s.pass = s.residual <= opts.identity_tol && s.rhs <= opts.quadrature_tol &&
                 s.distance >= rep.gap_lower_bound - opts.gap_tol;
        rep.pairing_value = std::max(rep.pairing_value, s.rhs);
        rep.identity_residual = std::max(rep.identity_residual, s.residual);
        rep.samples.push_back(s);
    }
    if (controls.empty()) rep.pairing_value = 0.0;
    return rep;
}

}  // namespace heatlab
