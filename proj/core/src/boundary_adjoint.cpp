#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/obstruction.hpp"

namespace heatlab {
namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRate = 9.0 * kPi * kPi;
}  // namespace

double BoundaryAdjoint::p(double x, double t) const { return -std::exp(kRate * (t - T)) * std::sin(3.0 * kPi * x); }
double BoundaryAdjoint::px0(double t) const { return -3.0 * kPi * std::exp(kRate * (t - T)); }
double BoundaryAdjoint::px1(double t) const { return 3.0 * kPi * std::exp(kRate * (t - T)); }

double boundary_adjoint_residual(const BoundaryAdjoint& adj, int samples) {
    const double hx = 1e-3, ht = 1e-4;
    const auto cxx = [&](double x, double t, double d) {
        return (adj.p(x + d, t) - 2.0 * adj.p(x, t) + adj.p(x - d, t)) / (d * d);
    };
    const auto ct = [&](double x, double t, double d) { return (adj.p(x, t + d) - adj.p(x, t - d)) / (2.0 * d); };
    double worst = 0.0;
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
            const double x = (i + 0.5) / samples;
            const double t = adj.T * (j + 0.5) / samples;
            if (t + 2 * ht >= adj.T || t - 2 * ht <= 0.0) continue;
            const double pxx = (4.0 * cxx(x, t, hx / 2) - cxx(x, t, hx)) / 3.0;
            const double pt = (4.0 * ct(x, t, ht / 2) - ct(x, t, ht)) / 3.0;
            worst = std::max(worst, std::abs(-pt - pxx));
        }
    return worst;
}

double boundary_gap() {
    // int_{1/3}^{2/3} sin^2(3 pi x) dx = 1/6 and ||sin(3 pi x)||^2 = 1/2
    return (1.0 / 6.0) / std::sqrt(0.5);
}

ObstructionReport boundary_pairing(const std::vector<BoundarySignal>& signals, double T, const PairingOptions& opts) {
    if (!(T > 0.0)) throw InvalidInput("horizon T must be positive");
    const BoundaryAdjoint adj{T};
    const GridFunction pT = GridFunction::sample(opts.n_eval, [&](double x) { return adj.p(x, T); });
    const GridFunction y_d = GridFunction::sample(opts.n_eval, [&](double x) { return std::max(adj.p(x, T), 0.0); });

    ObstructionReport rep;
    rep.gap_lower_bound = boundary_gap();
    rep.pairing_value = signals.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    int id = 0;
    for (const auto& sig : signals) {
        for (const auto& w : sig.windows)
            if (w.u0 < 0.0 || w.u1 < 0.0) throw InvalidInput("boundary pairing needs nonnegative signals");
        const BoundaryState st = evolve_boundary(sig, T, opts.k_max);
        const GridFunction yT = evaluate_series(st.state, opts.n_eval);

        // trapezoid on the grid is exact for these trigonometric products
        std::vector<double> prod(yT.size());
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = yT[i] * pT[i];
        double lhs = 0.0;
        const double h = yT.spacing();
        for (std::size_t i = 1; i < prod.size(); ++i) lhs += 0.5 * h * (prod[i - 1] + prod[i]);

        double rhs = 0.0;
        for (const auto& w : sig.windows) {
            const double s0 = std::max(0.0, w.t_start), s1 = std::min(T, w.t_end);
            if (!(s1 > s0)) continue;
            // int exp(9 pi^2 (t - T)) dt over [s0, s1]
            const double e = std::exp(kRate * (s1 - T)) * -std::expm1(-kRate * (s1 - s0)) / kRate;
            rhs += w.u0 * (-3.0 * kPi) * e - w.u1 * (3.0 * kPi) * e;
        }
        PairingSample s;
        s.id = id++;
        s.lhs = lhs;
        s.rhs = rhs;
        s.residual = std::abs(lhs - rhs);
        s.distance = distance_l2(yT, y_d);
        s.pass = s.residual <= opts.identity_tol && s.rhs <= 0.0;
        rep.pairing_value = std::max(rep.pairing_value, rhs);
        rep.identity_residual = std::max(rep.identity_residual, s.residual);
        rep.samples.push_back(s);
    }
    return rep;
}

}  // namespace heatlab
