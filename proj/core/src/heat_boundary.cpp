#include <cmath>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/heat.hpp"

namespace heatlab {

BoundaryState evolve_boundary(const BoundarySignal& signal, double T, int k_max) {
    if (!(T > 0.0)) throw InvalidInput("horizon T must be positive");
    if (k_max < 1) throw InvalidInput("k_max must be >= 1");
    constexpr double pi = std::numbers::pi;
    double prev_end = 0.0, sup0 = 0.0, sup1 = 0.0;
    for (const auto& w : signal.windows) {
        if (!std::isfinite(w.u0) || !std::isfinite(w.u1) || !std::isfinite(w.t_start) || !std::isfinite(w.t_end))
            throw InvalidInput("boundary signal values must be finite");
        if (!(w.t_start < w.t_end) || w.t_start < prev_end)
            throw InvalidInput("boundary windows must be ordered and nonoverlapping");
        prev_end = w.t_end;
        sup0 = std::max(sup0, std::abs(w.u0));
        sup1 = std::max(sup1, std::abs(w.u1));
    }

    BoundaryState out;
    out.b.assign(static_cast<std::size_t>(k_max), 0.0);
    for (int k = 1; k <= k_max; ++k) {
        const double lam = pi * pi * k * k;
        const double sign = k % 2 == 1 ? 1.0 : -1.0;
        double acc = 0.0;
        for (const auto& w : signal.windows) {
            const double s0 = std::max(0.0, w.t_start);
            const double s1 = std::min(T, w.t_end);
            if (!(s1 > s0)) continue;
            // integral of exp(-lam (T - s)) over [s0, s1]
            const double integral = std::exp(-lam * (T - s1)) * (-std::expm1(-lam * (s1 - s0))) / lam;
            acc += (w.u0 + sign * w.u1) * integral;
        }
        out.b[static_cast<std::size_t>(k - 1)] = std::numbers::sqrt2 * k * pi * acc;
    }
    // the transposition basis is sqrt(2) sin(k pi x); ours is 2 sin(k pi x)
    std::vector<double> a(out.b.size());
    double bound_sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = out.b[i] / std::numbers::sqrt2;
        out.energy += out.b[i] * out.b[i];
        const double k = static_cast<double>(i + 1);
        bound_sum += 1.0 / (k * k);
    }
    out.state = SineSeries(std::move(a));
    out.energy_bound = 2.0 / (pi * pi) * (sup0 + sup1) * (sup0 + sup1) * bound_sum;
    return out;
}

}  // namespace heatlab
