#include <algorithm>
#include <cmath>

#include "heatlab/errors.hpp"
#include "heatlab/synthesis.hpp"

namespace heatlab {

std::vector<SourceWindow> MobilePlan::source_windows() const {
    std::vector<SourceWindow> out;
    for (std::size_t j = 0; j < controls.size(); ++j)
        if (active[j]) out.push_back(controls[j].window());
    std::sort(out.begin(), out.end(),
              [](const SourceWindow& a, const SourceWindow& b) { return a.t_start < b.t_start; });
    return out;
}

MobilePlan synthesize_mobile_additive(const GridFunction& y_d, double length_l, double T, double epsilon,
                                      const MobileOptions& opts) {
    if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
    if (!(length_l > 0.0 && length_l <= 1.0)) throw InvalidInput("length_l must be in (0,1]");
    if (!(T > opts.t_origin)) throw InvalidInput("T must exceed the plan origin");
    if (y_d.min() < 0.0) throw InvalidInput("target must be nonnegative");
    const std::size_t n = y_d.size();
    const int K = opts.k_max > 0 ? opts.k_max : static_cast<int>(n) - 2;
    if (K > static_cast<int>(n) - 2) throw InvalidInput("k_max exceeds the grid's interpolating mode count");

    MobilePlan plan;
    plan.decomposition = decompose_target(y_d, length_l);
    plan.epsilon = epsilon;
    plan.T = T;
    plan.t_origin = opts.t_origin;
    plan.k_max = K;
    plan.n_points = n;
    const int M = plan.decomposition.piece_count;

    int nonzero = 0;
    for (const auto& p : plan.decomposition.pieces)
        if (p.values.max() > 0.0) ++nonzero;

    // Mollification gets eps/2 in total, shared equally by the nonzero pieces;
    // each steering pulse gets eps/(2M).
    const double mollify_tol = nonzero > 0 ? epsilon / (2.0 * nonzero) : epsilon / 2.0;
    const double steer_tol = epsilon / (2.0 * M);
    const double horizon = T - opts.t_origin;
    double delta_prev = horizon / 2.0;

    for (int j = 1; j <= M; ++j) {
        const auto& piece = plan.decomposition.pieces[static_cast<std::size_t>(j - 1)];
        const bool is_active = piece.values.max() > 0.0;
        GridFunction moll = GridFunction::zeros(n);
        double moll_err = 0.0;
        if (is_active) {
            const double margin = opts.margin_fraction * piece.support.length();
            MollifyResult r = mollify_piece(piece.values, piece.support, margin, mollify_tol, opts.mollify);
            moll = std::move(r.values);
            moll_err = r.distance;
        }
        plan.decomposition.mollified.push_back({piece.support, moll});

        const PulseVariant variant = j == M ? PulseVariant::plain : PulseVariant::zero_tail;
        SineSeries series = project_to_sine(moll, K);
        const double delta = choose_delta(series, steer_tol, variant, delta_prev / 2.0);
        plan.deltas.push_back(delta);
        plan.controls.push_back(build_pulse_control(series, piece.support, T, delta, variant));
        plan.active.push_back(is_active);
        plan.mollify_errors.push_back(moll_err);
        plan.steering_errors.push_back(predict_pulse_error(series, delta, variant));
        plan.representation_errors.push_back(distance_l2(evaluate_series(series, n), moll));
        delta_prev = delta;
    }

    // r(t) = 0 until T - delta_1, then (j-1) l between T - delta_{j-1} and
    // T - delta_j, and 1 - l on the last segment
    std::vector<double> breaks{opts.t_origin};
    std::vector<double> pos;
    for (int j = 1; j < M; ++j) {
        breaks.push_back(T - plan.deltas[static_cast<std::size_t>(j - 1)]);
        pos.push_back((j - 1) * length_l);
    }
    breaks.push_back(T);
    pos.push_back(std::max(0.0, 1.0 - length_l));
    plan.schedule = SupportSchedule(length_l, std::move(breaks), std::move(pos));

    plan.predicted_error = 0.0;
    for (int j = 0; j < M; ++j) {
        const auto u = static_cast<std::size_t>(j);
        plan.predicted_error += plan.mollify_errors[u] + plan.representation_errors[u];
        if (plan.active[u]) plan.predicted_error += plan.steering_errors[u];
    }
    return plan;
}

}  // namespace heatlab
