#pragma once

#include <memory>
#include <vector>

#include "heatlab/field.hpp"
#include "heatlab/heat.hpp"

namespace heatlab {

enum class PulseVariant { plain, zero_tail };

const char* to_string(PulseVariant v) noexcept;

/// ((1 - e^{-r})/r - 1)^2
double psi(double r);
/// ((e^{-r} - e^{-2r})/r - 1)^2
double psi_hat(double r);

/// H1_0 distance between the pulse-steered state and the target.
double predict_pulse_error(const SineSeries& target, double delta, PulseVariant variant);
/// Same error measured in L2.
double predict_pulse_error_l2(const SineSeries& target, double delta, PulseVariant variant);

/// First delta in delta_init, delta_init/2, ... whose predicted error is at most epsilon.
double choose_delta(const SineSeries& target, double epsilon, PulseVariant variant, double delta_init,
                    int max_halvings = 60);

struct PulseControl {
    double delta = 0.0;
    PulseVariant variant = PulseVariant::plain;
    SineSeries target_series;
    Interval support;
    double T = 0.0;

    double active_start() const noexcept;
    double active_end() const noexcept;
    /// The active source window; the zero tail of zero_tail pulses carries no source.
    SourceWindow window() const;
};

/// Profile vanishing is checked on the grid with n_check points; by default the
/// grid on which target_series interpolates (k_max + 2 points).
PulseControl build_pulse_control(const SineSeries& target, const Interval& support, double T,
                                 double delta, PulseVariant variant, std::size_t n_check = 0);

struct MobileOptions {
    /// Modes for the pulse targets; 0 means the full interpolating set n - 2.
    int k_max = 0;
    /// Initial ramp width as a fraction of each piece's length.
    double margin_fraction = 0.125;
    /// C^4 ramps by default: sharp C^1 ramps ring in the sine interpolant and
    /// push the state below zero by more than the negativity tolerance.
    MollifyOptions mollify{60, 2.0, 4};
    /// Plan lives on (t_origin, T).
    double t_origin = 0.0;
};

struct MobilePlan {
    TargetDecomposition decomposition;
    std::vector<double> deltas;
    std::vector<PulseControl> controls;
    std::vector<bool> active;  ///< false for pieces that are identically zero
    SupportSchedule schedule;
    double predicted_error = 0.0;
    std::vector<double> mollify_errors;
    std::vector<double> steering_errors;        ///< predicted, H1_0
    std::vector<double> representation_errors;  ///< grid vs truncated series, L2
    double epsilon = 0.0;
    double T = 0.0;
    double t_origin = 0.0;
    int k_max = 0;
    std::size_t n_points = 0;

    /// Active windows ordered by start time.
    std::vector<SourceWindow> source_windows() const;
};

MobilePlan synthesize_mobile_additive(const GridFunction& y_d, double length_l, double T, double epsilon,
                                      const MobileOptions& opts = {});

struct LiftOptions {
    double floor_rho = 1e-8;
    double start_margin = 1e-3;
    int samples_per_window = 64;
    /// Time at which y0 is given.
    double t_origin = 0.0;
    /// Target growth per CN step, used for the recommended step cap.
    double step_growth = 0.05;
};

struct LiftResult {
    std::vector<ReactionWindow> windows;
    SineSeries y0_series;
    double rho_measured = 0.0;
    double u_sup = 0.0;
    double v_sup = 0.0;
    double identity_residual = 0.0;  ///< max |u - v y| / |u| on sampled active points
    double recommended_dt = 0.0;
};

/// v = u / y on the active set of the plan, with y the additive trajectory from y0.
LiftResult lift_to_multiplicative(const MobilePlan& plan, const GridFunction& y0,
                                  const LiftOptions& opts = {});

/// Grid values of the additive solution from y0 (given at t_origin) at time t.
GridFunction additive_state_at(const MobilePlan& plan, const SineSeries& y0_series, double t_origin,
                               double t);

struct DampingOptions {
    std::vector<double> m_grid{1e2, 1e3, 1e4, 1e5};
    double dt = kDefaultDt;
    double t_start = 0.0;
    double energy_tol = 1e-6;
};

struct DampingCertificate {
    std::vector<double> window_norms;      ///< squared, over the window's support
    std::vector<double> cumulative_norms;  ///< squared, over (0, j l)
    double final_norm = 0.0;
    std::vector<double> C1;
    std::vector<double> C2;
    std::vector<double> time_gaps;
    std::vector<double> gap_caps;
    std::vector<bool> within_cap;
    std::vector<double> energy_integrals;
    std::vector<double> energy_bounds;
    double window_threshold = 0.0;  ///< eps^2 / (4 (2M - 1))
    bool shortcut = false;

    bool window_ok(std::size_t j) const;
    bool cumulative_ok(std::size_t j) const;
    bool energy_ok(std::size_t j, double tol) const;
    bool final_ok(double epsilon) const { return final_norm <= epsilon / 2.0; }
};

struct DampingResult {
    std::vector<double> m;
    std::vector<double> T_j;
    Trajectory trajectory;
    DampingCertificate certificate;
    std::vector<ReactionWindow> windows;
    SupportSchedule schedule;
    GridFunction final_state;
    double T_M = 0.0;
};

DampingResult damping_sweep(const GridFunction& y0, double length_l, double epsilon, double T_budget,
                            const DampingOptions& opts = {});

struct MultiplicativeOptions {
    DampingOptions damping;
    MobileOptions additive;
    LiftOptions lift;
};

struct MultiplicativePlan {
    DampingResult damping;
    MobilePlan additive;
    LiftResult lift;
    std::vector<ReactionWindow> v_windows;
    SupportSchedule schedule;
    double T_M = 0.0;
    GridFunction final_state;  ///< y(T) via the lift identity
    double residue_norm = 0.0;     ///< ||yhat_1(T)||
    double stage2_error = 0.0;     ///< ||yhat_2(T) - (y_d + yhat_1(T))||
    double total_error = 0.0;      ///< ||y(T) - y_d||
};

MultiplicativePlan synthesize_multiplicative_mobile(const GridFunction& y0, const GridFunction& y_d,
                                                    double length_l, double T, double epsilon,
                                                    const MultiplicativeOptions& opts = {});

}  // namespace heatlab
