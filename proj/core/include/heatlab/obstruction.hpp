#pragma once

#include <vector>

#include "heatlab/field.hpp"
#include "heatlab/heat.hpp"

namespace heatlab {

inline constexpr double kIdentityTol = 1e-6;
inline constexpr double kQuadratureTol = 1e-6;
inline constexpr double kP1Tol = 1e-3;

/// Closed-form adjoint of the static-support problem; omega must sit in (1/m, 1).
struct StaticAdjoint {
    int m = 2;
    double T = 1.0;

    double phi(double x) const;
    double h(double x, double t) const;
    double p(double x, double t) const;
    /// (m-2) m^3 pi^2 / (m-1)^2
    double h_prefactor() const;
    /// m^2 pi^2 / (m-1)^2, the rate in p = phi exp(rate (t - T))
    double rate() const;
    /// int_0^1 phi(x) sin(k pi x) dx
    double phi_mode(int k) const;
    /// int_0^{1/m} sin(m pi x) sin(k pi x) dx
    double h_mode(int k) const;
    double phi_norm() const;
};

StaticAdjoint build_static_adjoint(int m, double T);

/// max |-p_t - p_xx - h| over sampled interior points, by Richardson-extrapolated
/// central differences of the closed form.
double static_adjoint_residual(const StaticAdjoint& adj, int samples = 64);

/// Returns (int y_d phi) / ||phi|| for y_d = max(phi, 0).
double unreachability_gap(const StaticAdjoint& adj);

struct PairingSample {
    int id = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double distance = 0.0;  ///< ||y(T) - y_d||, when a target is in play
    bool pass = true;
};

struct ObstructionReport {
    double pairing_value = 0.0;      ///< worst (largest) rhs
    double identity_residual = 0.0;  ///< worst |lhs - rhs|
    double gap_lower_bound = 0.0;
    std::vector<PairingSample> samples;

    bool pass() const;
};

struct PairingOptions {
    int k_max = kDefaultModes;
    std::size_t n_eval = kDefaultPoints;
    double identity_tol = kIdentityTol;
    double quadrature_tol = kQuadratureTol;
    double gap_tol = 1e-3;
};

ObstructionReport duality_pairing_static(const StaticAdjoint& adj, const std::vector<PiecewiseControl>& controls,
                                         const PairingOptions& opts = {});

/// p = -exp(9 pi^2 (t - T)) sin(3 pi x)
struct BoundaryAdjoint {
    double T = 1.0;

    double p(double x, double t) const;
    double px0(double t) const;
    double px1(double t) const;
};

double boundary_adjoint_residual(const BoundaryAdjoint& adj, int samples = 64);

/// (1/6) / ||sin(3 pi x)||
double boundary_gap();

ObstructionReport boundary_pairing(const std::vector<BoundarySignal>& signals, double T,
                                   const PairingOptions& opts = {});

struct StripSample {
    int id = 0;
    double strip_norm = 0.0;
    double min_value = 0.0;  ///< over the whole run
    bool pass = true;
};

struct StripReport {
    double floor = 0.0;
    std::vector<StripSample> samples;
    bool vacuous = false;

    bool pass() const;
};

struct StripOptions {
    double dt = kDefaultDt;
    double comparison_tol = 1e-4;
    int strip_modes = 256;
};

/// Norm on (alpha, beta) at T of the heat flow started from y0 restricted to the strip.
double strip_floor(const GridFunction& y0, const Interval& strip, double T, int strip_modes = 256);

StripReport verify_strip_obstruction(const GridFunction& y0, const std::vector<std::vector<ReactionWindow>>& v_samples,
                                     const Interval& omega, const Interval& strip, double T,
                                     const StripOptions& opts = {});

struct P1Report {
    double max_yt = 0.0;
    double bound_a = 0.0;
    double min_yx0 = 0.0;
    double max_yx0 = 0.0;
    double bound_b = 0.0;
    double min_yx1 = 0.0;
    double max_yx1 = 0.0;
    double bound_c = 0.0;
    bool a_pass = true;
    bool b_pass = true;
    bool c_pass = true;
    double min_value = 0.0;

    bool pass() const noexcept { return a_pass && b_pass && c_pass; }
};

struct P1Options {
    double dt = 1e-5;
    bool positivity_dt = true;
    double tol = kP1Tol;
};

P1Report check_p1_bounds(const GridFunction& y0, const GridFunction& v, double T, const P1Options& opts = {});

}  // namespace heatlab
