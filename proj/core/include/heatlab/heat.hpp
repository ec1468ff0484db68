#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "heatlab/field.hpp"

namespace heatlab {

inline constexpr double kNegativityTol = 1e-8;
inline constexpr double kDefaultDt = 1e-4;
inline constexpr std::size_t kDefaultSnapshotCap = 512;

/// Source u(x,t) = amplitude * profile(x) on [t_start, t_end).
struct SourceWindow {
    double t_start = 0.0;
    double t_end = 0.0;
    std::variant<GridFunction, SineSeries> profile;
    Interval support;
    double amplitude = 1.0;
};

/// Time-ordered source windows; represents u(x,t) piecewise in time.
using PiecewiseControl = std::vector<SourceWindow>;

/// Time-dependent reaction coefficient sampled on the solver grid.
using ReactionField = std::function<GridFunction(double t)>;

/// Reaction v(x,t) on [t_start, t_end). A scalar coefficient acts on the open
/// support and is zero elsewhere.
struct ReactionWindow {
    double t_start = 0.0;
    double t_end = 0.0;
    std::variant<double, GridFunction, ReactionField> coefficient;
    Interval support;
    /// Per-window step cap; 0 leaves the global dt in charge.
    double max_dt = 0.0;
};

struct BoundaryPiece {
    double t_start = 0.0;
    double t_end = 0.0;
    double u0 = 0.0;
    double u1 = 0.0;
};

struct BoundarySignal {
    std::vector<BoundaryPiece> windows;
};

struct TrajectoryDiagnostics {
    double min_value = 0.0;  ///< over every computed time level
    double max_value = 0.0;
    std::vector<double> l2_norms;      ///< per snapshot
    std::vector<double> interior_min;  ///< per snapshot, interior points only
    bool negativity_flag = false;
    double mp_bound_K = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<GridFunction> states;
    GridFunction final;
    std::optional<SineSeries> final_series;  ///< spectral runs only
    TrajectoryDiagnostics diag;
};

struct SpectralOptions {
    std::size_t n_eval = kDefaultPoints;  ///< evaluation grid for snapshots
    std::size_t snapshot_cap = kDefaultSnapshotCap;
    bool store_states = true;
    /// Time at which y0 is given.
    double t_start = 0.0;
};

/// a_k -> a_k exp(-pi^2 k^2 t).
SineSeries evolve_free(const SineSeries& y0, double t);

/// Exact Duhamel stepping for piecewise-constant-in-time sources. Grid
/// profiles are projected onto y0.k_max() modes.
Trajectory evolve_additive(const SineSeries& y0, const std::vector<SourceWindow>& windows, double T,
                           const SpectralOptions& opts = {});

/// Final state only, no diagnostics. y0 is given at t0.
SineSeries evolve_additive_final(const SineSeries& y0, const std::vector<SourceWindow>& windows,
                                 double T, double t0 = 0.0);

/// Source coefficients c_k of one window (profile times amplitude).
SineSeries source_series(const SourceWindow& w, int k_max);

/// Step observer for the CN solver; return false to stop early.
using StepObserver = std::function<bool(double t, const std::vector<double>& y)>;

struct CnOptions {
    /// Cap dt so the explicit half keeps a nonnegative stencil.
    bool positivity_dt = false;
    std::size_t snapshot_cap = kDefaultSnapshotCap;
    double negativity_tol = kNegativityTol;
    double t_start = 0.0;
    StepObserver observer;
};

/// Crank-Nicolson for y_t = y_xx + v y with homogeneous Dirichlet data.
Trajectory evolve_multiplicative(const GridFunction& y0, const std::vector<ReactionWindow>& windows,
                                 double T, double dt, const CnOptions& opts = {});

struct BoundaryState {
    SineSeries state;       ///< in the 2 sum a_k sin convention
    std::vector<double> b;  ///< transposition coefficients in the sqrt(2) sin basis
    double energy = 0.0;    ///< sum b_k^2
    double energy_bound = 0.0;
};

/// Transposition solution at T for boundary controls u0 at x=0, u1 at x=1.
BoundaryState evolve_boundary(const BoundarySignal& signal, double T, int k_max);

struct MpContext {
    bool y0_nonneg = true;
    bool y0_nonzero = true;
    bool u_nonneg = true;
    bool u_zero = true;
    bool v_nonpos = true;
    double initial_max = 0.0;
    double boundary_max = 0.0;
    double negativity_tol = kNegativityTol;
    double bound_tol = 1e-8;
    /// MP-iii is checked on snapshots at t >= this time.
    double positivity_from = 0.0;
};

struct MpReport {
    double min_value = 0.0;
    bool i_applicable = false;
    bool i_pass = true;
    double max_value = 0.0;
    double K = 0.0;
    bool ii_applicable = false;
    bool ii_pass = true;
    double interior_min = 0.0;
    bool iii_applicable = false;
    bool iii_pass = true;

    bool pass() const noexcept { return i_pass && ii_pass && iii_pass; }
};

MpReport maximum_principle_report(const Trajectory& traj, const MpContext& ctx);

}  // namespace heatlab
