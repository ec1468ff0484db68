#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace heatlab {

inline constexpr std::size_t kDefaultPoints = 1025;
inline constexpr int kDefaultModes = 256;

/// Open subinterval (lo, hi) of [0, 1].
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_);

    double length() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return x > lo && x < hi; }
    bool contains(const Interval& o) const noexcept { return o.lo >= lo && o.hi <= hi; }
    bool overlaps(const Interval& o) const noexcept { return o.lo < hi && lo < o.hi; }
};

/// Samples y(x_i) at x_i = i/(n-1), endpoints included.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(std::vector<double> values);

    static GridFunction zeros(std::size_t n_points);
    static GridFunction sample(std::size_t n_points, const std::function<double(double)>& f);

    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const noexcept { return 1.0 / static_cast<double>(values_.size() - 1); }
    double x(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

    bool is_dirichlet(double tol = 0.0) const noexcept;
    double min() const noexcept;
    double max() const noexcept;

private:
    std::vector<double> values_;
};

/// y(x) = 2 sum_k a_k sin(k pi x); coeffs()[k-1] holds a_k.
class SineSeries {
public:
    SineSeries() = default;
    explicit SineSeries(std::vector<double> coeffs);

    static SineSeries zeros(int k_max);

    int k_max() const noexcept { return static_cast<int>(coeffs_.size()); }
    double coeff(int k) const noexcept { return coeffs_[static_cast<std::size_t>(k - 1)]; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept;

private:
    std::vector<double> coeffs_;
};

SineSeries operator+(const SineSeries& a, const SineSeries& b);
SineSeries operator-(const SineSeries& a, const SineSeries& b);
SineSeries operator*(double s, const SineSeries& a);
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);

/// Piecewise-constant support position r(t) with omega(t) = (r(t), r(t) + l).
/// breakpoints has one more entry than positions; segment i is
/// [breakpoints[i], breakpoints[i+1]).
struct SupportSchedule {
    double length_l = 0.0;
    std::vector<double> breakpoints;
    std::vector<double> positions;

    SupportSchedule() = default;
    SupportSchedule(double length, std::vector<double> breaks, std::vector<double> pos);

    double position_at(double t) const;
    Interval support_at(double t) const;
};

struct TargetPiece {
    Interval support;
    GridFunction values;
};

struct TargetDecomposition {
    std::vector<TargetPiece> pieces;
    std::vector<TargetPiece> mollified;
    int piece_count = 0;
};

/// Trapezoid sine coefficients; rejects k_max >= n_points - 1.
SineSeries project_to_sine(const GridFunction& f, int k_max);
/// Evaluates on a uniform grid. Modes beyond the grid Nyquist index are folded
/// onto their aliases so the values stay exact at grid points.
GridFunction evaluate_series(const SineSeries& s, std::size_t n_points);
/// Direct sum at one point; slow, meant for checks and off-grid probes.
double evaluate_at(const SineSeries& s, double x);

double norm_l2(const SineSeries& s);
double norm_l2(const GridFunction& f);
double norm_h01(const SineSeries& s);
double distance_l2(const GridFunction& a, const GridFunction& b);
/// Trapezoid integral of f^2 over (a, b); partial cells use linear
/// interpolation of f^2.
double integral_sq(const GridFunction& f, double a, double b);

/// Smallest M with M*l >= 1.
int piece_count(double length_l);
TargetDecomposition decompose_target(const GridFunction& y_d, double length_l);

struct MollifyOptions {
    int retry_cap = 60;
    /// Ramps narrower than this many grid cells are not resolvable.
    double min_margin_cells = 2.0;
    /// Ramp smoothness: the cutoff is C^ramp_order at both ends (1 is 3s^2 - 2s^3).
    int ramp_order = 1;
};

struct MollifyResult {
    GridFunction values;
    double distance = 0.0;  ///< discrete L2 distance to the input piece
    double margin_lo = 0.0;
    double margin_hi = 0.0;
    int retries = 0;
};

/// Smoothstep cutoff inside [lo, lo+margin] and [hi-margin, hi]. Each side's
/// margin is halved independently until the distance meets tol.
MollifyResult mollify_piece(const GridFunction& piece, const Interval& support, double margin,
                            double tol, const MollifyOptions& opts = {});

}  // namespace heatlab
