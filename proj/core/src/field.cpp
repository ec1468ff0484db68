#include "heatlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heatlab/errors.hpp"
#include "heatlab/sine_transform.hpp"

namespace heatlab {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi))
        throw InvalidInput("interval must satisfy 0 <= lo < hi <= 1, got (" + std::to_string(lo) +
                           ", " + std::to_string(hi) + ")");
}

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 3) throw InvalidInput("grid function needs at least 3 points");
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidInput("grid function values must be finite");
}

GridFunction GridFunction::zeros(std::size_t n_points) {
    return GridFunction(std::vector<double>(n_points, 0.0));
}

GridFunction GridFunction::sample(std::size_t n_points, const std::function<double(double)>& f) {
    if (n_points < 3) throw InvalidInput("grid function needs at least 3 points");
    std::vector<double> v(n_points);
    const double h = 1.0 / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) v[i] = f(static_cast<double>(i) * h);
    return GridFunction(std::move(v));
}

bool GridFunction::is_dirichlet(double tol) const noexcept {
    return std::abs(values_.front()) <= tol && std::abs(values_.back()) <= tol;
}

double GridFunction::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

SineSeries::SineSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidInput("sine series needs k_max >= 1");
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw InvalidInput("sine coefficients must be finite");
}

SineSeries SineSeries::zeros(int k_max) {
    if (k_max < 1) throw InvalidInput("sine series needs k_max >= 1");
    return SineSeries(std::vector<double>(static_cast<std::size_t>(k_max), 0.0));
}

bool SineSeries::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

namespace {

template <class Op>
SineSeries combine(const SineSeries& a, const SineSeries& b, Op op) {
    const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.coeffs().size() ? a.coeffs()[i] : 0.0;
        const double y = i < b.coeffs().size() ? b.coeffs()[i] : 0.0;
        c[i] = op(x, y);
    }
    return SineSeries(std::move(c));
}

template <class Op>
GridFunction combine(const GridFunction& a, const GridFunction& b, Op op) {
    if (a.size() != b.size()) throw InvalidInput("grid sizes differ");
    std::vector<double> c(a.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = op(a[i], b[i]);
    return GridFunction(std::move(c));
}

}  // namespace

SineSeries operator+(const SineSeries& a, const SineSeries& b) { return combine(a, b, std::plus<>{}); }
SineSeries operator-(const SineSeries& a, const SineSeries& b) { return combine(a, b, std::minus<>{}); }
SineSeries operator*(double s, const SineSeries& a) {
    std::vector<double> c = a.coeffs();
    for (double& v : c) v *= s;
    return SineSeries(std::move(c));
}
GridFunction operator+(const GridFunction& a, const GridFunction& b) { return combine(a, b, std::plus<>{}); }
GridFunction operator-(const GridFunction& a, const GridFunction& b) { return combine(a, b, std::minus<>{}); }
GridFunction operator*(double s, const GridFunction& a) {
    std::vector<double> c = a.values();
    for (double& v : c) v *= s;
    return GridFunction(std::move(c));
}

SupportSchedule::SupportSchedule(double length, std::vector<double> breaks, std::vector<double> pos)
    : length_l(length), breakpoints(std::move(breaks)), positions(std::move(pos)) {
    if (!(length_l > 0.0 && length_l <= 1.0)) throw InvalidInput("schedule length must be in (0,1]");
    if (positions.empty() || breakpoints.size() != positions.size() + 1)
        throw InvalidInput("schedule needs one more breakpoint than positions");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw InvalidInput("schedule breakpoints must be increasing");
    for (double r : positions)
        if (r < 0.0 || r > 1.0 - length_l + 1e-12)
            throw InvalidInput("schedule position puts omega(t) outside [0,1]");
}

double SupportSchedule::position_at(double t) const {
    if (t < breakpoints.front() || t > breakpoints.back())
        throw InvalidInput("time outside the schedule horizon");
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t seg = static_cast<std::size_t>(it - breakpoints.begin());
    seg = seg == 0 ? 0 : seg - 1;
    if (seg >= positions.size()) seg = positions.size() - 1;
    return positions[seg];
}

Interval SupportSchedule::support_at(double t) const {
    const double r = position_at(t);
    return Interval(r, std::min(1.0, r + length_l));
}

SineSeries project_to_sine(const GridFunction& f, int k_max) {
    if (k_max < 1) throw InvalidInput("k_max must be >= 1");
    const std::size_t N = f.size() - 1;
    if (static_cast<std::size_t>(k_max) >= N)
        throw InvalidInput("k_max " + std::to_string(k_max) + " reaches the grid Nyquist limit " +
                           std::to_string(N - 1));
    // Trapezoid sum over interior points is exactly DST-I of length N-1.
    std::vector<double> out(N - 1);
    dst1(f.values().data() + 1, out.data(), N - 1);
    const double half_h = 0.5 / static_cast<double>(N);
    std::vector<double> a(static_cast<std::size_t>(k_max));
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = half_h * out[k];
    return SineSeries(std::move(a));
}

GridFunction evaluate_series(const SineSeries& s, std::size_t n_points) {
    if (n_points < 3) throw InvalidInput("grid function needs at least 3 points");
    const std::size_t N = n_points - 1;
    // sin(k pi i/N) is 2N-periodic in k and odd, so mode k lands on a folded
    // index in 1..N-1 with a sign, or vanishes at the grid when k = 0 mod N.
    std::vector<double> folded(N - 1, 0.0);
    const auto& a = s.coeffs();
    for (std::size_t k = 1; k <= a.size(); ++k) {
        std::size_t r = k % (2 * N);
        double sign = 1.0;
        if (r > N) {
            r = 2 * N - r;
            sign = -1.0;
        }
        if (r == 0 || r == N) continue;
        folded[r - 1] += sign * a[k - 1];
    }
    std::vector<double> v(n_points, 0.0);
    dst1(folded.data(), v.data() + 1, N - 1);
    v.front() = 0.0;
    v.back() = 0.0;
    return GridFunction(std::move(v));
}

double evaluate_at(const SineSeries& s, double x) {
    double acc = 0.0;
    for (int k = 1; k <= s.k_max(); ++k) acc += s.coeff(k) * std::sin(k * std::numbers::pi * x);
    return 2.0 * acc;
}

double norm_l2(const SineSeries& s) {
    double acc = 0.0;
    for (double c : s.coeffs()) acc += c * c;
    return std::sqrt(2.0 * acc);
}

double norm_l2(const GridFunction& f) { return std::sqrt(integral_sq(f, 0.0, 1.0)); }

double norm_h01(const SineSeries& s) {
    double acc = 0.0;
    for (int k = 1; k <= s.k_max(); ++k) {
        const double c = s.coeff(k) * k;
        acc += c * c;
    }
    return std::sqrt(2.0 * std::numbers::pi * std::numbers::pi * acc);
}

double distance_l2(const GridFunction& a, const GridFunction& b) { return norm_l2(a - b); }

double integral_sq(const GridFunction& f, double a, double b) {
    a = std::max(a, 0.0);
    b = std::min(b, 1.0);
    if (!(b > a)) return 0.0;
    const std::size_t N = f.size() - 1;
    const double h = f.spacing();
    const auto sq = [&](std::size_t i) { return f[i] * f[i]; };
    double acc = 0.0;
    const auto i0 = static_cast<std::size_t>(std::floor(a / h));
    const auto i1 = std::min(N, static_cast<std::size_t>(std::ceil(b / h)));
    for (std::size_t i = i0; i < i1 && i < N; ++i) {
        const double xl = static_cast<double>(i) * h;
        const double xr = xl + h;
        const double cl = std::max(a, xl);
        const double cr = std::min(b, xr);
        if (!(cr > cl)) continue;
        if (cl == xl && cr == xr) {
            acc += 0.5 * h * (sq(i) + sq(i + 1));
            continue;
        }
        const auto interp = [&](double x) { return sq(i) + (sq(i + 1) - sq(i)) * (x - xl) / h; };
        acc += 0.5 * (cr - cl) * (interp(cl) + interp(cr));
    }
    return acc;
}

int piece_count(double length_l) {
    if (!(length_l > 0.0 && length_l <= 1.0)) throw InvalidInput("length_l must be in (0,1]");
    // guard against 1/l landing a hair above an integer, e.g. l = 1/3
    return static_cast<int>(std::ceil(1.0 / length_l - 1e-12));
}

TargetDecomposition decompose_target(const GridFunction& y_d, double length_l) {
    if (!(length_l > 0.0 && length_l <= 1.0)) throw InvalidInput("length_l must be in (0,1]");
    if (y_d.min() < 0.0) throw InvalidInput("target must be nonnegative");
    TargetDecomposition d;
    d.piece_count = piece_count(length_l);
    const int M = d.piece_count;
    const std::size_t n = y_d.size();
    for (int j = 1; j <= M; ++j) {
        const double lo = (j - 1) * length_l;
        const double hi = j == M ? 1.0 : j * length_l;
        std::vector<double> v(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = y_d.x(i);
            // half-open (lo, hi]: a point on jl belongs to the lower piece
            const bool in = (j == 1 ? x >= lo : x > lo) && (j == M ? true : x <= hi);
            if (in) v[i] = y_d[i];
        }
        d.pieces.push_back({Interval(lo, hi), GridFunction(std::move(v))});
    }
    return d;
}

namespace {

// Generalised smoothstep, C^order at both ends; order 1 is 3s^2 - 2s^3.
double smoothstep(double s, int order) {
    s = std::clamp(s, 0.0, 1.0);
    double acc = 0.0, binom_a = 1.0, binom_b = 1.0;
    // binom_a = C(N+k, k), binom_b = C(2N+1, N-k)
    for (int k = 0; k < order; ++k) binom_b *= static_cast<double>(2 * order + 1 - k) / (k + 1);
    for (int k = 0; k <= order; ++k) {
        acc += binom_a * binom_b * std::pow(-s, k);
        binom_a *= static_cast<double>(order + k + 1) / (k + 1);
        binom_b *= static_cast<double>(order - k) / (order + k + 2);
    }
    return std::pow(s, order + 1) * acc;
}

struct RampEval {
    std::vector<double> values;
    double err_lo_sq;
    double err_hi_sq;
};

RampEval apply_ramps(const GridFunction& piece, const Interval& sup, double m_lo, double m_hi, int order) {
    const std::size_t n = piece.size();
    std::vector<double> v(n, 0.0), diff_lo(n, 0.0), diff_hi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = piece.x(i);
        if (x <= sup.lo) {
            diff_lo[i] = piece[i];
            continue;
        }
        if (x >= sup.hi) {
            diff_hi[i] = piece[i];
            continue;
        }
        double c = 1.0;
        if (x < sup.lo + m_lo) {
            c = smoothstep((x - sup.lo) / m_lo, order);
            diff_lo[i] = (1.0 - c) * piece[i];
        } else if (x > sup.hi - m_hi) {
            c = smoothstep((sup.hi - x) / m_hi, order);
            diff_hi[i] = (1.0 - c) * piece[i];
        }
        v[i] = c * piece[i];
    }
    GridFunction dl(std::move(diff_lo)), dh(std::move(diff_hi));
    return {std::move(v), integral_sq(dl, 0.0, 1.0), integral_sq(dh, 0.0, 1.0)};
}

}  // namespace

MollifyResult mollify_piece(const GridFunction& piece, const Interval& support, double margin,
                            double tol, const MollifyOptions& opts) {
    if (!(margin > 0.0 && margin < support.length() / 4.0))
        throw InvalidInput("margin must lie in (0, (hi-lo)/4)");
    if (!(tol > 0.0)) throw InvalidInput("mollification tolerance must be positive");
    if (piece.min() < 0.0) throw InvalidInput("piece must be nonnegative");
    for (std::size_t i = 0; i < piece.size(); ++i) {
        const double x = piece.x(i);
        if ((x < support.lo || x > support.hi) && piece[i] != 0.0)
            throw InvalidInput("piece does not vanish outside its support");
    }
    const double min_margin = opts.min_margin_cells * piece.spacing();
    double m_lo = margin, m_hi = margin;
    for (int retry = 0; retry <= opts.retry_cap; ++retry) {
        RampEval r = apply_ramps(piece, support, m_lo, m_hi, opts.ramp_order);
        const double dist = std::sqrt(r.err_lo_sq + r.err_hi_sq);
        if (dist <= tol) return {GridFunction(std::move(r.values)), dist, m_lo, m_hi, retry};
        // shrink only the side that dominates the error
        double& side = r.err_lo_sq >= r.err_hi_sq ? m_lo : m_hi;
        if (side / 2.0 < min_margin)
            throw MollificationFailure("mollification distance " + std::to_string(dist) +
                                       " above tol " + std::to_string(tol) +
                                       " at the minimum resolvable margin; refine the grid");
        side /= 2.0;
    }
    throw MollificationFailure("mollification retry cap reached");
}

}  // namespace heatlab
