#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "heatlab/field.hpp"
#include "heatlab/heat.hpp"

namespace heatlab {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64). Uniform draws take the top
/// 53 bits so the stream is identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    /// [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    /// Integer in [lo, hi].
    int integer(int lo, int hi) {
        return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
    }
    /// Child generator for the i-th independent sample.
    Rng split(std::uint64_t i) const { return Rng(seed_ ^ (0x9E3779B97F4A7C15ULL * (i + 1))); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Positive part of a random trigonometric polynomial on the support, zero outside.
GridFunction random_trig_profile(Rng& rng, const Interval& support, std::size_t n_points, int terms = 6);

/// Nonnegative source: `windows` equal time windows on (0, T), each with its
/// own random profile and amplitude in [0, amplitude_max].
PiecewiseControl random_source_control(Rng& rng, const Interval& support, double T, std::size_t n_points,
                                       int windows = 8, double amplitude_max = 10.0);

/// Piecewise-constant nonnegative boundary data with values in [0, u_max].
BoundarySignal random_boundary_signal(Rng& rng, double T, int windows = 8, double u_max = 1.0);

/// Bounded reaction coefficient on the support, piecewise constant in time.
/// Values lie in [-bound, bound], or [-bound, 0] when nonpositive is set.
std::vector<ReactionWindow> random_reaction(Rng& rng, const Interval& support, double T, std::size_t n_points,
                                            double bound, bool nonpositive, int windows = 8);

/// Sum of one to three C-infinity bumps with compact support inside (0, 1).
GridFunction random_smooth_bump(Rng& rng, std::size_t n_points);

/// exp(-1/(1-s^2)) profile on (a, b), scaled to peak 1.
double smooth_bump(double x, double a, double b);

}  // namespace heatlab
