#pragma once

#include <functional>
#include <vector>

namespace heatlab {

/// 20-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

/// Gauss-Legendre on [a, b] split into `pieces` equal panels.
double gauss_legendre_composite(const std::function<double(double)>& f, double a, double b,
                                int pieces);

/// Trapezoid rule for samples ys taken at increasing abscissae xs.
double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace heatlab
