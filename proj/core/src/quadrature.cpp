#include "heatlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "heatlab/errors.hpp"

namespace heatlab {

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double gauss_legendre_composite(const std::function<double(double)>& f, double a, double b,
                                int pieces) {
    if (pieces < 1) throw InvalidInput("need at least one quadrature panel");
    const double w = (b - a) / pieces;
    double acc = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * w;
        const double hi = i + 1 == pieces ? b : lo + w;
        acc += gauss_legendre(f, lo, hi);
    }
    return acc;
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw InvalidInput("trapezoid: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) acc += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
    return acc;
}

}  // namespace heatlab
