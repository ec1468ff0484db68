#pragma once

#include <cstddef>

namespace heatlab {

/// Unnormalised DST-I: out[k] = 2 sum_j in[j] sin(pi (j+1)(k+1)/(n+1)).
/// in and out must not alias. Thread safe; plans are cached per length.
void dst1(const double* in, double* out, std::size_t n);

}  // namespace heatlab
