#pragma once

#include <span>

#include "mpe/signal.hpp"

namespace mpe {

/// Orthonormal DCT-II:
///   X_k = c_k sum_j x_j cos(pi k (2j + 1) / 2n),  c_0 = sqrt(1/n), c_k = sqrt(2/n).
Signal dct_forward(std::span<const double> x);

/// Orthonormal DCT-III, the exact inverse of dct_forward.
Signal dct_inverse(std::span<const double> coefficients);

}  // namespace mpe
