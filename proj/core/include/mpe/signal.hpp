#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace mpe {

/// Ordered real samples, in either the time or the DCT domain.
using Signal = std::vector<double>;

/// Throws DomainError naming `what` if the signal is empty or holds a
/// non-finite sample.
void require_finite_signal(std::span<const double> x, std::string_view what);

double energy(std::span<const double> x);

}  // namespace mpe
