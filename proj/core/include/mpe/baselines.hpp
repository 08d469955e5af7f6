#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpe/shrinkage.hpp"
#include "mpe/signal.hpp"

namespace mpe {

/// Closed-form SURE shrinkage: pointwise a = clamp(1 - sigma^2/x^2),
/// subband a = clamp(1 - k sigma^2/||x_J||^2).
DenoiseResult sure_denoise(std::span<const double> x, double sigma, const ShrinkageScheme& scheme,
                           const DenoiseOptions& options = {});

/// sigma sqrt(2 ln n).
double universal_threshold(std::size_t n, double sigma);

/// sign(c) max(|c| - tau, 0).
double soft_threshold(double c, double tau);

/// Soft thresholding of the DCT coefficients at the universal threshold.
/// `gains` holds the effective ratio estimate/input per coefficient.
DenoiseResult soft_threshold_denoise(std::span<const double> x, double sigma,
                                     const DenoiseOptions& options = {});

/// M >= 1 noisy copies of the same signal.
class MultiObservationSet {
 public:
  explicit MultiObservationSet(std::vector<Signal> observations);

  std::size_t count() const noexcept { return observations_.size(); }
  std::size_t length() const noexcept { return observations_.front().size(); }
  const std::vector<Signal>& observations() const noexcept { return observations_; }

 private:
  std::vector<Signal> observations_;
};

/// Coefficient-wise mean, the ML estimate under i.i.d. Gaussian noise.
Signal ml_average(const MultiObservationSet& obs);

/// Expected-l1 shrinkage of the ML average with noise level sigma / sqrt(M),
/// optionally refined by iterate_l1. Uses options.domain for both the
/// observations and the estimate.
DenoiseResult ml_l1_denoise(const MultiObservationSet& obs, double sigma, bool iterative,
                            std::size_t n_iter, const DenoiseOptions& options = {});

}  // namespace mpe
