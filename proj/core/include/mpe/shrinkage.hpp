#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mpe/error.hpp"
#include "mpe/noise_model.hpp"
#include "mpe/risk.hpp"
#include "mpe/signal.hpp"

namespace mpe {

inline constexpr std::size_t kDefaultGridResolution = 1001;

struct Pointwise {};

/// Contiguous bands of k transform coefficients sharing one gain. The last
/// band may be shorter. Without an explicit epsilon the default rule is used
/// with each band's true length.
struct Subband {
  std::size_t k = 16;
  std::optional<double> epsilon;
};

using ShrinkageScheme = std::variant<Pointwise, Subband>;

/// 3 sigma.
double default_pointwise_epsilon(double sigma);
/// 3 sigma for k = 1, 1.75 sqrt(k) sigma for 2 <= k <= 16, 1.25 sqrt(k) sigma above.
double default_subband_epsilon(std::size_t k, double sigma);

enum class Domain {
  /// Input and output are time-domain samples; the DCT is applied internally.
  time,
  /// Input and output are DCT coefficients.
  transform,
};

struct DenoiseOptions {
  std::size_t grid_resolution = kDefaultGridResolution;
  Domain domain = Domain::time;
  /// Stand-in for the clean signal inside the risk (same domain as x).
  /// Absent: the noisy observation itself.
  std::optional<Signal> pilot;
  /// Clean signal (same domain as x); when present, iterate_l1 records the
  /// output SNR of every iteration.
  std::optional<Signal> reference;
};

struct IterationRecord {
  std::size_t iteration = 0;
  /// Sum of the minimized per-coefficient risks.
  double risk = 0.0;
  std::optional<double> snr_db;
};

struct DenoiseResult {
  /// One gain per coefficient (pointwise) or per band (subband), in [0, 1].
  std::vector<double> gains;
  /// Denoised signal in the caller's domain.
  Signal estimate;
  std::vector<IterationRecord> risk_trace;
  std::size_t iterations_used = 0;
};

/// i-th point of the uniform grid {0, 1/(r-1), ..., 1}.
inline double grid_point(std::size_t i, std::size_t resolution) {
  return i + 1 == resolution ? 1.0
                             : static_cast<double>(i) / static_cast<double>(resolution - 1);
}

namespace detail {
[[noreturn]] void throw_nonfinite_risk(double a, double value);
void require_resolution(std::size_t resolution);
}  // namespace detail

/// Minimizes risk(a) over the uniform grid on [0, 1], returning the grid
/// point of smallest risk with ties broken toward the smallest a.
///
/// The scan runs from a = 0 upward and stops at the first point whose risk
/// does not exceed `floor`; when `floor` is a lower bound of the risk, that
/// point is the tie-broken minimizer. Throws NumericError on a non-finite
/// risk value.
template <class RiskFn>
double grid_minimize(RiskFn&& risk, std::size_t resolution = kDefaultGridResolution,
                     double floor = -std::numeric_limits<double>::infinity()) {
  detail::require_resolution(resolution);
  double best_a = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < resolution; ++i) {
    const double a = grid_point(i, resolution);
    const double value = risk(a);
    if (!std::isfinite(value)) detail::throw_nonfinite_risk(a, value);
    if (value < best) {
      best = value;
      best_a = a;
      if (value <= floor) break;
    }
  }
  return best_a;
}

/// grid_minimize for risks that are convex in a (every expected-l1 risk is,
/// being the expectation of |a x - s|). Binary search on the sign of the
/// forward difference; returns the same grid point as the exhaustive scan
/// using O(log r) evaluations.
template <class RiskFn>
double grid_minimize_convex(RiskFn&& risk, std::size_t resolution = kDefaultGridResolution) {
  detail::require_resolution(resolution);
  auto eval = [&](std::size_t i) {
    const double a = grid_point(i, resolution);
    const double value = risk(a);
    if (!std::isfinite(value)) detail::throw_nonfinite_risk(a, value);
    return value;
  };
  // Smallest i with risk(i) <= risk(i + 1); r - 1 if none.
  std::size_t lo = 0;
  std::size_t hi = resolution - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (eval(mid) <= eval(mid + 1)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return grid_point(lo, resolution);
}

/// Pointwise shrinkage a_i x_i with a_i minimizing the criterion's risk at
/// s_tilde_i (pilot_i, or x_i without a pilot).
///
/// Mpe works with every noise family; ExpectedL1 needs Gaussian or GMM noise.
/// Sure is forwarded to sure_denoise and needs Gaussian noise.
DenoiseResult denoise_pointwise(std::span<const double> x, const RiskCriterion& criterion,
                                const NoiseModel& model, const DenoiseOptions& options = {});

/// Subband MPE shrinkage; Gaussian noise only.
DenoiseResult denoise_subband(std::span<const double> x, const Subband& scheme,
                              const NoiseModel& model, const DenoiseOptions& options = {});

/// Iterated expected-l1 minimization: starting from s_tilde = x, each pass
/// picks per-coefficient gains a_opt for the current s_tilde and sets
/// s_tilde = a_opt * x (always shrinking the original observation). Stops
/// after n_iter passes or once the gains repeat.
DenoiseResult iterate_l1(std::span<const double> x, const NoiseModel& model, std::size_t n_iter,
                         const DenoiseOptions& options = {});

/// Optimal pointwise gain for a grid of a-posteriori SNR values x^2/sigma^2
/// (linear, not dB) under Gaussian noise, x = sigma sqrt(value). Sure returns
/// the closed form max(0, 1 - sigma^2/x^2).
std::vector<double> shrinkage_profile(const RiskCriterion& criterion, const NoiseModel& model,
                                      std::span<const double> aposteriori_snr,
                                      std::size_t resolution = kDefaultGridResolution);

std::string criterion_name(const RiskCriterion& criterion);

}  // namespace mpe
