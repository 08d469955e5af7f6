#pragma once

#include <cstddef>
#include <vector>

namespace mpe {

/// Deviation delta allowed with probability at most alpha, for noise level
/// sigma; epsilon is the MPE tolerance.
class PerturbationQuery {
 public:
  PerturbationQuery(double delta, double alpha, double sigma = 1.0, double epsilon = 1.0);

  double delta() const noexcept { return delta_; }
  double alpha() const noexcept { return alpha_; }
  double sigma() const noexcept { return sigma_; }
  double epsilon() const noexcept { return epsilon_; }

  /// delta^2 / (2 sigma^2 log(2/alpha)), the bound on |a'_opt(s)|^2.
  double derivative_bound_squared() const;

 private:
  double delta_;
  double alpha_;
  double sigma_;
  double epsilon_;
};

struct SnrThreshold {
  double snr_db = 0.0;
  /// Set when the condition also holds somewhere below the reported value.
  bool non_monotone = false;
};

/// Left-hand side of the SURE requirement
///   (s^6 / 8 sigma^6) (delta - sigma^4 / ((s^2 + sigma^2) s^2))^2.
double sure_deviation_exponent(double s, const PerturbationQuery& q);

/// Smallest input SNR s^2/sigma^2 (dB) above which the SURE exponent
/// reaches log(2/alpha). The search starts where the bias term equals delta
/// (below it the first-order bound is vacuous) and bisects on s up to
/// 1e3 sigma. Throws NumericError if the bracket holds no root.
SnrThreshold sure_min_snr(const PerturbationQuery& q);

struct MpeSensitivityOptions {
  /// Coarse grid for the argmin before refinement.
  std::size_t grid_resolution = 10000;
  /// Central-difference step h = ratio * s.
  double fd_step_ratio = 1e-3;
  /// SNR scan spacing and upper end.
  double scan_step_db = 0.02;
  double max_snr_db = 40.0;
};

/// argmin over a in [0, 1] of the true Gaussian MPE risk R(s; a), found on
/// the grid then refined by bisection on the sign of dR/da inside the
/// neighbouring cells.
double mpe_optimal_gain(double s, double epsilon, double sigma, std::size_t grid_resolution);

/// |a'_opt(s)| by central differences.
double mpe_gain_slope(double s, double epsilon, double sigma, const MpeSensitivityOptions& options);

/// |a'_opt| sampled over the SNR scan for one (epsilon, sigma); thresholds
/// for any (delta, alpha) are read off without recomputing argmins.
class MpeSensitivityProfile {
 public:
  MpeSensitivityProfile(double epsilon, double sigma, const MpeSensitivityOptions& options = {});

  /// Smallest SNR (dB) above which |a'_opt|^2 <= q.derivative_bound_squared()
  /// holds for every larger s in the scan. The scan starts just above
  /// s = epsilon; below it a_opt is identically 0.
  SnrThreshold threshold(const PerturbationQuery& q) const;

  const std::vector<double>& snr_db() const noexcept { return snr_db_; }
  const std::vector<double>& slope() const noexcept { return slope_; }

 private:
  double epsilon_;
  double sigma_;
  MpeSensitivityOptions options_;
  std::vector<double> snr_db_;
  std::vector<double> slope_;
};

SnrThreshold mpe_min_snr(const PerturbationQuery& q, const MpeSensitivityOptions& options = {});

}  // namespace mpe
