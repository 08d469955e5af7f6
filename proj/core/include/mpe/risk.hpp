#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include "mpe/noise_model.hpp"

namespace mpe {

/// Probability that the estimate leaves an epsilon-neighbourhood of the truth.
struct Mpe {
  double epsilon;
};
/// Expected absolute error E|s_hat - s|.
struct ExpectedL1 {};
/// Stein's unbiased estimate of the mean-squared error.
struct Sure {};

using RiskCriterion = std::variant<Mpe, ExpectedL1, Sure>;

/// MPE risk of the shrinkage estimate a*x when x = s_tilde + w.
///
/// For a > 0 this is 1 - F((eps - (a-1) s) / a) + F(-(eps + (a-1) s) / a) with
/// F the noise CDF (two-Q closed form for Gaussian noise, weighted two-Q sum
/// for a GMM). At a = 0 the estimate is 0 and the risk is the indicator
/// |s_tilde| > epsilon.
double mpe_pointwise(double s_tilde, double a, double epsilon, const NoiseModel& model);

/// GMM form of mpe_pointwise.
double mpe_gmm(double s_tilde, double a, double epsilon, const GmmModel& gmm);

/// One band of a subband MPE evaluation under N(0, sigma^2 I) noise.
struct SubbandRiskInputs {
  std::span<const double> s_tilde;
  double a;
  double epsilon;
  double sigma;

  std::size_t k() const noexcept { return s_tilde.size(); }
  /// sum_j (1-a)^2 s_j^2 / (a sigma)^2
  double noncentrality() const;
  /// (epsilon / (a sigma))^2
  double threshold() const;
};

/// P(||a x - s||_2 > epsilon) = 1 - F_ncx2(theta | k, lambda); at a = 0 the
/// indicator ||s_tilde|| > epsilon.
double mpe_subband(const SubbandRiskInputs& inputs);

/// Same as above, checking that `model` is Gaussian with the given sigma.
/// Throws UnsupportedError for any other family.
double mpe_subband(const SubbandRiskInputs& inputs, const NoiseModel& model);

/// Subband risk from the band energy ||s_tilde||^2, for callers that scan a.
double mpe_subband_from_energy(double energy, std::size_t k, double a, double epsilon,
                               double sigma);

/// Closed-form expected l1 distortion E|a x - s| under N(0, sigma^2) noise.
/// At a = 0 returns |s_tilde|.
double l1_gaussian(double s_tilde, double a, double sigma);

/// Expected l1 distortion under GMM noise.
double l1_gmm(double s_tilde, double a, const GmmModel& gmm);

/// Dispatches to l1_gaussian / l1_gmm; other families throw UnsupportedError.
double l1_risk(double s_tilde, double a, const NoiseModel& model);

/// (a-1)^2 x^2 + 2 a sigma^2 - sigma^2, minimized at a = 1 - sigma^2/x^2.
double sure_pointwise_risk(double x, double a, double sigma);

/// (a-1)^2 ||x||^2 + 2 a k sigma^2 - k sigma^2.
double sure_subband_risk(std::span<const double> x, double a, double sigma);

}  // namespace mpe
