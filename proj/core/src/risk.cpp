#include "mpe/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpe/error.hpp"
#include "mpe/special_functions.hpp"

namespace mpe {
namespace {

void check_gain(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("shrinkage gain a must lie in [0, 1]");
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
}

void check_value(double s, const char* what) {
  if (!std::isfinite(s)) throw DomainError(std::string(what) + " must be finite");
}

// E|mu + Z| for Z ~ N(0, 1).
double folded_normal_mean(double mu) {
  const double m = std::abs(mu);
  return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * m * m) +
         m * std::erf(m / std::numbers::sqrt2);
}

}  // namespace

double mpe_pointwise(double s_tilde, double a, double epsilon, const NoiseModel& model) {
  check_value(s_tilde, "s_tilde");
  check_gain(a);
  check_epsilon(epsilon);
  if (const auto* gmm = std::get_if<GmmModel>(&model)) return mpe_gmm(s_tilde, a, epsilon, *gmm);
  if (a == 0.0) return std::abs(s_tilde) > epsilon ? 1.0 : 0.0;
  const double bias = (a - 1.0) * s_tilde;
  if (const auto* g = std::get_if<GaussianNoise>(&model)) {
    const double scale = a * g->sigma();
    return std::min(1.0, q_function((epsilon - bias) / scale) + q_function((epsilon + bias) / scale));
  }
  const double risk = survival(model, (epsilon - bias) / a) + cdf(model, -(epsilon + bias) / a);
  return std::clamp(risk, 0.0, 1.0);
}

double mpe_gmm(double s_tilde, double a, double epsilon, const GmmModel& gmm) {
  check_value(s_tilde, "s_tilde");
  check_gain(a);
  check_epsilon(epsilon);
  if (a == 0.0) return std::abs(s_tilde) > epsilon ? 1.0 : 0.0;
  // Error (a-1)s + a w; component m shifts it by a theta_m and scales by a sigma_m.
  double risk = 0.0;
  for (const auto& c : gmm.components()) {
    const double centre = (a - 1.0) * s_tilde + a * c.theta;
    const double scale = a * c.sigma;
    risk += c.alpha * (q_function((epsilon - centre) / scale) + q_function((epsilon + centre) / scale));
  }
  return std::clamp(risk, 0.0, 1.0);
}

double SubbandRiskInputs::noncentrality() const {
  double e = 0.0;
  for (double v : s_tilde) e += v * v;
  const double ratio = (1.0 - a) / (a * sigma);
  return ratio * ratio * e;
}

double SubbandRiskInputs::threshold() const {
  const double t = epsilon / (a * sigma);
  return t * t;
}

double mpe_subband_from_energy(double energy, std::size_t k, double a, double epsilon,
                               double sigma) {
  check_gain(a);
  check_epsilon(epsilon);
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(energy >= 0.0) || !std::isfinite(energy)) throw DomainError("band energy must be finite");
  if (k == 0) throw DomainError("subband size must be >= 1");
  if (a == 0.0) return std::sqrt(energy) > epsilon ? 1.0 : 0.0;
  const double ratio = (1.0 - a) / (a * sigma);
  const double t = epsilon / (a * sigma);
  return noncentral_chi2_sf(t * t, static_cast<int>(k), ratio * ratio * energy);
}

double mpe_subband(const SubbandRiskInputs& inputs) {
  double e = 0.0;
  for (double v : inputs.s_tilde) {
    check_value(v, "s_tilde");
    e += v * v;
  }
  return mpe_subband_from_energy(e, inputs.k(), inputs.a, inputs.epsilon, inputs.sigma);
}

double mpe_subband(const SubbandRiskInputs& inputs, const NoiseModel& model) {
  const auto* g = std::get_if<GaussianNoise>(&model);
  if (g == nullptr) {
    throw UnsupportedError("subband MPE risk is only available for Gaussian noise, got " +
                           std::string(family_name(model)));
  }
  SubbandRiskInputs with_sigma = inputs;
  with_sigma.sigma = g->sigma();
  return mpe_subband(with_sigma);
}

double l1_gaussian(double s_tilde, double a, double sigma) {
  check_value(s_tilde, "s_tilde");
  check_gain(a);
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (a == 0.0) return std::abs(s_tilde);
  const double mu = (1.0 - a) * s_tilde / (a * sigma);
  return a * sigma * folded_normal_mean(mu);
}

double l1_gmm(double s_tilde, double a, const GmmModel& gmm) {
  check_value(s_tilde, "s_tilde");
  check_gain(a);
  if (a == 0.0) return std::abs(s_tilde);
  double risk = 0.0;
  for (const auto& c : gmm.components()) {
    const double mu = -((a - 1.0) * s_tilde + a * c.theta) / (a * c.sigma);
    risk += c.alpha * a * c.sigma * folded_normal_mean(mu);
  }
  return risk;
}

double l1_risk(double s_tilde, double a, const NoiseModel& model) {
  if (const auto* g = std::get_if<GaussianNoise>(&model)) return l1_gaussian(s_tilde, a, g->sigma());
  if (const auto* gmm = std::get_if<GmmModel>(&model)) return l1_gmm(s_tilde, a, *gmm);
  throw UnsupportedError("expected l1 risk needs Gaussian or GMM noise, got " +
                         std::string(family_name(model)));
}

double sure_pointwise_risk(double x, double a, double sigma) {
  check_value(x, "x");
  check_gain(a);
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  return (a - 1.0) * (a - 1.0) * x * x + 2.0 * a * sigma * sigma - sigma * sigma;
}

double sure_subband_risk(std::span<const double> x, double a, double sigma) {
  check_gain(a);
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (x.empty()) throw DomainError("subband must be non-empty");
  double e = 0.0;
  for (double v : x) {
    check_value(v, "x");
    e += v * v;
  }
  const double k = static_cast<double>(x.size());
  const double s2 = sigma * sigma;
  return (a - 1.0) * (a - 1.0) * e + 2.0 * a * k * s2 - k * s2;
}

}  // namespace mpe
