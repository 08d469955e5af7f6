#include "mpe/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "mpe/signals.hpp"
#include "mpe/transforms.hpp"

namespace mpe {
namespace {

Signal forward(std::span<const double> x, const DenoiseOptions& options) {
  require_finite_signal(x, "observation");
  return options.domain == Domain::time ? dct_forward(x) : Signal(x.begin(), x.end());
}

Signal backward(Signal c, const DenoiseOptions& options) {
  return options.domain == Domain::time ? dct_inverse(c) : c;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
}

}  // namespace

DenoiseResult sure_denoise(std::span<const double> x, double sigma, const ShrinkageScheme& scheme,
                           const DenoiseOptions& options) {
  check_sigma(sigma);
  const Signal c = forward(x, options);
  const std::size_t n = c.size();
  const double s2 = sigma * sigma;
  std::size_t k = 1;
  if (const auto* band = std::get_if<Subband>(&scheme)) {
    if (band->k == 0) throw DomainError("subband size must be >= 1");
    k = band->k;
  }

  DenoiseResult result;
  Signal shrunk(n);
  double total_risk = 0.0;
  for (std::size_t start = 0; start < n; start += k) {
    const std::size_t len = std::min(k, n - start);
    double e = 0.0;
    for (std::size_t j = start; j < start + len; ++j) e += c[j] * c[j];
    const double dof = static_cast<double>(len);
    const double a = e > 0.0 ? std::clamp(1.0 - dof * s2 / e, 0.0, 1.0) : 0.0;
    total_risk += (a - 1.0) * (a - 1.0) * e + 2.0 * a * dof * s2 - dof * s2;
    result.gains.push_back(a);
    for (std::size_t j = start; j < start + len; ++j) shrunk[j] = a * c[j];
  }
  result.risk_trace.push_back({1, total_risk, std::nullopt});
  result.iterations_used = 1;
  result.estimate = backward(std::move(shrunk), options);
  return result;
}

double universal_threshold(std::size_t n, double sigma) {
  check_sigma(sigma);
  if (n < 2) throw DomainError("universal threshold needs n >= 2");
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

double soft_threshold(double c, double tau) {
  if (!(tau >= 0.0)) throw DomainError("threshold must be >= 0");
  const double magnitude = std::max(std::abs(c) - tau, 0.0);
  return c < 0.0 ? -magnitude : magnitude;
}

DenoiseResult soft_threshold_denoise(std::span<const double> x, double sigma,
                                     const DenoiseOptions& options) {
  const double tau = universal_threshold(x.size(), sigma);
  const Signal c = forward(x, options);
  DenoiseResult result;
  Signal shrunk(c.size());
  result.gains.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    shrunk[i] = soft_threshold(c[i], tau);
    result.gains[i] = c[i] != 0.0 ? shrunk[i] / c[i] : 0.0;
  }
  result.iterations_used = 1;
  result.estimate = backward(std::move(shrunk), options);
  return result;
}

MultiObservationSet::MultiObservationSet(std::vector<Signal> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) throw DomainError("need at least one observation");
  for (const auto& o : observations_) {
    require_finite_signal(o, "observation");
    if (o.size() != observations_.front().size()) {
      throw DomainError("observations differ in length");
    }
  }
}

Signal ml_average(const MultiObservationSet& obs) {
  Signal mean(obs.length(), 0.0);
  for (const auto& o : obs.observations()) {
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += o[i];
  }
  const double m = static_cast<double>(obs.count());
  for (auto& v : mean) v /= m;
  return mean;
}

DenoiseResult ml_l1_denoise(const MultiObservationSet& obs, double sigma, bool iterative,
                            std::size_t n_iter, const DenoiseOptions& options) {
  check_sigma(sigma);
  const Signal average = ml_average(obs);
  const GaussianNoise averaged_noise(sigma / std::sqrt(static_cast<double>(obs.count())));
  if (iterative) return iterate_l1(average, averaged_noise, n_iter, options);
  return denoise_pointwise(average, ExpectedL1{}, averaged_noise, options);
}

}  // namespace mpe
