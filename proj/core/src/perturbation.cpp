#include "mpe/perturbation.hpp"

#include <cmath>

#include "mpe/error.hpp"
#include "mpe/shrinkage.hpp"
#include "mpe/special_functions.hpp"

namespace mpe {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

double gaussian_mpe(double s, double a, double epsilon, double sigma) {
  if (a == 0.0) return std::abs(s) > epsilon ? 1.0 : 0.0;
  const double bias = (a - 1.0) * s;
  return q_function((epsilon - bias) / (a * sigma)) + q_function((epsilon + bias) / (a * sigma));
}

// Sign of dR/da for s > epsilon, from
//   dR/da ∝ phi(u1) (s + eps) - phi(u2) (s - eps),  u2^2 - u1^2 = -4 (1-a) s eps / (a sigma)^2.
double risk_slope_sign(double s, double a, double epsilon, double sigma) {
  return std::log((s + epsilon) / (s - epsilon)) -
         2.0 * (1.0 - a) * s * epsilon / (a * a * sigma * sigma);
}

double to_db(double s, double sigma) { return 20.0 * std::log10(s / sigma); }
double from_db(double db, double sigma) { return sigma * std::pow(10.0, db / 20.0); }

}  // namespace

PerturbationQuery::PerturbationQuery(double delta, double alpha, double sigma, double epsilon)
    : delta_(delta), alpha_(alpha), sigma_(sigma), epsilon_(epsilon) {
  require_positive(delta, "delta");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  require_positive(sigma, "sigma");
  require_positive(epsilon, "epsilon");
}

double PerturbationQuery::derivative_bound_squared() const {
  return delta_ * delta_ / (2.0 * sigma_ * sigma_ * std::log(2.0 / alpha_));
}

double sure_deviation_exponent(double s, const PerturbationQuery& q) {
  require_positive(s, "s");
  const double sigma = q.sigma();
  const double r = s / sigma;
  const double bias = std::pow(sigma, 4) / ((s * s + sigma * sigma) * s * s);
  const double gap = q.delta() - bias;
  return std::pow(r, 6) / 8.0 * gap * gap;
}

SnrThreshold sure_min_snr(const PerturbationQuery& q) {
  const double sigma = q.sigma();
  const double target = std::log(2.0 / q.alpha());
  // Bias term equals delta at s0^2 = sigma^2 (-1 + sqrt(1 + 4/delta)) / 2.
  double lo = sigma * std::sqrt(0.5 * (-1.0 + std::sqrt(1.0 + 4.0 / q.delta())));
  double hi = 1e3 * sigma;
  auto excess = [&](double s) { return sure_deviation_exponent(s, q) - target; };
  if (excess(hi) < 0.0) throw NumericError("SURE perturbation bound not met below 1e3 sigma");
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0.0 ? hi : lo) = mid;
  }
  // The exponent grows with s past the bias crossing; confirm on a log grid.
  SnrThreshold out{to_db(hi, sigma), false};
  const double step = std::log(1e3 * sigma / hi) / 2000.0;
  for (int i = 1; i <= 2000; ++i) {
    if (excess(hi * std::exp(step * i)) < 0.0) {
      out.non_monotone = true;
      break;
    }
  }
  return out;
}

double mpe_optimal_gain(double s, double epsilon, double sigma, std::size_t grid_resolution) {
  require_positive(epsilon, "epsilon");
  require_positive(sigma, "sigma");
  s = std::abs(s);
  if (!std::isfinite(s)) throw DomainError("s must be finite");
  if (s <= epsilon) return 0.0;  // a = 0 already has zero risk
  const double coarse =
      grid_minimize([&](double a) { return gaussian_mpe(s, a, epsilon, sigma); }, grid_resolution, 0.0);
  const double cell = 1.0 / static_cast<double>(grid_resolution - 1);
  double lo = std::max(coarse - cell, 0.5 * cell * 1e-6);
  double hi = std::min(coarse + cell, 1.0);
  if (risk_slope_sign(s, hi, epsilon, sigma) < 0.0) return hi;
  if (risk_slope_sign(s, lo, epsilon, sigma) > 0.0) return coarse;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (risk_slope_sign(s, mid, epsilon, sigma) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double mpe_gain_slope(double s, double epsilon, double sigma, const MpeSensitivityOptions& options) {
  require_positive(s, "s");
  const double h = options.fd_step_ratio * s;
  const double up = mpe_optimal_gain(s + h, epsilon, sigma, options.grid_resolution);
  const double down = mpe_optimal_gain(s - h, epsilon, sigma, options.grid_resolution);
  return std::abs(up - down) / (2.0 * h);
}

MpeSensitivityProfile::MpeSensitivityProfile(double epsilon, double sigma,
                                             const MpeSensitivityOptions& options)
    : epsilon_(epsilon), sigma_(sigma), options_(options) {
  require_positive(epsilon, "epsilon");
  require_positive(sigma, "sigma");
  require_positive(options.scan_step_db, "scan step");
  require_positive(options.fd_step_ratio, "finite-difference step");
  // Keep s - h above epsilon so the difference never straddles the a = 0 region.
  const double first_db =
      to_db(epsilon * (1.0 + 2.0 * options.fd_step_ratio), sigma) + options.scan_step_db;
  if (!(first_db < options.max_snr_db)) throw DomainError("SNR scan range is empty");
  for (double db = first_db; db <= options.max_snr_db + 1e-12; db += options.scan_step_db) {
    snr_db_.push_back(db);
    slope_.push_back(mpe_gain_slope(from_db(db, sigma), epsilon, sigma, options));
  }
}

SnrThreshold MpeSensitivityProfile::threshold(const PerturbationQuery& q) const {
  const double bound = std::sqrt(q.derivative_bound_squared());
  std::size_t last_fail = slope_.size();
  for (std::size_t i = slope_.size(); i-- > 0;) {
    if (slope_[i] > bound) {
      last_fail = i;
      break;
    }
  }
  if (last_fail == slope_.size()) return {snr_db_.front(), false};
  if (last_fail + 1 == slope_.size()) {
    throw NumericError("MPE perturbation bound not met within the SNR scan");
  }
  SnrThreshold out{0.0, false};
  for (std::size_t j = 0; j < last_fail; ++j) {
    if (slope_[j] <= bound) {
      out.non_monotone = true;
      break;
    }
  }
  double lo = from_db(snr_db_[last_fail], sigma_);
  double hi = from_db(snr_db_[last_fail + 1], sigma_);
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    (mpe_gain_slope(mid, epsilon_, sigma_, options_) > bound ? lo : hi) = mid;
  }
  out.snr_db = to_db(hi, sigma_);
  return out;
}

SnrThreshold mpe_min_snr(const PerturbationQuery& q, const MpeSensitivityOptions& options) {
  return MpeSensitivityProfile(q.epsilon(), q.sigma(), options).threshold(q);
}

}  // namespace mpe
