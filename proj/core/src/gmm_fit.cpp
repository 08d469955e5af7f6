#include "mpe/gmm_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "mpe/error.hpp"

namespace mpe {
namespace {

struct Params {
  std::vector<double> alpha;
  std::vector<double> theta;
  std::vector<double> sigma;
};

// k-means++ centres followed by one hard assignment.
std::optional<Params> seed_params(std::span<const double> x, std::size_t m, double spread,
                                  RngStream& rng) {
  const std::size_t n = x.size();
  std::vector<double> centres{x[rng.index(n)]};
  std::vector<double> d2(n);
  while (centres.size() < m) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double c : centres) best = std::min(best, (x[i] - c) * (x[i] - c));
      d2[i] = best;
      total += best;
    }
    if (!(total > 0.0)) return std::nullopt;
    double target = rng.uniform() * total;
    std::size_t pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      target -= d2[i];
      if (target < 0.0) {
        pick = i;
        break;
      }
    }
    centres.push_back(x[pick]);
  }

  std::vector<double> count(m, 0.0);
  std::vector<double> sum(m, 0.0);
  std::vector<double> sum2(m, 0.0);
  for (double v : x) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < m; ++j) {
      if (std::abs(v - centres[j]) < std::abs(v - centres[best])) best = j;
    }
    count[best] += 1.0;
    sum[best] += v;
  }
  Params p{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t j = 0; j < m; ++j) {
    if (count[j] < 2.0) return std::nullopt;
    p.alpha[j] = count[j] / static_cast<double>(n);
    p.theta[j] = sum[j] / count[j];
  }
  for (double v : x) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < m; ++j) {
      if (std::abs(v - centres[j]) < std::abs(v - centres[best])) best = j;
    }
    sum2[best] += (v - p.theta[best]) * (v - p.theta[best]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    p.sigma[j] = std::max(std::sqrt(sum2[j] / count[j]), 1e-3 * spread);
  }
  return p;
}

// Responsibilities (row-major n x m) and total log-likelihood.
double e_step(std::span<const double> x, const Params& p, std::vector<double>& resp) {
  const std::size_t m = p.alpha.size();
  const double log_root_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  std::vector<double> log_weight(m);
  for (std::size_t j = 0; j < m; ++j) {
    log_weight[j] = std::log(p.alpha[j]) - std::log(p.sigma[j]) - log_root_2pi;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double* r = resp.data() + i * m;
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      const double u = (x[i] - p.theta[j]) / p.sigma[j];
      r[j] = log_weight[j] - 0.5 * u * u;
      peak = std::max(peak, r[j]);
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      r[j] = std::exp(r[j] - peak);
      norm += r[j];
    }
    for (std::size_t j = 0; j < m; ++j) r[j] /= norm;
    total += peak + std::log(norm);
  }
  return total;
}

// Returns false when a component collapses.
bool m_step(std::span<const double> x, const std::vector<double>& resp, double sigma_floor,
            Params& p) {
  const std::size_t m = p.alpha.size();
  const std::size_t n = x.size();
  std::vector<double> nk(m, 0.0);
  std::vector<double> sx(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      nk[j] += resp[i * m + j];
      sx[j] += resp[i * m + j] * x[i];
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!(nk[j] > 1e-8 * static_cast<double>(n))) return false;
    p.theta[j] = sx[j] / nk[j];
    p.alpha[j] = nk[j] / static_cast<double>(n);
  }
  std::vector<double> sxx(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = x[i] - p.theta[j];
      sxx[j] += resp[i * m + j] * d * d;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    p.sigma[j] = std::sqrt(sxx[j] / nk[j]);
    if (!(p.sigma[j] >= sigma_floor)) return false;
  }
  return true;
}

GmmModel to_model(const Params& p) {
  std::vector<GmmComponent> comps;
  double total = 0.0;
  for (double a : p.alpha) total += a;
  for (std::size_t j = 0; j < p.alpha.size(); ++j) {
    comps.push_back({p.alpha[j] / total, p.theta[j], p.sigma[j]});
  }
  return GmmModel(std::move(comps));
}

}  // namespace

GmmFit gmm_fit_em(std::span<const double> samples, std::size_t m_components, RngStream& rng,
                  const EmOptions& options) {
  if (m_components == 0) throw DomainError("gmm_fit_em: need at least one component");
  if (samples.size() < 10 * m_components) {
    throw DomainError("gmm_fit_em: need at least 10 samples per component");
  }
  require_finite_signal(samples, "EM samples");

  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  const double spread = std::sqrt(var / n);
  if (!(spread > 0.0)) throw DomainError("gmm_fit_em: samples have zero spread");
  const double sigma_floor = options.sigma_floor_ratio * spread;

  if (options.initialisations == 0) throw DomainError("gmm_fit_em: need at least one initialisation");
  std::vector<double> resp(samples.size() * m_components);
  std::optional<GmmFit> best;
  std::size_t completed = 0;
  std::size_t collapses = 0;
  while (completed < options.initialisations && collapses <= options.max_restarts) {
    auto seeded = seed_params(samples, m_components, spread, rng);
    if (!seeded) {
      ++collapses;
      continue;
    }
    Params p = std::move(*seeded);

    GmmFit fit{to_model(p), {}, 0, 0, false};
    double previous = e_step(samples, p, resp);
    fit.log_likelihood.push_back(previous);
    bool collapsed = false;
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
      if (!m_step(samples, resp, sigma_floor, p)) {
        collapsed = true;
        break;
      }
      const double current = e_step(samples, p, resp);
      fit.log_likelihood.push_back(current);
      fit.iterations = it;
      if (std::abs(current - previous) <= options.relative_tolerance * std::abs(current)) {
        fit.converged = true;
        break;
      }
      previous = current;
    }
    if (collapsed) {
      ++collapses;
      continue;
    }
    ++completed;
    fit.model = to_model(p);
    if (!best || fit.log_likelihood.back() > best->log_likelihood.back()) best = std::move(fit);
  }
  if (!best) throw NumericError("gmm_fit_em: components collapsed on every restart");
  best->restarts = collapses;
  return *best;
}

}  // namespace mpe
