#include "mpe/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mpe/baselines.hpp"
#include "mpe/signals.hpp"
#include "mpe/transforms.hpp"

namespace mpe {

namespace detail {

void throw_nonfinite_risk(double a, double value) {
  std::ostringstream msg;
  msg << "risk evaluated to " << value << " at a = " << a;
  throw NumericError(msg.str());
}

void require_resolution(std::size_t resolution) {
  if (resolution < 2) throw DomainError("grid resolution must be >= 2");
}

}  // namespace detail

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double gaussian_sigma(const NoiseModel& model, const char* what) {
  const auto* g = std::get_if<GaussianNoise>(&model);
  if (g == nullptr) {
    throw UnsupportedError(std::string(what) + " needs Gaussian noise, got " +
                           std::string(family_name(model)));
  }
  return g->sigma();
}

void require_l1_model(const NoiseModel& model) {
  if (!std::holds_alternative<GaussianNoise>(model) && !std::holds_alternative<GmmModel>(model)) {
    throw UnsupportedError("expected l1 shrinkage needs Gaussian or GMM noise, got " +
                           std::string(family_name(model)));
  }
}

// Observation and pilot moved into the transform domain.
struct Coefficients {
  Signal x;
  Signal pilot;
};

Coefficients to_coefficients(std::span<const double> x, const DenoiseOptions& options) {
  require_finite_signal(x, "observation");
  Coefficients c;
  c.x = options.domain == Domain::time ? dct_forward(x) : Signal(x.begin(), x.end());
  if (options.pilot) {
    if (options.pilot->size() != x.size()) {
      throw DomainError("pilot length does not match the observation");
    }
    c.pilot = options.domain == Domain::time ? dct_forward(*options.pilot) : *options.pilot;
  } else {
    c.pilot = c.x;
  }
  return c;
}

Signal from_coefficients(Signal coefficients, const DenoiseOptions& options) {
  return options.domain == Domain::time ? dct_inverse(coefficients) : coefficients;
}

double optimal_gain(const RiskCriterion& criterion, const NoiseModel& model, double s_tilde,
                    std::size_t resolution, double* risk_out) {
  return std::visit(
      Overloaded{
          [&](const Mpe& mpe) {
            auto risk = [&](double a) { return mpe_pointwise(s_tilde, a, mpe.epsilon, model); };
            const double a = grid_minimize(risk, resolution, 0.0);
            if (risk_out) *risk_out = risk(a);
            return a;
          },
          [&](const ExpectedL1&) {
            auto risk = [&](double a) { return l1_risk(s_tilde, a, model); };
            const double a = grid_minimize_convex(risk, resolution);
            if (risk_out) *risk_out = risk(a);
            return a;
          },
          [&](const Sure&) {
            const double sigma = gaussian_sigma(model, "SURE");
            const double a =
                s_tilde == 0.0 ? 0.0 : std::clamp(1.0 - sigma * sigma / (s_tilde * s_tilde), 0.0, 1.0);
            if (risk_out) *risk_out = sure_pointwise_risk(s_tilde, a, sigma);
            return a;
          }},
      criterion);
}

}  // namespace

double default_pointwise_epsilon(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  return 3.0 * sigma;
}

double default_subband_epsilon(std::size_t k, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (k == 0) throw DomainError("subband size must be >= 1");
  if (k == 1) return 3.0 * sigma;
  const double root_k = std::sqrt(static_cast<double>(k));
  return (k <= 16 ? 1.75 : 1.25) * root_k * sigma;
}

DenoiseResult denoise_pointwise(std::span<const double> x, const RiskCriterion& criterion,
                                const NoiseModel& model, const DenoiseOptions& options) {
  detail::require_resolution(options.grid_resolution);
  if (std::holds_alternative<Sure>(criterion)) {
    return sure_denoise(x, gaussian_sigma(model, "SURE"), Pointwise{}, options);
  }
  if (const auto* mpe = std::get_if<Mpe>(&criterion)) {
    if (!(mpe->epsilon > 0.0) || !std::isfinite(mpe->epsilon)) {
      throw DomainError("epsilon must be positive");
    }
  } else {
    require_l1_model(model);
  }

  const Coefficients c = to_coefficients(x, options);
  DenoiseResult result;
  result.gains.resize(c.x.size());
  Signal shrunk(c.x.size());
  double total_risk = 0.0;
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    double risk = 0.0;
    result.gains[i] = optimal_gain(criterion, model, c.pilot[i], options.grid_resolution, &risk);
    total_risk += risk;
    shrunk[i] = result.gains[i] * c.x[i];
  }
  IterationRecord record{1, total_risk, std::nullopt};
  if (options.reference) {
    const Signal ref = options.domain == Domain::time ? dct_forward(*options.reference)
                                                      : *options.reference;
    record.snr_db = snr_db(ref, shrunk);
  }
  result.risk_trace.push_back(record);
  result.iterations_used = 1;
  result.estimate = from_coefficients(std::move(shrunk), options);
  return result;
}

DenoiseResult denoise_subband(std::span<const double> x, const Subband& scheme,
                              const NoiseModel& model, const DenoiseOptions& options) {
  detail::require_resolution(options.grid_resolution);
  const double sigma = gaussian_sigma(model, "subband MPE");
  if (scheme.k == 0) throw DomainError("subband size must be >= 1");
  if (scheme.epsilon && (!(*scheme.epsilon > 0.0) || !std::isfinite(*scheme.epsilon))) {
    throw DomainError("epsilon must be positive");
  }

  const Coefficients c = to_coefficients(x, options);
  const std::size_t n = c.x.size();
  DenoiseResult result;
  Signal shrunk(n);
  double total_risk = 0.0;
  for (std::size_t start = 0; start < n; start += scheme.k) {
    const std::size_t len = std::min(scheme.k, n - start);
    const double eps = scheme.epsilon ? *scheme.epsilon : default_subband_epsilon(len, sigma);
    double band_energy = 0.0;
    for (std::size_t j = start; j < start + len; ++j) band_energy += c.pilot[j] * c.pilot[j];
    auto risk = [&](double a) { return mpe_subband_from_energy(band_energy, len, a, eps, sigma); };
    const double a = grid_minimize(risk, options.grid_resolution, 0.0);
    total_risk += risk(a);
    result.gains.push_back(a);
    for (std::size_t j = start; j < start + len; ++j) shrunk[j] = a * c.x[j];
  }
  result.risk_trace.push_back({1, total_risk, std::nullopt});
  result.iterations_used = 1;
  result.estimate = from_coefficients(std::move(shrunk), options);
  return result;
}

DenoiseResult iterate_l1(std::span<const double> x, const NoiseModel& model, std::size_t n_iter,
                         const DenoiseOptions& options) {
  detail::require_resolution(options.grid_resolution);
  if (n_iter == 0) throw DomainError("iteration count must be >= 1");
  require_l1_model(model);

  const Coefficients c = to_coefficients(x, options);
  std::optional<Signal> ref;
  if (options.reference) {
    if (options.reference->size() != x.size()) {
      throw DomainError("reference length does not match the observation");
    }
    ref = options.domain == Domain::time ? dct_forward(*options.reference) : *options.reference;
  }

  const std::size_t n = c.x.size();
  DenoiseResult result;
  Signal s_tilde = c.pilot;
  Signal shrunk(n);
  std::vector<double> gains(n);
  for (std::size_t it = 1; it <= n_iter; ++it) {
    double total_risk = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = s_tilde[i];
      auto risk = [&](double a) { return l1_risk(s, a, model); };
      gains[i] = grid_minimize_convex(risk, options.grid_resolution);
      total_risk += risk(gains[i]);
      shrunk[i] = gains[i] * c.x[i];
    }
    IterationRecord record{it, total_risk, std::nullopt};
    if (ref) record.snr_db = snr_db(*ref, shrunk);
    result.risk_trace.push_back(record);
    result.iterations_used = it;
    const bool fixed_point = it > 1 && gains == result.gains;
    result.gains = gains;
    if (fixed_point) break;
    s_tilde = shrunk;
  }
  result.estimate = from_coefficients(std::move(shrunk), options);
  return result;
}

std::vector<double> shrinkage_profile(const RiskCriterion& criterion, const NoiseModel& model,
                                      std::span<const double> aposteriori_snr,
                                      std::size_t resolution) {
  detail::require_resolution(resolution);
  const double sigma = gaussian_sigma(model, "shrinkage profile");
  std::vector<double> gains;
  gains.reserve(aposteriori_snr.size());
  for (double v : aposteriori_snr) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("a-posteriori SNR must be >= 0");
    // SURE depends on x only through x^2 / sigma^2; using v directly avoids a
    // sqrt round trip.
    if (std::holds_alternative<Sure>(criterion)) {
      gains.push_back(std::max(0.0, 1.0 - 1.0 / v));
      continue;
    }
    gains.push_back(optimal_gain(criterion, model, sigma * std::sqrt(v), resolution, nullptr));
  }
  return gains;
}

std::string criterion_name(const RiskCriterion& criterion) {
  return std::visit(Overloaded{[](const Mpe& m) {
                                 std::ostringstream out;
                                 out << "mpe(eps=" << m.epsilon << ")";
                                 return out.str();
                               },
                               [](const ExpectedL1&) { return std::string("l1"); },
                               [](const Sure&) { return std::string("sure"); }},
                    criterion);
}

}  // namespace mpe
