#include <algorithm>
#include <cmath>
#include <ostream>

#include "mpe/baselines.hpp"
#include "mpe/experiments/experiments.hpp"
#include "mpe/gmm_fit.hpp"
#include "mpe/parallel.hpp"
#include "mpe/shrinkage.hpp"
#include "mpe/transforms.hpp"

namespace mpe::experiments {
namespace {

constexpr std::uint64_t kStreamsPerSetting = 1'000'000;
constexpr std::uint64_t kCalibrationTrial = kStreamsPerSetting - 1;
constexpr std::size_t kCalibrationSamples = 20'000;

std::uint64_t stream_for(std::size_t setting, std::size_t trial) {
  return static_cast<std::uint64_t>(setting) * kStreamsPerSetting + trial;
}

// Runs body(setting, trial, records) for every cell, in parallel, and
// collects the records in (setting, trial) order.
template <class Body>
TrialTable run_grid(std::vector<std::string> keys, std::size_t settings, std::size_t trials,
                    std::size_t threads, Body&& body) {
  std::vector<std::vector<TrialRecord>> cells(settings * trials);
  parallel_for(
      cells.size(),
      [&](std::size_t cell) { body(cell / trials, cell % trials, cells[cell]); }, threads);
  TrialTable table(std::move(keys));
  for (auto& cell : cells) {
    for (auto& r : cell) table.add(std::move(r));
  }
  return table;
}

TrialRecord record(std::vector<double> keys, std::size_t setting, std::size_t trial,
                   std::string method, double snr) {
  return {std::move(keys), trial, stream_for(setting, trial), std::move(method), snr};
}

double noise_sigma(const NoiseModel& model) { return std::sqrt(variance(model)); }

// Coefficient-domain models for every input SNR, fitted once per setting.
std::vector<NoiseModel> coefficient_models(const ExperimentConfig& config, const Signal& clean) {
  std::vector<NoiseModel> models;
  const NoiseModel shape = noise_shape(config);
  for (std::size_t j = 0; j < config.snr_db.size(); ++j) {
    const NoiseModel time_noise =
        scaled_to_variance(shape, noise_variance_for_snr(clean, config.snr_db[j]));
    models.push_back(coefficient_noise_model(time_noise, clean.size(), config.seed,
                                             stream_for(j, kCalibrationTrial)));
  }
  return models;
}

}  // namespace

GmmModel multimodal_template() {
  return GmmModel({{0.3, -1.2, 0.45}, {0.4, 0.0, 0.45}, {0.3, 1.2, 0.45}});
}

NoiseModel noise_shape(const ExperimentConfig& config) {
  if (config.noise == "gaussian") return GaussianNoise(1.0);
  if (config.noise == "laplacian") return LaplacianNoise(std::sqrt(0.5));
  if (config.noise == "student_t") return StudentTNoise(config.student_dof);
  if (config.noise == "gmm_multimodal") return scaled_to_variance(multimodal_template(), 1.0);
  throw ConfigError("unknown noise family '" + config.noise + "'");
}

ExperimentSignal make_signal(const ExperimentConfig& config) {
  if (config.signal == "harmonic") {
    return {"harmonic", harmonic_gen(config.signal_length), SignalSource::generated};
  }
  if (config.signal == "heavisine") {
    return {"heavisine", heavisine_gen(config.signal_length), SignalSource::generated};
  }
  return load_signal(config.signal);
}

NoiseModel coefficient_noise_model(const NoiseModel& time_noise, std::size_t length,
                                   std::uint64_t seed, std::uint64_t stream_id) {
  if (std::holds_alternative<GaussianNoise>(time_noise)) return time_noise;
  RngStream rng(seed, stream_id);
  Signal coefficients;
  while (coefficients.size() < kCalibrationSamples) {
    const Signal block = dct_forward(sample(time_noise, length, rng));
    coefficients.insert(coefficients.end(), block.begin(), block.end());
  }
  const std::size_t components = std::holds_alternative<GmmModel>(time_noise) ? 3 : 4;
  return gmm_fit_em(coefficients, components, rng).model;
}

std::string table1_method(double beta) { return "mpe_" + format_full(beta) + "sigma"; }

TrialTable run_table1(const ExperimentConfig& config) {
  const Signal clean = make_signal(config).data;
  DenoiseOptions options;
  options.grid_resolution = config.grid_resolution;
  return run_grid(
      {"input_snr_db"}, config.snr_db.size(), config.trials, config.threads,
      [&](std::size_t j, std::size_t t, std::vector<TrialRecord>& out) {
        const double snr_in = config.snr_db[j];
        RngStream rng(config.seed, stream_for(j, t));
        const auto obs = add_noise(clean, GaussianNoise(1.0), snr_in, rng);
        const double sigma = noise_sigma(obs.model);
        for (double beta : config.beta) {
          const auto r = denoise_pointwise(obs.noisy, Mpe{beta * sigma}, obs.model, options);
          out.push_back(record({snr_in}, j, t, table1_method(beta), snr_db(clean, r.estimate)));
        }
        const auto sure = sure_denoise(obs.noisy, sigma, Pointwise{}, options);
        out.push_back(record({snr_in}, j, t, "sure", snr_db(clean, sure.estimate)));
      });
}

TrialTable run_sweep_eps(const ExperimentConfig& config) {
  const Signal clean = make_signal(config).data;
  const auto models = coefficient_models(config, clean);
  DenoiseOptions options;
  options.grid_resolution = config.grid_resolution;
  return run_grid(
      {"input_snr_db", "beta"}, config.snr_db.size(), config.trials, config.threads,
      [&](std::size_t j, std::size_t t, std::vector<TrialRecord>& out) {
        const double snr_in = config.snr_db[j];
        RngStream rng(config.seed, stream_for(j, t));
        const auto obs = add_noise(clean, noise_shape(config), snr_in, rng);
        const double sigma = noise_sigma(obs.model);
        for (double beta : config.beta) {
          const auto r = denoise_pointwise(obs.noisy, Mpe{beta * sigma}, models[j], options);
          out.push_back(record({snr_in, beta}, j, t, "mpe", snr_db(clean, r.estimate)));
        }
      });
}

std::vector<ArgmaxRow> sweep_argmax(const TrialTable& table) {
  std::vector<ArgmaxRow> out;
  for (const auto& a : table.aggregate()) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const ArgmaxRow& r) { return r.input_snr_db == a.keys[0]; });
    if (it == out.end()) {
      out.push_back({a.keys[0], a.keys[1], a.mean});
    } else if (a.mean > it->mean_output_snr_db) {
      it->beta = a.keys[1];
      it->mean_output_snr_db = a.mean;
    }
  }
  return out;
}

TrialTable run_sweep_subband(const ExperimentConfig& config) {
  const Signal clean = make_signal(config).data;
  DenoiseOptions options;
  options.grid_resolution = config.grid_resolution;
  return run_grid(
      {"input_snr_db", "k"}, config.snr_db.size(), config.trials, config.threads,
      [&](std::size_t j, std::size_t t, std::vector<TrialRecord>& out) {
        const double snr_in = config.snr_db[j];
        RngStream rng(config.seed, stream_for(j, t));
        const auto obs = add_noise(clean, GaussianNoise(1.0), snr_in, rng);
        const double sigma = noise_sigma(obs.model);
        for (std::size_t k : config.subband_k) {
          const double kd = static_cast<double>(k);
          const auto mpe = denoise_subband(obs.noisy, Subband{k, std::nullopt}, obs.model, options);
          out.push_back(record({snr_in, kd}, j, t, "mpe_subband", snr_db(clean, mpe.estimate)));
          const auto sure = sure_denoise(obs.noisy, sigma, Subband{k, std::nullopt}, options);
          out.push_back(record({snr_in, kd}, j, t, "sure_subband", snr_db(clean, sure.estimate)));
        }
      });
}

TrialTable run_iterative(const ExperimentConfig& config) {
  const Signal clean = make_signal(config).data;
  const auto models = coefficient_models(config, clean);
  return run_grid(
      {"input_snr_db", "iteration"}, config.snr_db.size(), config.trials, config.threads,
      [&](std::size_t j, std::size_t t, std::vector<TrialRecord>& out) {
        const double snr_in = config.snr_db[j];
        RngStream rng(config.seed, stream_for(j, t));
        const auto obs = add_noise(clean, noise_shape(config), snr_in, rng);

        DenoiseOptions options;
        options.grid_resolution = config.grid_resolution;
        options.reference = clean;
        const auto iterative = iterate_l1(obs.noisy, models[j], config.iterations, options);
        // A repeated gain vector is a fixed point: later passes change nothing.
        for (std::size_t i = 1; i <= config.iterations; ++i) {
          const auto& rec = iterative.risk_trace[std::min(i, iterative.risk_trace.size()) - 1];
          out.push_back(record({snr_in, static_cast<double>(i)}, j, t, "iterative", *rec.snr_db));
        }
        out.push_back(record({snr_in, 1.0}, j, t, "non_iterative",
                             *iterative.risk_trace.front().snr_db));

        options.pilot = clean;
        const auto oracle = denoise_pointwise(obs.noisy, ExpectedL1{}, models[j], options);
        out.push_back(record({snr_in, 1.0}, j, t, "oracle_l1", snr_db(clean, oracle.estimate)));
      });
}

TrialTable run_multi_obs(const ExperimentConfig& config) {
  const Signal clean = make_signal(config).data;
  const std::size_t max_m = *std::max_element(config.observations.begin(), config.observations.end());
  return run_grid(
      {"input_snr_db", "observations"}, config.snr_db.size(), config.trials, config.threads,
      [&](std::size_t j, std::size_t t, std::vector<TrialRecord>& out) {
        const double snr_in = config.snr_db[j];
        RngStream rng(config.seed, stream_for(j, t));
        // Nested draws: the first M copies are shared by every M in the list.
        std::vector<Signal> copies;
        double sigma = 0.0;
        for (std::size_t m = 0; m < max_m; ++m) {
          auto obs = add_noise(clean, GaussianNoise(1.0), snr_in, rng);
          sigma = noise_sigma(obs.model);
          copies.push_back(std::move(obs.noisy));
        }
        for (std::size_t m : config.observations) {
          const double md = static_cast<double>(m);
          const MultiObservationSet set(std::vector<Signal>(copies.begin(), copies.begin() + m));
          const Signal average = ml_average(set);
          out.push_back(record({snr_in, md}, j, t, "ml", snr_db(clean, average)));

          DenoiseOptions options;
          options.grid_resolution = config.grid_resolution;
          const auto shrunk = ml_l1_denoise(set, sigma, false, 1, options);
          out.push_back(record({snr_in, md}, j, t, "ml_l1", snr_db(clean, shrunk.estimate)));

          options.pilot = clean;
          const auto oracle = denoise_pointwise(average, ExpectedL1{},
                                                GaussianNoise(sigma / std::sqrt(md)), options);
          out.push_back(record({snr_in, md}, j, t, "oracle_l1", snr_db(clean, oracle.estimate)));
        }
      });
}

void write_table1_csv(std::ostream& out, const TrialTable& table, const ExperimentConfig& config,
                      std::string_view comment) {
  std::vector<std::string> methods;
  for (double beta : config.beta) methods.push_back(table1_method(beta));
  methods.emplace_back("sure");
  out << comment << '\n' << "input_snr_db";
  for (const auto& m : methods) out << ',' << m;
  for (const auto& m : methods) out << ',' << m << "_std";
  out << '\n';
  const auto aggregates = table.aggregate();
  for (double snr_in : config.snr_db) {
    std::vector<double> mean;
    std::vector<double> stddev;
    for (const auto& m : methods) {
      for (const auto& a : aggregates) {
        if (a.keys[0] == snr_in && a.method == m) {
          mean.push_back(a.mean);
          stddev.push_back(a.stddev);
        }
      }
    }
    out << format_full(snr_in);
    for (double v : mean) out << ',' << format_full(v);
    for (double v : stddev) out << ',' << format_full(v);
    out << '\n';
  }
}

PluginCurve run_plugin(const ExperimentConfig& config) {
  const NoiseModel model = [&]() -> NoiseModel {
    if (config.noise == "student_t") return StudentTNoise(config.student_dof);
    return noise_shape(config);
  }();
  const double epsilon = config.beta.front() * std::sqrt(variance(model));
  const double s = config.plugin_s;
  const std::size_t r = config.grid_resolution;

  PluginCurve curve;
  for (std::size_t i = 0; i < r; ++i) {
    const double a = grid_point(i, r);
    curve.a.push_back(a);
    curve.true_risk.push_back(mpe_pointwise(s, a, epsilon, model));
  }
  std::vector<std::vector<double>> per_trial(config.trials, std::vector<double>(r));
  parallel_for(
      config.trials,
      [&](std::size_t t) {
        RngStream rng(config.seed, t);
        const double x = s + sample(model, 1, rng).front();
        for (std::size_t i = 0; i < r; ++i) per_trial[t][i] = mpe_pointwise(x, curve.a[i], epsilon, model);
      },
      config.threads);
  curve.mean_estimate.assign(r, 0.0);
  for (const auto& row : per_trial) {
    for (std::size_t i = 0; i < r; ++i) curve.mean_estimate[i] += row[i];
  }
  for (auto& v : curve.mean_estimate) v /= static_cast<double>(config.trials);

  auto argmin = [&](const std::vector<double>& values) {
    return grid_minimize([&](double a) {
      return values[static_cast<std::size_t>(std::llround(a * static_cast<double>(r - 1)))];
    }, r);
  };
  curve.argmin_true = argmin(curve.true_risk);
  curve.argmin_estimate = argmin(curve.mean_estimate);
  return curve;
}

}  // namespace mpe::experiments
