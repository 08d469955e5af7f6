#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpe/experiments/config.hpp"
#include "mpe/experiments/trial_table.hpp"
#include "mpe/noise_model.hpp"
#include "mpe/perturbation.hpp"
#include "mpe/signals.hpp"

namespace mpe::experiments {

enum class Command {
  table1,
  sweep_eps,
  sweep_subband,
  iterative,
  multi_obs,
  plugin,
};

std::string command_name(Command command);

/// Settings shared by the Monte Carlo experiments. Trial t of setting j
/// (the j-th input SNR) draws its noise from stream j * 1e6 + t; methods
/// compared within a trial see the same noise.
struct ExperimentConfig {
  Command command = Command::table1;
  /// "harmonic", "heavisine" or a path to a one-sample-per-line file.
  std::string signal = "harmonic";
  /// Length for the generated signals.
  std::size_t signal_length = 2048;
  /// "gaussian", "laplacian", "student_t" or "gmm_multimodal".
  std::string noise = "gaussian";
  double student_dof = 4.0;
  std::vector<double> snr_db;
  /// epsilon / sigma values.
  std::vector<double> beta;
  std::vector<std::size_t> subband_k;
  /// Observation counts for multi_obs.
  std::vector<std::size_t> observations;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t iterations = 20;
  std::size_t grid_resolution = 1001;
  /// 0 = hardware concurrency.
  std::size_t threads = 0;
  /// plugin: clean coefficient value and epsilon / sigma.
  double plugin_s = 4.0;

  /// Resolved settings for the CSV comment line, in a stable order.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Per-command defaults overridden by `kv`; unknown keys and invalid values
/// throw ConfigError.
ExperimentConfig resolve_config(Command command, const KeyValueConfig& kv);

/// The clean signal named by config.signal.
ExperimentSignal make_signal(const ExperimentConfig& config);

/// Unit-variance shape of config.noise; add_noise rescales it.
NoiseModel noise_shape(const ExperimentConfig& config);

/// Three-mode mixture used for the multimodal noise experiments.
GmmModel multimodal_template();

/// Model of the noise as seen by the DCT coefficients for a given time-domain
/// noise model: the model itself when Gaussian, otherwise an EM fit of a
/// GMM (4 components for Laplacian shapes, 3 for mixtures, Student-t 4) to
/// transformed calibration noise.
NoiseModel coefficient_noise_model(const NoiseModel& time_noise, std::size_t length,
                                   std::uint64_t seed, std::uint64_t stream_id);

/// keys {input_snr_db}; methods mpe_<beta>sigma for each beta, then sure.
TrialTable run_table1(const ExperimentConfig& config);
/// keys {input_snr_db, beta}; method mpe.
TrialTable run_sweep_eps(const ExperimentConfig& config);
/// keys {input_snr_db, k}; methods mpe_subband, sure_subband.
TrialTable run_sweep_subband(const ExperimentConfig& config);
/// keys {input_snr_db, iteration}; method iterative for iterations
/// 1..config.iterations, non_iterative and oracle_l1 at iteration 1.
TrialTable run_iterative(const ExperimentConfig& config);
/// keys {input_snr_db, observations}; methods ml, ml_l1, oracle_l1.
TrialTable run_multi_obs(const ExperimentConfig& config);

struct ArgmaxRow {
  double input_snr_db;
  double beta;
  double mean_output_snr_db;
};
/// Best beta per input SNR of a sweep_eps table (first on ties).
std::vector<ArgmaxRow> sweep_argmax(const TrialTable& table);

/// Method label used by table1 for a beta value, e.g. "mpe_3.5sigma".
std::string table1_method(double beta);

/// Wide table1 layout: input_snr_db, one mean column per method, then one
/// std column per method.
void write_table1_csv(std::ostream& out, const TrialTable& table, const ExperimentConfig& config,
                      std::string_view comment);

/// Plug-in risk curve: R(s; a) and the trial average of R(x; a) over the grid.
struct PluginCurve {
  std::vector<double> a;
  std::vector<double> true_risk;
  std::vector<double> mean_estimate;
  double argmin_true = 0.0;
  double argmin_estimate = 0.0;
};
/// Scalar experiment behind the plug-in fidelity check: x = s + w with w from
/// noise_shape(config) at its unit-shape variance (Student-t keeps scale 1),
/// epsilon = beta[0] * sqrt(variance). Trial t uses stream t.
PluginCurve run_plugin(const ExperimentConfig& config);

struct PerturbationConfig {
  std::vector<double> delta;
  std::vector<double> alpha;
  double sigma = 1.0;
  double epsilon = 1.0;
  MpeSensitivityOptions options;

  std::vector<std::pair<std::string, std::string>> describe() const;
};
PerturbationConfig resolve_perturbation(const KeyValueConfig& kv);

struct PerturbationRow {
  double delta;
  double alpha;
  double sure_min_snr_db;
  double mpe_min_snr_db;
  bool mpe_non_monotone;
};
std::vector<PerturbationRow> run_perturbation(const PerturbationConfig& config);

struct ProfileConfig {
  /// A-posteriori SNR grid in dB.
  std::vector<double> snr_db;
  /// MPE epsilon / sigma values.
  std::vector<double> beta;
  double sigma = 1.0;
  std::size_t grid_resolution = 1001;

  std::vector<std::pair<std::string, std::string>> describe() const;
};
ProfileConfig resolve_profile(const KeyValueConfig& kv);

struct ProfileTable {
  std::vector<std::string> columns;  // criterion names
  std::vector<double> snr_db;
  /// gains[c][i]: criterion c at snr_db[i].
  std::vector<std::vector<double>> gains;
};
ProfileTable run_profile(const ProfileConfig& config);

}  // namespace mpe::experiments
