#include <array>
#include <charconv>
#include <cmath>
#include <string_view>

#include "mpe/error.hpp"
#include "mpe/experiments/experiments.hpp"

namespace mpe::experiments {
namespace {

constexpr std::array<std::string_view, 14> kExperimentKeys = {
    "signal", "length", "noise", "dof",  "snr",     "beta",  "k",
    "observations", "trials", "seed", "iterations", "grid", "threads", "s"};

// Shortest text that parses back to the same double.
std::string shortest(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += shortest(values[i]);
  }
  return out;
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_positive_list(const std::vector<double>& values, const char* what) {
  require(!values.empty(), std::string(what) + " list is empty");
  for (double v : values) require(v > 0.0, std::string(what) + " values must be positive");
}

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::table1: return "table1";
    case Command::sweep_eps: return "sweep-eps";
    case Command::sweep_subband: return "sweep-subband";
    case Command::iterative: return "iterative";
    case Command::multi_obs: return "multi-obs";
    case Command::plugin: return "plugin";
  }
  return "unknown";
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::describe() const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"signal", signal},
  };
  if (signal == "harmonic" || signal == "heavisine") {
    out.emplace_back("length", std::to_string(signal_length));
  }
  out.emplace_back("noise", noise);
  if (noise == "student_t") out.emplace_back("dof", shortest(student_dof));
  out.emplace_back("snr", join(snr_db));
  if (command != Command::sweep_subband && command != Command::iterative &&
      command != Command::multi_obs) {
    out.emplace_back("beta", join(beta));
  }
  if (command == Command::sweep_subband) out.emplace_back("k", join(subband_k));
  if (command == Command::multi_obs) out.emplace_back("observations", join(observations));
  if (command == Command::plugin) out.emplace_back("s", shortest(plugin_s));
  out.emplace_back("trials", std::to_string(trials));
  out.emplace_back("seed", std::to_string(seed));
  if (command == Command::iterative) out.emplace_back("iterations", std::to_string(iterations));
  out.emplace_back("grid", std::to_string(grid_resolution));
  return out;
}

ExperimentConfig resolve_config(Command command, const KeyValueConfig& kv) {
  kv.require_known(kExperimentKeys);
  ExperimentConfig c;
  c.command = command;

  std::vector<double> snr_default;
  std::vector<double> beta_default = {3.0};
  switch (command) {
    case Command::table1:
      snr_default = {-5, -2.5, 0, 2.5, 5, 7.5, 10, 12.5, 15, 17.5, 20};
      beta_default = {3.5, 2.5, 1.5};
      break;
    case Command::sweep_eps:
      snr_default = {0, 5, 10, 15};
      beta_default.clear();
      for (int i = 0; i <= 22; ++i) beta_default.push_back(0.5 + 0.25 * i);
      break;
    case Command::sweep_subband: snr_default = {5, 15}; break;
    case Command::iterative: snr_default = {0, 5, 10, 15}; break;
    case Command::multi_obs: snr_default = {5}; break;
    case Command::plugin:
      snr_default = {0};
      beta_default = {1.0};
      break;
  }

  c.signal = kv.get_string("signal", "harmonic");
  c.signal_length = kv.get_size("length", 2048);
  c.noise = kv.get_string("noise", "gaussian");
  c.student_dof = kv.get_double("dof", 4.0);
  c.snr_db = kv.get_doubles("snr", snr_default);
  c.beta = kv.get_doubles("beta", beta_default);
  c.subband_k = kv.get_sizes("k", {1, 2, 4, 8, 16, 32, 40, 64});
  c.observations = kv.get_sizes("observations", {1, 2, 5, 10, 20, 40, 60, 100});
  c.trials = kv.get_size("trials", 100);
  c.seed = kv.get_u64("seed", 1);
  c.iterations = kv.get_size("iterations", 20);
  c.grid_resolution = kv.get_size("grid", 1001);
  c.threads = kv.get_size("threads", 0);
  c.plugin_s = kv.get_double("s", 4.0);

  require(c.trials >= 1, "trials must be >= 1");
  require(!c.snr_db.empty(), "snr list is empty");
  require_positive_list(c.beta, "beta");
  require(c.signal_length >= 1, "length must be >= 1");
  require(c.grid_resolution >= 2, "grid must be >= 2");
  require(c.iterations >= 1, "iterations must be >= 1");
  require(c.student_dof > 2.0, "dof must exceed 2");
  require(!c.subband_k.empty(), "k list is empty");
  for (auto k : c.subband_k) require(k >= 1, "subband sizes must be >= 1");
  require(!c.observations.empty(), "observations list is empty");
  for (auto m : c.observations) require(m >= 1, "observation counts must be >= 1");
  require(c.noise == "gaussian" || c.noise == "laplacian" || c.noise == "student_t" ||
              c.noise == "gmm_multimodal",
          "noise must be gaussian, laplacian, student_t or gmm_multimodal");
  const bool gaussian_only = command == Command::table1 || command == Command::sweep_subband ||
                             command == Command::multi_obs;
  require(!gaussian_only || c.noise == "gaussian",
          command_name(command) + " is defined for Gaussian noise only");
  require(command != Command::plugin || c.noise != "gmm_multimodal",
          "plugin compares the Gaussian, Laplacian and Student-t families");
  return c;
}

PerturbationConfig resolve_perturbation(const KeyValueConfig& kv) {
  static constexpr std::array<std::string_view, 8> keys = {
      "delta", "alpha", "sigma", "epsilon", "grid", "fd_step", "scan_step_db", "max_snr_db"};
  kv.require_known(keys);
  PerturbationConfig c;
  c.delta = kv.get_doubles("delta", {0.025, 0.05, 0.075, 0.1, 0.125, 0.15});
  c.alpha = kv.get_doubles("alpha", {0.05, 0.1, 0.15, 0.2, 0.25});
  c.sigma = kv.get_double("sigma", 1.0);
  c.epsilon = kv.get_double("epsilon", c.sigma);
  c.options.grid_resolution = kv.get_size("grid", c.options.grid_resolution);
  c.options.fd_step_ratio = kv.get_double("fd_step", c.options.fd_step_ratio);
  c.options.scan_step_db = kv.get_double("scan_step_db", c.options.scan_step_db);
  c.options.max_snr_db = kv.get_double("max_snr_db", c.options.max_snr_db);
  require_positive_list(c.delta, "delta");
  require(!c.alpha.empty(), "alpha list is empty");
  for (double a : c.alpha) require(a > 0.0 && a < 1.0, "alpha values must lie in (0, 1)");
  require(c.sigma > 0.0 && c.epsilon > 0.0, "sigma and epsilon must be positive");
  require(c.options.grid_resolution >= 2, "grid must be >= 2");
  require(c.options.fd_step_ratio > 0.0 && c.options.scan_step_db > 0.0,
          "fd_step and scan_step_db must be positive");
  return c;
}

std::vector<std::pair<std::string, std::string>> PerturbationConfig::describe() const {
  return {{"delta", join(delta)},
          {"alpha", join(alpha)},
          {"sigma", shortest(sigma)},
          {"epsilon", shortest(epsilon)},
          {"grid", std::to_string(options.grid_resolution)},
          {"fd_step", shortest(options.fd_step_ratio)},
          {"scan_step_db", shortest(options.scan_step_db)},
          {"max_snr_db", shortest(options.max_snr_db)}};
}

ProfileConfig resolve_profile(const KeyValueConfig& kv) {
  static constexpr std::array<std::string_view, 4> keys = {"snr", "beta", "sigma", "grid"};
  kv.require_known(keys);
  ProfileConfig c;
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(-10.0 + 0.5 * i);
  c.snr_db = kv.get_doubles("snr", grid);
  c.beta = kv.get_doubles("beta", {2.0, 3.0, 4.0});
  c.sigma = kv.get_double("sigma", 1.0);
  c.grid_resolution = kv.get_size("grid", 1001);
  require(!c.snr_db.empty(), "snr list is empty");
  require_positive_list(c.beta, "beta");
  require(c.sigma > 0.0, "sigma must be positive");
  require(c.grid_resolution >= 2, "grid must be >= 2");
  return c;
}

std::vector<std::pair<std::string, std::string>> ProfileConfig::describe() const {
  return {{"snr", join(snr_db)},
          {"beta", join(beta)},
          {"sigma", shortest(sigma)},
          {"grid", std::to_string(grid_resolution)}};
}

}  // namespace mpe::experiments
