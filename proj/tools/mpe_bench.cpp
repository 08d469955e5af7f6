// mpe-bench: Monte Carlo experiments and file-based denoising.
//
// Exit codes: 0 success, 2 usage or input errors, 1 numeric or I/O failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpe/baselines.hpp"
#include "mpe/error.hpp"
#include "mpe/experiments/experiments.hpp"
#include "mpe/gmm_fit.hpp"
#include "mpe/shrinkage.hpp"
#include "mpe/signals.hpp"

namespace fs = std::filesystem;
using namespace mpe;
using namespace mpe::experiments;

namespace {

constexpr int kUsageExit = 2;
constexpr int kFailureExit = 1;

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> overrides;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string out;
};

void add_common(CLI::App* sub, CommonOptions& o, bool monte_carlo) {
  sub->add_option("--config", o.config_file, "key=value configuration file")
      ->check(CLI::ExistingFile);
  sub->add_option("--set", o.overrides, "override one setting, e.g. --set snr=0,5,10");
  if (monte_carlo) {
    sub->add_option("--trials", o.trials, "Monte Carlo trials per setting");
    sub->add_option("--seed", o.seed, "base seed");
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  }
  sub->add_option("--out", o.out, "output CSV path")->required();
}

KeyValueConfig build_config(const CommonOptions& o) {
  KeyValueConfig kv = o.config_file.empty() ? KeyValueConfig{} : KeyValueConfig::load(o.config_file);
  for (const auto& item : o.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + item + "'");
    }
    kv.set(item.substr(0, eq), item.substr(eq + 1));
  }
  if (o.trials) kv.set("trials", std::to_string(*o.trials));
  if (o.seed) kv.set("seed", std::to_string(*o.seed));
  if (o.threads) kv.set("threads", std::to_string(*o.threads));
  return kv;
}

std::string sibling(const std::string& out, const std::string& suffix) { return out + suffix; }

void write_tables(const std::string& out, const TrialTable& table, const std::string& comment) {
  write_file(out, [&](std::ostream& s) { write_summary_csv(s, table, comment); });
  write_file(sibling(out, ".trials.csv"), [&](std::ostream& s) { write_trials_csv(s, table, comment); });
}

int run_experiment(Command command, const CommonOptions& o) {
  const ExperimentConfig config = resolve_config(command, build_config(o));
  const auto settings = config.describe();
  const std::string comment = config_comment(command_name(command), settings);

  switch (command) {
    case Command::table1: {
      const TrialTable table = run_table1(config);
      write_file(o.out, [&](std::ostream& s) { write_table1_csv(s, table, config, comment); });
      write_file(sibling(o.out, ".trials.csv"),
                 [&](std::ostream& s) { write_trials_csv(s, table, comment); });
      break;
    }
    case Command::sweep_eps: {
      const TrialTable table = run_sweep_eps(config);
      write_tables(o.out, table, comment);
      write_file(sibling(o.out, ".argmax.csv"), [&](std::ostream& s) {
        s << comment << "\ninput_snr_db,beta,mean_output_snr_db\n";
        for (const auto& row : sweep_argmax(table)) {
          s << format_full(row.input_snr_db) << ',' << format_full(row.beta) << ','
            << format_full(row.mean_output_snr_db) << '\n';
        }
      });
      break;
    }
    case Command::sweep_subband: write_tables(o.out, run_sweep_subband(config), comment); break;
    case Command::iterative: write_tables(o.out, run_iterative(config), comment); break;
    case Command::multi_obs: write_tables(o.out, run_multi_obs(config), comment); break;
    case Command::plugin: {
      const PluginCurve curve = run_plugin(config);
      write_file(o.out, [&](std::ostream& s) {
        s << comment << "\n# argmin_true=" << format_full(curve.argmin_true)
          << " argmin_estimate=" << format_full(curve.argmin_estimate)
          << "\na,true_risk,mean_estimated_risk\n";
        for (std::size_t i = 0; i < curve.a.size(); ++i) {
          s << format_full(curve.a[i]) << ',' << format_full(curve.true_risk[i]) << ','
            << format_full(curve.mean_estimate[i]) << '\n';
        }
      });
      std::cout << "argmin_true=" << format_full(curve.argmin_true)
                << " argmin_estimate=" << format_full(curve.argmin_estimate) << '\n';
      break;
    }
  }
  return 0;
}

int run_perturbation_cmd(const CommonOptions& o) {
  const PerturbationConfig config = resolve_perturbation(build_config(o));
  const auto settings = config.describe();
  const std::string comment = config_comment("perturbation", settings);
  const auto rows = run_perturbation(config);
  write_file(o.out, [&](std::ostream& s) {
    s << comment << "\ndelta,alpha,sure_min_snr_db,mpe_min_snr_db,mpe_non_monotone\n";
    for (const auto& r : rows) {
      s << format_full(r.delta) << ',' << format_full(r.alpha) << ','
        << format_full(r.sure_min_snr_db) << ',' << format_full(r.mpe_min_snr_db) << ','
        << (r.mpe_non_monotone ? 1 : 0) << '\n';
    }
  });
  return 0;
}

int run_profile_cmd(const CommonOptions& o) {
  const ProfileConfig config = resolve_profile(build_config(o));
  const auto settings = config.describe();
  const std::string comment = config_comment("profile", settings);
  const ProfileTable table = run_profile(config);
  write_file(o.out, [&](std::ostream& s) {
    s << comment << "\naposteriori_snr_db";
    for (const auto& c : table.columns) s << ',' << c;
    s << '\n';
    for (std::size_t i = 0; i < table.snr_db.size(); ++i) {
      s << format_full(table.snr_db[i]);
      for (const auto& col : table.gains) s << ',' << format_full(col[i]);
      s << '\n';
    }
  });
  return 0;
}

struct FitOptions {
  std::string input;
  std::size_t components = 4;
  std::uint64_t seed = 1;
  std::string out;
};

int run_fit_gmm(const FitOptions& o) {
  const ExperimentSignal samples = load_signal(o.input);
  RngStream rng(o.seed, 0);
  const GmmFit fit = gmm_fit_em(samples.data, o.components, rng);
  save_gmm(fit.model, o.out);
  std::cout << "components=" << o.components << " iterations=" << fit.iterations
            << " restarts=" << fit.restarts << " converged=" << (fit.converged ? "yes" : "no")
            << " log_likelihood=" << format_full(fit.log_likelihood.back()) << '\n';
  return 0;
}

struct DenoiseCliOptions {
  std::string input;
  std::string out;
  std::optional<double> sigma;
  std::string criterion = "mpe";
  std::optional<double> epsilon;
  std::optional<std::size_t> subband;
  std::size_t iters = 1;
  std::string pilot;
  std::string model;
  std::size_t grid = kDefaultGridResolution;
};

int run_denoise(const DenoiseCliOptions& o) {
  const Signal x = load_signal(o.input).data;
  DenoiseOptions options;
  options.grid_resolution = o.grid;
  if (!o.pilot.empty()) options.pilot = load_signal(o.pilot).data;

  std::optional<NoiseModel> model;
  if (!o.model.empty()) {
    if (o.sigma) throw ConfigError("--sigma and --model are mutually exclusive");
    model = load_gmm(o.model);
  }
  const double sigma = model ? std::sqrt(variance(*model)) : (o.sigma ? *o.sigma : mad_sigma(x));
  if (!model) model = GaussianNoise(sigma);

  if (o.iters == 0) throw ConfigError("--iters must be >= 1");
  if (o.iters > 1 && o.criterion != "l1") throw ConfigError("--iters applies to the l1 criterion");
  if (o.epsilon && o.criterion != "mpe") throw ConfigError("--epsilon applies to the mpe criterion");
  if (o.subband && (o.criterion == "l1" || o.criterion == "soft")) {
    throw ConfigError("--subband applies to the mpe and sure criteria");
  }

  DenoiseResult result;
  if (o.criterion == "mpe") {
    if (o.subband) {
      result = denoise_subband(x, Subband{*o.subband, o.epsilon}, *model, options);
    } else {
      result = denoise_pointwise(x, Mpe{o.epsilon ? *o.epsilon : default_pointwise_epsilon(sigma)},
                                 *model, options);
    }
  } else if (o.criterion == "l1") {
    result = o.iters > 1 ? iterate_l1(x, *model, o.iters, options)
                         : denoise_pointwise(x, ExpectedL1{}, *model, options);
  } else if (o.criterion == "sure") {
    const ShrinkageScheme scheme =
        o.subband ? ShrinkageScheme{Subband{*o.subband, std::nullopt}} : ShrinkageScheme{Pointwise{}};
    result = sure_denoise(x, sigma, scheme, options);
  } else if (o.criterion == "soft") {
    result = soft_threshold_denoise(x, sigma, options);
  } else {
    throw ConfigError("unknown criterion '" + o.criterion + "'");
  }
  save_signal(result.estimate, o.out);
  std::cerr << "sigma=" << format_full(sigma) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MPE and expected-l1 shrinkage experiments"};
  app.require_subcommand(1);

  const std::map<std::string, Command> experiments = {
      {"table1", Command::table1},       {"sweep-eps", Command::sweep_eps},
      {"sweep-subband", Command::sweep_subband}, {"iterative", Command::iterative},
      {"multi-obs", Command::multi_obs}, {"plugin", Command::plugin}};
  const std::map<std::string, std::string> descriptions = {
      {"table1", "MPE versus SURE output SNR over input SNR (harmonic signal)"},
      {"sweep-eps", "output SNR versus epsilon / sigma"},
      {"sweep-subband", "subband MPE and SURE versus subband size"},
      {"iterative", "iterative expected-l1 refinement"},
      {"multi-obs", "ML averaging of repeated observations"},
      {"plugin", "plug-in risk estimate versus true risk for one coefficient"}};

  std::map<std::string, CommonOptions> common;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, command] : experiments) {
    subs[name] = app.add_subcommand(name, descriptions.at(name));
    add_common(subs[name], common[name], true);
  }
  subs["perturbation"] = app.add_subcommand("perturbation", "minimum input SNR for stable gains");
  add_common(subs["perturbation"], common["perturbation"], false);
  subs["profile"] = app.add_subcommand("profile", "optimal gain versus a-posteriori SNR");
  add_common(subs["profile"], common["profile"], false);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-gmm", "fit a Gaussian mixture to noise samples");
  fit_cmd->add_option("--input", fit.input, "samples, one per line")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("-M,--components", fit.components, "mixture components")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--seed", fit.seed, "initialisation seed");
  fit_cmd->add_option("--out", fit.out, "model file")->required();

  DenoiseCliOptions dn;
  auto* dn_cmd = app.add_subcommand("denoise", "denoise a signal file");
  dn_cmd->add_option("--input", dn.input, "noisy signal, one sample per line")
      ->required()
      ->check(CLI::ExistingFile);
  dn_cmd->add_option("--out", dn.out, "output signal file")->required();
  dn_cmd->add_option("--sigma", dn.sigma, "noise standard deviation (default: MAD estimate)");
  dn_cmd->add_option("--criterion", dn.criterion, "mpe, l1, sure or soft")
      ->check(CLI::IsMember({"mpe", "l1", "sure", "soft"}));
  dn_cmd->add_option("--epsilon", dn.epsilon, "MPE tolerance (default 3 sigma, subband rule with --subband)");
  dn_cmd->add_option("--subband", dn.subband, "subband size k")->check(CLI::PositiveNumber);
  dn_cmd->add_option("--iters", dn.iters, "l1 refinement passes");
  dn_cmd->add_option("--pilot", dn.pilot, "pilot estimate used inside the risk")->check(CLI::ExistingFile);
  dn_cmd->add_option("--model", dn.model, "GMM noise model file (see fit-gmm)")->check(CLI::ExistingFile);
  dn_cmd->add_option("--grid", dn.grid, "gain grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    for (const auto& [name, command] : experiments) {
      if (subs[name]->parsed()) return run_experiment(command, common[name]);
    }
    if (subs["perturbation"]->parsed()) return run_perturbation_cmd(common["perturbation"]);
    if (subs["profile"]->parsed()) return run_profile_cmd(common["profile"]);
    if (fit_cmd->parsed()) return run_fit_gmm(fit);
    if (dn_cmd->parsed()) return run_denoise(dn);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailureExit;
  }
  return kUsageExit;
}
