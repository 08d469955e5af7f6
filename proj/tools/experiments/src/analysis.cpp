#include <cmath>

#include "mpe/experiments/experiments.hpp"
#include "mpe/shrinkage.hpp"

namespace mpe::experiments {

std::vector<PerturbationRow> run_perturbation(const PerturbationConfig& config) {
  // The slope profile depends only on epsilon and sigma, so one scan serves
  // every (delta, alpha) pair.
  const MpeSensitivityProfile profile(config.epsilon, config.sigma, config.options);
  std::vector<PerturbationRow> rows;
  for (double delta : config.delta) {
    for (double alpha : config.alpha) {
      const PerturbationQuery q(delta, alpha, config.sigma, config.epsilon);
      const SnrThreshold sure = sure_min_snr(q);
      const SnrThreshold mpe = profile.threshold(q);
      rows.push_back({delta, alpha, sure.snr_db, mpe.snr_db, mpe.non_monotone});
    }
  }
  return rows;
}

ProfileTable run_profile(const ProfileConfig& config) {
  ProfileTable table;
  table.snr_db = config.snr_db;
  std::vector<double> snr_linear;
  for (double db : config.snr_db) snr_linear.push_back(std::pow(10.0, db / 10.0));

  const GaussianNoise noise(config.sigma);
  std::vector<std::pair<std::string, RiskCriterion>> criteria;
  for (double beta : config.beta) {
    criteria.emplace_back("mpe_" + format_full(beta) + "sigma", Mpe{beta * config.sigma});
  }
  criteria.emplace_back("l1", ExpectedL1{});
  criteria.emplace_back("sure", Sure{});
  for (const auto& [name, criterion] : criteria) {
    table.columns.push_back(name);
    table.gains.push_back(shrinkage_profile(criterion, noise, snr_linear, config.grid_resolution));
  }
  return table;
}

}  // namespace mpe::experiments
