#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpe/noise_model.hpp"
#include "mpe/rng.hpp"

namespace mpe {

struct EmOptions {
  std::size_t max_iterations = 2000;
  /// Stop when |L_t - L_{t-1}| <= tolerance * |L_t|.
  double relative_tolerance = 1e-8;
  /// A component whose sigma drops below floor_ratio * sample std, or whose
  /// weight vanishes, triggers a restart from fresh seeding.
  double sigma_floor_ratio = 1e-6;
  std::size_t max_restarts = 5;
  /// Independent seedings run to completion; the highest final likelihood
  /// wins. EM on heavy-tailed data has poor local optima.
  std::size_t initialisations = 5;
};

struct GmmFit {
  GmmModel model;
  /// Total log-likelihood after each EM iteration of the selected run.
  std::vector<double> log_likelihood;
  std::size_t iterations = 0;
  /// Seedings discarded because a component collapsed.
  std::size_t restarts = 0;
  bool converged = false;
};

/// Maximum-likelihood fit of an M-component 1-D Gaussian mixture by EM,
/// seeded k-means++ style from `rng`.
GmmFit gmm_fit_em(std::span<const double> samples, std::size_t m_components, RngStream& rng,
                  const EmOptions& options = {});

}  // namespace mpe
