#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mpe/rng.hpp"
#include "mpe/signal.hpp"

namespace mpe {

class GaussianNoise {
 public:
  explicit GaussianNoise(double sigma);
  double sigma() const noexcept { return sigma_; }

 private:
  double sigma_;
};

/// Zero-mean Laplacian, density exp(-|w|/b) / (2b).
class LaplacianNoise {
 public:
  explicit LaplacianNoise(double b);
  double b() const noexcept { return b_; }

 private:
  double b_;
};

/// Student-t with `dof` > 2 degrees of freedom, optionally scaled:
/// w = scale * t_dof.
class StudentTNoise {
 public:
  explicit StudentTNoise(double dof, double scale = 1.0);
  double dof() const noexcept { return dof_; }
  double scale() const noexcept { return scale_; }

 private:
  double dof_;
  double scale_;
};

struct GmmComponent {
  double alpha;
  double theta;
  double sigma;
};

/// One-dimensional Gaussian mixture
///   f(w) = sum_m alpha_m N(w; theta_m, sigma_m^2).
///
/// Construction validates alpha_m in (0, 1] and sigma_m > 0 and accepts
/// weights summing to 1 within 1e-9, after which they are renormalized so
/// the stored weights sum to 1 within rounding.
class GmmModel {
 public:
  explicit GmmModel(std::vector<GmmComponent> components);

  std::span<const GmmComponent> components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }

  double mean() const;
  double variance() const;
  double pdf(double w) const;
  double cdf(double w) const;
  double survival(double w) const;

  /// Mixture of scale * W for W drawn from this model.
  GmmModel scaled(double scale) const;

 private:
  std::vector<GmmComponent> components_;
};

using NoiseModel = std::variant<GaussianNoise, LaplacianNoise, StudentTNoise, GmmModel>;

std::string_view family_name(const NoiseModel& model);

double variance(const NoiseModel& model);
double pdf(const NoiseModel& model, double w);
double cdf(const NoiseModel& model, double w);
/// 1 - cdf, computed without cancellation in the upper tail.
double survival(const NoiseModel& model, double w);

/// Same family and shape as `shape`, rescaled so variance() == target.
/// Student-t keeps its degrees of freedom and adjusts scale; GMMs scale
/// every mean and standard deviation by the same factor.
NoiseModel scaled_to_variance(const NoiseModel& shape, double target_variance);

/// n i.i.d. draws.
Signal sample(const NoiseModel& model, std::size_t n, RngStream& rng);

/// Plain-text block, one component per line:
///   # comment
///   components=2
///   alpha=0.5 theta=-1 sigma=0.5
///   alpha=0.5 theta=1 sigma=0.5
void write_gmm(std::ostream& out, const GmmModel& model);
GmmModel read_gmm(std::istream& in);
void save_gmm(const GmmModel& model, const std::filesystem::path& path);
GmmModel load_gmm(const std::filesystem::path& path);

}  // namespace mpe
