#include "mpe/transforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

#include "mpe/error.hpp"

namespace mpe {
namespace {

// FFTW planning is not thread-safe; execution with new-array execute is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, fftw_r2r_kind kind) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, static_cast<int>(kind));
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    double* out = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_r2r_1d(n, in, out, kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw NumericError("FFTW could not create a DCT plan");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

Signal run(std::span<const double> x, fftw_r2r_kind kind) {
  Signal in(x.begin(), x.end());
  Signal out(x.size());
  fftw_execute_r2r(PlanCache::instance().get(static_cast<int>(x.size()), kind), in.data(),
                   out.data());
  return out;
}

}  // namespace

Signal dct_forward(std::span<const double> x) {
  require_finite_signal(x, "DCT input");
  // REDFT10 computes 2 sum_j x_j cos(pi k (2j + 1) / 2n).
  Signal out = run(x, FFTW_REDFT10);
  const double n = static_cast<double>(x.size());
  out[0] *= 0.5 / std::sqrt(n);
  const double rest = 1.0 / std::sqrt(2.0 * n);
  for (std::size_t k = 1; k < out.size(); ++k) out[k] *= rest;
  return out;
}

Signal dct_inverse(std::span<const double> coefficients) {
  require_finite_signal(coefficients, "DCT coefficients");
  // REDFT01 computes Z_0 + 2 sum_{k>0} Z_k cos(pi k (2j + 1) / 2n).
  const double n = static_cast<double>(coefficients.size());
  Signal scaled(coefficients.begin(), coefficients.end());
  scaled[0] *= 1.0 / std::sqrt(n);
  const double rest = 0.5 * std::sqrt(2.0 / n);
  for (std::size_t k = 1; k < scaled.size(); ++k) scaled[k] *= rest;
  return run(scaled, FFTW_REDFT01);
}

}  // namespace mpe
