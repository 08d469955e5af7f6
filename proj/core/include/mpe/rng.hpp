#pragma once

#include <cstdint>
#include <random>

namespace mpe {

/// Reproducible random stream identified by (seed, stream_id).
///
/// Backed by std::mt19937_64 seeded through std::seed_seq over the 32-bit
/// halves of seed and stream_id. Two streams built from the same pair yield
/// identical sequences; distinct stream ids give statistically independent
/// sequences. A stream is not shared between threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Standard Student-t with `dof` degrees of freedom.
  double student_t(double dof);
  /// Zero-mean Laplacian with scale b.
  double laplace(double b);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mpe
