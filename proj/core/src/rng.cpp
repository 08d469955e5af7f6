#include "mpe/rng.hpp"

#include <cmath>

#include "mpe/error.hpp"

namespace mpe {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform() {
  // generate_canonical can round up to 1 in some library versions.
  const double u = std::generate_canonical<double, 53>(engine_);
  return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::student_t(double dof) {
  if (!(dof > 0.0)) throw DomainError("student_t: dof must be > 0");
  return std::student_t_distribution<double>(dof)(engine_);
}

double RngStream::laplace(double b) {
  if (!(b > 0.0)) throw DomainError("laplace: scale must be > 0");
  double u = 0.0;
  do {
    u = uniform() - 0.5;
  } while (u == -0.5);
  return u < 0.0 ? b * std::log1p(2.0 * u) : -b * std::log1p(-2.0 * u);
}

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw DomainError("index: n must be > 0");
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

}  // namespace mpe
