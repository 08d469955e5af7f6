#include "mpe/signals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "mpe/error.hpp"
#include "mpe/transforms.hpp"

namespace mpe {

void require_finite_signal(std::span<const double> x, std::string_view what) {
  if (x.empty()) throw DomainError(std::string(what) + " is empty");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw DomainError(std::string(what) + " has a non-finite sample at index " +
                        std::to_string(i));
    }
  }
}

double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

Signal harmonic_gen(std::size_t n) {
  if (n == 0) throw DomainError("signal length must be >= 1");
  Signal s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::numbers::pi * static_cast<double>(i) / 2048.0;
    s[i] = std::cos(5.0 * t) + 2.0 * std::sin(10.0 * t);
  }
  return s;
}

Signal heavisine_gen(std::size_t n) {
  if (n == 0) throw DomainError("signal length must be >= 1");
  auto sgn = [](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); };
  Signal s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    s[i] = 4.0 * std::sin(4.0 * std::numbers::pi * t) - sgn(t - 0.3) - sgn(0.72 - t);
  }
  return s;
}

Signal read_signal(std::istream& in) {
  Signal out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    if (*begin == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw ParseError("not a number: '" + line.substr(first, last - first + 1) + "'", line_no);
    }
    if (!std::isfinite(value)) throw ParseError("non-finite sample", line_no);
    out.push_back(value);
  }
  if (out.empty()) throw ParseError("signal file holds no samples", 0);
  return out;
}

void write_signal(std::ostream& out, std::span<const double> x) {
  char buffer[32];
  for (double v : x) {
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v,
                                         std::chars_format::general, 17);
    out.write(buffer, ptr - buffer);
    out.put('\n');
  }
}

ExperimentSignal load_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open signal file " + path.string(), 0);
  return {path.stem().string(), read_signal(in), SignalSource::file};
}

void save_signal(std::span<const double> x, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_signal(out, x);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

double noise_variance_for_snr(std::span<const double> s, double input_snr_db) {
  require_finite_signal(s, "clean signal");
  if (!std::isfinite(input_snr_db)) throw DomainError("input SNR must be finite");
  const double power = energy(s) / static_cast<double>(s.size());
  if (!(power > 0.0)) throw DomainError("clean signal has zero energy");
  return power / std::pow(10.0, input_snr_db / 10.0);
}

NoisyObservation add_noise(std::span<const double> s, const NoiseModel& family,
                           double input_snr_db, RngStream& rng) {
  NoiseModel model = scaled_to_variance(family, noise_variance_for_snr(s, input_snr_db));
  Signal noisy = sample(model, s.size(), rng);
  for (std::size_t i = 0; i < s.size(); ++i) noisy[i] += s[i];
  return {std::move(noisy), std::move(model)};
}

double snr_db(std::span<const double> reference, std::span<const double> estimate) {
  if (reference.size() != estimate.size()) throw DomainError("SNR: length mismatch");
  require_finite_signal(reference, "reference");
  require_finite_signal(estimate, "estimate");
  const double signal = energy(reference);
  if (!(signal > 0.0)) throw DomainError("SNR: reference has zero energy");
  double err = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reference[i] - estimate[i];
    err += d * d;
  }
  if (err == 0.0) return kPerfectSnr;
  return 10.0 * std::log10(signal / err);
}

double mad_sigma(std::span<const double> x) {
  if (x.size() < 8) throw DomainError("MAD noise estimate needs at least 8 samples");
  const Signal c = dct_forward(x);
  std::vector<double> upper;
  for (std::size_t i = c.size() / 2; i < c.size(); ++i) upper.push_back(std::abs(c[i]));
  const std::size_t mid = upper.size() / 2;
  std::nth_element(upper.begin(), upper.begin() + mid, upper.end());
  double median = upper[mid];
  if (upper.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(upper.begin(), upper.begin() + mid));
  }
  return median / 0.6745;
}

}  // namespace mpe
