#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>

#include "mpe/noise_model.hpp"
#include "mpe/rng.hpp"
#include "mpe/signal.hpp"

namespace mpe {

enum class SignalSource { generated, file };

struct ExperimentSignal {
  std::string name;
  Signal data;
  SignalSource source = SignalSource::generated;
};

/// s_n = cos(5 pi n / 2048) + 2 sin(10 pi n / 2048), n = 0..n-1.
Signal harmonic_gen(std::size_t n = 2048);

/// 4 sin(4 pi t) - sgn(t - 0.3) - sgn(0.72 - t), t = i / n.
Signal heavisine_gen(std::size_t n);

/// One real per line; blank lines and lines starting with '#' are skipped.
Signal read_signal(std::istream& in);
/// One value per line at 17 significant digits.
void write_signal(std::ostream& out, std::span<const double> x);

ExperimentSignal load_signal(const std::filesystem::path& path);
void save_signal(std::span<const double> x, const std::filesystem::path& path);

/// Noise variance that puts `s` at the given input SNR:
/// (sum s_n^2 / n) / 10^(snr/10).
double noise_variance_for_snr(std::span<const double> s, double input_snr_db);

struct NoisyObservation {
  Signal noisy;
  /// `family` rescaled to the realized noise variance.
  NoiseModel model;
};

/// s + w with w i.i.d. from `family` rescaled to noise_variance_for_snr.
NoisyObservation add_noise(std::span<const double> s, const NoiseModel& family,
                           double input_snr_db, RngStream& rng);

/// Returned by snr_db when the estimate equals the reference exactly.
inline constexpr double kPerfectSnr = std::numeric_limits<double>::infinity();

/// 10 log10(||s||^2 / ||s - s_hat||^2).
double snr_db(std::span<const double> reference, std::span<const double> estimate);

/// Robust noise level: median(|d|) / 0.6745 over the upper half of the DCT
/// coefficients of x.
double mad_sigma(std::span<const double> x);

}  // namespace mpe
