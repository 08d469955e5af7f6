#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpe::experiments {

/// Rounds to 6 significant digits, the precision SNRs are reported at.
double round_snr(double value);

struct TrialRecord {
  /// Values of the table's key columns (input SNR, beta, k, ...).
  std::vector<double> keys;
  std::size_t trial = 0;
  std::uint64_t stream_id = 0;
  std::string method;
  double output_snr_db = 0.0;
};

struct Aggregate {
  std::vector<double> keys;
  std::string method;
  double mean = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single trial.
  double stddev = 0.0;
  std::size_t count = 0;
};

/// Per-trial output SNRs of one experiment. Values are stored already
/// rounded, so aggregates are exactly reproducible from the emitted rows.
class TrialTable {
 public:
  explicit TrialTable(std::vector<std::string> key_names);

  const std::vector<std::string>& key_names() const noexcept { return key_names_; }
  const std::vector<TrialRecord>& records() const noexcept { return records_; }

  void add(TrialRecord record);

  /// One entry per (keys, method) in order of first appearance.
  std::vector<Aggregate> aggregate() const;

  /// Mean for one (keys, method); throws std::out_of_range if absent.
  double mean(std::span<const double> keys, std::string_view method) const;
  std::vector<double> values(std::span<const double> keys, std::string_view method) const;

 private:
  std::vector<std::string> key_names_;
  std::vector<TrialRecord> records_;
};

/// "# " followed by the resolved configuration as key=value pairs.
std::string config_comment(std::string_view command,
                           std::span<const std::pair<std::string, std::string>> settings);

/// Long format: key columns, trial, stream_id, method, output_snr_db.
void write_trials_csv(std::ostream& out, const TrialTable& table, std::string_view comment);
/// Long format: key columns, method, mean, std, trials.
void write_summary_csv(std::ostream& out, const TrialTable& table, std::string_view comment);

/// Writes `path` through `writer`, throwing std::runtime_error on I/O failure.
template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer);

/// Full-precision number formatting (17 significant digits).
std::string format_full(double value);
/// 6 significant digits.
std::string format_snr(double value);

}  // namespace mpe::experiments

#include <fstream>
#include <stdexcept>

template <class Writer>
void mpe::experiments::write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}
