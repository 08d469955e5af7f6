#include "mpe/experiments/trial_table.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mpe::experiments {
namespace {

std::string format(double value, int digits) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, digits);
  return std::string(buffer, ptr);
}

}  // namespace

std::string format_full(double value) { return format(value, 17); }
std::string format_snr(double value) { return format(value, 6); }

double round_snr(double value) {
  if (!std::isfinite(value)) return value;
  const std::string text = format_snr(value);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

TrialTable::TrialTable(std::vector<std::string> key_names) : key_names_(std::move(key_names)) {}

void TrialTable::add(TrialRecord record) {
  if (record.keys.size() != key_names_.size()) {
    throw std::logic_error("trial record has the wrong number of keys");
  }
  record.output_snr_db = round_snr(record.output_snr_db);
  records_.push_back(std::move(record));
}

std::vector<Aggregate> TrialTable::aggregate() const {
  std::vector<Aggregate> out;
  std::vector<std::vector<double>> samples;
  for (const auto& r : records_) {
    std::size_t slot = out.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].keys == r.keys && out[i].method == r.method) {
        slot = i;
        break;
      }
    }
    if (slot == out.size()) {
      out.push_back({r.keys, r.method, 0.0, 0.0, 0});
      samples.emplace_back();
    }
    samples[slot].push_back(r.output_snr_db);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& v = samples[i];
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out[i].mean = mean;
    out[i].stddev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    out[i].count = v.size();
  }
  return out;
}

std::vector<double> TrialTable::values(std::span<const double> keys,
                                       std::string_view method) const {
  std::vector<double> out;
  for (const auto& r : records_) {
    if (r.method == method && std::equal(r.keys.begin(), r.keys.end(), keys.begin(), keys.end())) {
      out.push_back(r.output_snr_db);
    }
  }
  return out;
}

double TrialTable::mean(std::span<const double> keys, std::string_view method) const {
  for (const auto& a : aggregate()) {
    if (a.method == method && std::equal(a.keys.begin(), a.keys.end(), keys.begin(), keys.end())) {
      return a.mean;
    }
  }
  throw std::out_of_range("no trials for method " + std::string(method));
}

std::string config_comment(std::string_view command,
                           std::span<const std::pair<std::string, std::string>> settings) {
  std::string out = "# mpe-bench " + std::string(command);
  for (const auto& [key, value] : settings) out += " " + key + "=" + value;
  return out;
}

void write_trials_csv(std::ostream& out, const TrialTable& table, std::string_view comment) {
  out << comment << '\n';
  for (const auto& k : table.key_names()) out << k << ',';
  out << "trial,stream_id,method,output_snr_db\n";
  for (const auto& r : table.records()) {
    for (double k : r.keys) out << format_full(k) << ',';
    out << r.trial << ',' << r.stream_id << ',' << r.method << ',' << format_snr(r.output_snr_db)
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const TrialTable& table, std::string_view comment) {
  out << comment << '\n';
  for (const auto& k : table.key_names()) out << k << ',';
  out << "method,mean_output_snr_db,std_output_snr_db,trials\n";
  for (const auto& a : table.aggregate()) {
    for (double k : a.keys) out << format_full(k) << ',';
    out << a.method << ',' << format_full(a.mean) << ',' << format_full(a.stddev) << ','
        << a.count << '\n';
  }
}

}  // namespace mpe::experiments
