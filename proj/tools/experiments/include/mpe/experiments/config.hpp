#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mpe::experiments {

/// Invalid or inconsistent experiment configuration (a usage error).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat key=value settings. Lists are comma separated; numeric lists also
/// accept start:step:stop ranges (inclusive of stop within rounding).
class KeyValueConfig {
 public:
  /// Blank lines and '#' comments are skipped. Throws ParseError.
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(std::string_view key) const;

  std::string get_string(std::string_view key, std::string_view fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::size_t get_size(std::string_view key, std::size_t fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(std::string_view key, std::vector<double> fallback) const;
  std::vector<std::size_t> get_sizes(std::string_view key, std::vector<std::size_t> fallback) const;

  /// Throws ConfigError naming the first key outside `allowed`.
  void require_known(std::span<const std::string_view> allowed) const;

  const std::map<std::string, std::string, std::less<>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

std::vector<double> parse_double_list(std::string_view text);

}  // namespace mpe::experiments
