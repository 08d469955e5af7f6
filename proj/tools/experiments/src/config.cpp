#include "mpe/experiments/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "mpe/error.hpp"

namespace mpe::experiments {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view text, std::string_view key) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t to_u64(std::string_view text, std::string_view key) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "': expected a nonnegative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

std::vector<double> expand_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    if (item.empty()) throw ConfigError("'" + std::string(key) + "': empty list item");
    const auto c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(to_double(item, key));
    } else {
      const auto c2 = item.find(':', c1 + 1);
      if (c2 == std::string_view::npos) {
        throw ConfigError("'" + std::string(key) + "': range must be start:step:stop");
      }
      const double start = to_double(item.substr(0, c1), key);
      const double step = to_double(item.substr(c1 + 1, c2 - c1 - 1), key);
      const double stop = to_double(item.substr(c2 + 1), key);
      if (!(step > 0.0) || stop < start) {
        throw ConfigError("'" + std::string(key) + "': range needs step > 0 and stop >= start");
      }
      const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
      if (count > 1'000'000) throw ConfigError("'" + std::string(key) + "': range too long");
      for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) { return expand_list(text, "list"); }

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    const auto key = trim(body.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    cfg.set(std::string(key), std::string(trim(body.substr(eq + 1))));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse(in);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool KeyValueConfig::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::string KeyValueConfig::get_string(std::string_view key, std::string_view fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? std::string(fallback) : it->second;
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : to_double(it->second, key);
}

std::size_t KeyValueConfig::get_size(std::string_view key, std::size_t fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : static_cast<std::size_t>(to_u64(it->second, key));
}

std::uint64_t KeyValueConfig::get_u64(std::string_view key, std::uint64_t fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : to_u64(it->second, key);
}

std::vector<double> KeyValueConfig::get_doubles(std::string_view key,
                                                std::vector<double> fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : expand_list(it->second, key);
}

std::vector<std::size_t> KeyValueConfig::get_sizes(std::string_view key,
                                                   std::vector<std::size_t> fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<std::size_t> out;
  for (double v : expand_list(it->second, key)) {
    if (v < 0.0 || v != std::floor(v)) {
      throw ConfigError("'" + std::string(key) + "': expected nonnegative integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void KeyValueConfig::require_known(std::span<const std::string_view> allowed) const {
  for (const auto& [key, value] : entries_) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }
}

}  // namespace mpe::experiments
