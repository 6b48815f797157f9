#include "prequant/config.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "prequant/notation.hpp"

namespace prequant {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Config Config::parse(std::string_view text, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
    if (cfg.entries_.count(key)) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    cfg.entries_[key] = Entry{value, line_no};
    if (nl == text.size()) break;
  }
  return cfg;
}

ConfigError Config::error(const std::string& key, const std::string& what) const {
  const auto it = entries_.find(key);
  const std::string where = it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
  return ConfigError(where + ": key '" + key + "': " + what);
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::string Config::text(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw ConfigError(source_ + ": missing required key '" + key + "'");
  return *v;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double Config::number(const std::string& key) const {
  const std::string v = text(key);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw error(key, "expected a finite number, got '" + v + "'");
  }
  return out;
}

int Config::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const std::string v = text(key);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw error(key, "expected an integer, got '" + v + "'");
  return out;
}

bool Config::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = text(key);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw error(key, "expected true or false, got '" + v + "'");
}

Complex Config::complex(const std::string& key, Complex fallback) const {
  if (!has(key)) return fallback;
  try {
    return parse_complex(text(key));
  } catch (const std::exception& e) {
    throw error(key, e.what());
  }
}

void Config::require_only(const std::set<std::string>& allowed) const {
  std::vector<std::pair<int, std::string>> unknown;
  for (const auto& [key, entry] : entries_) {
    if (!allowed.count(key)) unknown.emplace_back(entry.line, key);
  }
  if (unknown.empty()) return;
  std::sort(unknown.begin(), unknown.end());
  throw ConfigError(source_ + ":" + std::to_string(unknown.front().first) + ": unknown key '" + unknown.front().second + "'");
}

}  // namespace prequant
