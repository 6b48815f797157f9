#pragma once

// Strict `key = value` configuration files. `#` starts a comment; every key
// must be consumed by the command, otherwise parsing fails with its line.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "prequant/constants.hpp"

namespace prequant {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  static Config parse(std::string_view text, const std::string& source = "config");

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  double number(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  Complex complex(const std::string& key, Complex fallback) const;

  /// Throws for the first key (in file order) not in `allowed`.
  void require_only(const std::set<std::string>& allowed) const;

  /// Error message prefixed with the key's location.
  ConfigError error(const std::string& key, const std::string& what) const;

 private:
  struct Entry {
    std::string value;
    int line;
  };
  std::string source_;
  std::map<std::string, Entry> entries_;
};

}  // namespace prequant
