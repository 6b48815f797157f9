#pragma once

// Output helpers: CSV tables, file writing and a content-hash manifest.

#include <filesystem>
#include <map>
#include <string>

#include "prequant/mixed.hpp"

namespace prequant {

/// Hex SHA-256 digest.
std::string sha256_hex(const std::string& content);

/// Columns p, q, re, im.
std::string koopman_csv(const KoopmanState& s);

/// Columns p, q, rho_0, rho_1, ... with rho_s = |v_s|^2.
std::string density_csv(const MixedState& s);

/// Writes files below a directory and records their hashes. `finish` adds
/// manifest.json listing every file in name order.
class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path dir);

  void write(const std::string& name, const std::string& content);
  void finish();
  const std::map<std::string, std::string>& hashes() const { return hashes_; }
  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string> hashes_;
};

}  // namespace prequant
