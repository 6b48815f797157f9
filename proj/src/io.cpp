#include "prequant/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "prequant/notation.hpp"

namespace prequant {

std::string sha256_hex(const std::string& content) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(content.data(), content.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string koopman_csv(const KoopmanState& s) {
  std::ostringstream os;
  os << "p,q,re,im\n";
  for (int i = 0; i < s.grid.n_p; ++i) {
    for (int j = 0; j < s.grid.n_q; ++j) {
      const Complex v = s.amplitudes(i, j);
      os << format_number(s.grid.p(i)) << ',' << format_number(s.grid.q(j)) << ',' << format_number(v.real()) << ','
         << format_number(v.imag()) << '\n';
    }
  }
  return os.str();
}

std::string density_csv(const MixedState& s) {
  std::ostringstream os;
  os << "p,q";
  for (int k = 0; k < s.dim(); ++k) os << ",rho_" << k;
  os << '\n';
  for (int i = 0; i < s.grid.n_p; ++i) {
    for (int j = 0; j < s.grid.n_q; ++j) {
      os << format_number(s.grid.p(i)) << ',' << format_number(s.grid.q(j));
      for (const auto& c : s.components) os << ',' << format_number(std::norm(c(i, j)));
      os << '\n';
    }
  }
  return os.str();
}

OutputWriter::OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void OutputWriter::write(const std::string& name, const std::string& content) {
  std::ofstream f(dir_ / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
  f << content;
  hashes_[name] = sha256_hex(content);
}

void OutputWriter::finish() {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [name, hash] : hashes_) files.push_back({{"file", name}, {"sha256", hash}});
  std::ofstream f(dir_ / "manifest.json", std::ios::binary);
  f << nlohmann::json{{"files", files}}.dump(2) << '\n';
}

}  // namespace prequant
