#include "prequant/fock.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace prequant {
namespace {

// <n'| a+^m a^k |n> = sqrt(n!/(n-k)!) sqrt((n-k+m)!/(n-k)!), n' = n - k + m.
double normal_element(int k, int m, int n) {
  if (n < k) return 0.0;
  double v = 1.0;
  for (int j = n - k + 1; j <= n; ++j) v *= std::sqrt(static_cast<double>(j));
  for (int j = n - k + 1; j <= n - k + m; ++j) v *= std::sqrt(static_cast<double>(j));
  return v;
}

// <n'| a^k a+^m |n> = sqrt((n+m)!/n!) sqrt((n+m)!/(n+m-k)!), n' = n + m - k.
double antinormal_element(int k, int m, int n) {
  if (n + m < k) return 0.0;
  double v = 1.0;
  for (int j = n + 1; j <= n + m; ++j) v *= std::sqrt(static_cast<double>(j));
  for (int j = n + m - k + 1; j <= n + m; ++j) v *= std::sqrt(static_cast<double>(j));
  return v;
}

}  // namespace

FockMatrix realize(const LadderPolynomial& L, int N) {
  if (N < L.degree()) {
    throw std::invalid_argument("realize: truncation N=" + std::to_string(N) +
                                " is smaller than the polynomial degree " +
                                std::to_string(L.degree()));
  }
  const FockMatrix A = annihilation_matrix(N);
  const FockMatrix Ad = A.adjoint();
  FockMatrix M = FockMatrix::Zero(N + 1, N + 1);
  for (const auto& [e, c] : L.terms()) {
    const auto [k, m] = e;
    FockMatrix word = FockMatrix::Identity(N + 1, N + 1);
    if (L.ordering() == Ordering::antinormal) {
      for (int i = 0; i < k; ++i) word = word * A;
      for (int i = 0; i < m; ++i) word = word * Ad;
    } else {
      for (int i = 0; i < m; ++i) word = word * Ad;
      for (int i = 0; i < k; ++i) word = word * A;
    }
    M += c * word;
  }
  return M;
}

FockMatrix projected_section(const LadderPolynomial& L, int N) {
  if (N < 0) throw std::invalid_argument("projected_section: negative truncation");
  FockMatrix M = FockMatrix::Zero(N + 1, N + 1);
  const bool antinormal = L.ordering() == Ordering::antinormal;
  for (const auto& [e, c] : L.terms()) {
    const auto [k, m] = e;
    for (int n = 0; n <= N; ++n) {
      const int row = n - k + m;
      if (row < 0 || row > N) continue;
      M(row, n) += c * (antinormal ? antinormal_element(k, m, n) : normal_element(k, m, n));
    }
  }
  return M;
}

double leading_block_distance(const FockMatrix& A, const FockMatrix& B, int d) {
  if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols()) {
    throw std::invalid_argument("leading_block_distance: mismatched dimensions");
  }
  const int dim = static_cast<int>(A.rows());
  if (d < 0 || d > dim - 1) throw std::invalid_argument("leading_block_distance: degree budget out of range");
  const int n = dim - d;
  return (A.topLeftCorner(n, n) - B.topLeftCorner(n, n)).cwiseAbs().maxCoeff();
}

std::string matrix_to_json(const FockMatrix& M) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      entries.push_back({M(i, j).real(), M(i, j).imag()});
    }
  }
  nlohmann::json doc{{"dim", M.rows()}, {"entries", std::move(entries)}};
  return doc.dump();
}

FockMatrix matrix_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  const auto dim = doc.at("dim").get<Eigen::Index>();
  const auto& entries = doc.at("entries");
  if (dim < 0 || entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw std::runtime_error("matrix JSON: entry count does not match dim^2");
  }
  FockMatrix M(dim, dim);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j, ++idx) {
      M(i, j) = Complex(entries[idx].at(0).get<double>(), entries[idx].at(1).get<double>());
    }
  }
  return M;
}

}  // namespace prequant
