#include "prequant/dequantization.hpp"

#include <stdexcept>
#include <vector>

#include "prequant/polarization.hpp"

namespace prequant {

PhasePolynomial q_symbol(const LadderPolynomial& L) {
  return PhasePolynomial(reorder(L, Ordering::normal).terms());
}

PhasePolynomial p_symbol(const LadderPolynomial& L) {
  return PhasePolynomial(reorder(L, Ordering::antinormal).terms());
}

Complex q_symbol_numeric(const FockMatrix& M, Complex z0, const Constants& c) {
  if (M.rows() != M.cols() || M.rows() == 0) throw std::invalid_argument("q_symbol_numeric: matrix must be square");
  const FockVector zeta = evaluation_state(z0, static_cast<int>(M.rows()) - 1, c).coefficients;
  return zeta.dot(M * zeta) / zeta.squaredNorm();
}

LadderPolynomial matrix_to_ladder(const FockMatrix& M, int maxdeg, double* residual) {
  if (M.rows() != M.cols()) throw std::invalid_argument("matrix_to_ladder: matrix must be square");
  if (maxdeg < 0) throw std::invalid_argument("matrix_to_ladder: negative degree");
  const int dim = static_cast<int>(M.rows());
  if (dim < maxdeg + 3) throw std::invalid_argument("matrix_to_ladder: dim must be at least maxdeg + 3");
  const int N = dim - 1;
  const int block = dim - maxdeg;

  std::vector<Exponents> words;
  for (int deg = 0; deg <= maxdeg; ++deg) {
    for (int k = 0; k <= deg; ++k) words.emplace_back(k, deg - k);
  }
  Eigen::MatrixXcd design(static_cast<Eigen::Index>(block) * block, static_cast<Eigen::Index>(words.size()));
  for (std::size_t w = 0; w < words.size(); ++w) {
    const FockMatrix R = realize(LadderPolynomial::word(words[w].first, words[w].second, Ordering::normal), N);
    design.col(static_cast<Eigen::Index>(w)) = R.topLeftCorner(block, block).reshaped();
  }
  const Eigen::VectorXcd rhs = M.topLeftCorner(block, block).reshaped();
  const double scale = rhs.norm();
  if (scale == 0.0) {
    if (residual) *residual = 0.0;
    return LadderPolynomial({}, Ordering::normal);
  }
  const Eigen::VectorXcd x = design.colPivHouseholderQr().solve(rhs);
  const double rel = (design * x - rhs).norm() / scale;
  if (residual) *residual = rel;
  if (rel > 1e-6) {
    throw std::runtime_error("matrix_to_ladder: not representable at this degree (relative residual " +
                             std::to_string(rel) + ")");
  }
  const double cutoff = 1e-12 * x.cwiseAbs().maxCoeff();
  TermMap terms;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const Complex v = x(static_cast<Eigen::Index>(w));
    if (std::abs(v) > cutoff) terms[words[w]] = v;
  }
  return LadderPolynomial(std::move(terms), Ordering::normal);
}

PhasePolynomial dequantize_hamiltonian(const LadderPolynomial& L) {
  return inverse_tuynman(p_symbol(L));
}

}  // namespace prequant
