#include "prequant/quantization.hpp"

#include <cmath>
#include <stdexcept>

namespace prequant {
namespace {

Eigen::VectorXd weight_vector(const QuadratureScheme& quad) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(quad.size()));
  for (std::size_t i = 0; i < quad.size(); ++i) w(static_cast<Eigen::Index>(i)) = quad.weights[i];
  return w;
}

Complex checked(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw std::invalid_argument("quantization: non-finite sample of the observable");
  }
  return v;
}

}  // namespace

LadderPolynomial toeplitz_quantize(const PhasePolynomial& f) {
  return LadderPolynomial(f.terms(), Ordering::antinormal);
}

FockMatrix toeplitz_quantize_numeric(const PhaseFunction& f, const PolarizationBasis& basis,
                                     const QuadratureScheme& quad) {
  const Eigen::MatrixXcd table = basis.reduced_table(quad);
  Eigen::VectorXcd fw(table.rows());
  for (std::size_t i = 0; i < quad.size(); ++i) {
    fw(static_cast<Eigen::Index>(i)) = quad.weights[i] * checked(f(quad.z(i)));
  }
  return table.adjoint() * fw.asDiagonal() * table;
}

FockMatrix toeplitz_quantize_numeric(const PhasePolynomial& f, const PolarizationBasis& basis,
                                     const QuadratureScheme& quad) {
  return toeplitz_quantize_numeric([&f](Complex z) { return f(z); }, basis, quad);
}

FockMatrix coherent_state_quantize_numeric(const PhaseFunction& f, const PolarizationBasis& basis,
                                           const QuadratureScheme& quad) {
  // |zeta_z><zeta_z| carries exp(-|z|^2), which cancels the exp(I/hbar) of the
  // measure weight; the reduced states with the plain weights avoid that round trip.
  // The rank-one terms are large and cancel across angles, so the sum is compensated.
  const int N = basis.truncation();
  FockMatrix sum = FockMatrix::Zero(N + 1, N + 1), carry = FockMatrix::Zero(N + 1, N + 1);
  FockMatrix term(N + 1, N + 1), next(N + 1, N + 1);
  FockVector zeta(N + 1);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Complex z = quad.z(i);
    for (int n = 0; n <= N; ++n) zeta(n) = std::conj(basis.eta_reduced(n, z));
    term.noalias() = (quad.weights[i] * checked(f(z))) * (zeta * zeta.adjoint());
    next = sum + term;
    for (Eigen::Index k = 0; k < sum.size(); ++k) {
      const Complex s = sum(k), t = term(k), x = next(k);
      auto compensate = [](double a, double b, double r) { return std::abs(a) >= std::abs(b) ? (a - r) + b : (b - r) + a; };
      carry(k) += Complex(compensate(s.real(), t.real(), x.real()), compensate(s.imag(), t.imag(), x.imag()));
    }
    sum.swap(next);
  }
  return sum + carry;
}

LadderPolynomial quantize_generator(const PhasePolynomial& f) {
  TermMap out;
  for (const auto& [e, c] : f.terms()) {
    const auto [k, m] = e;
    out[e] += c;
    if (k > 0 && m > 0) out[{k - 1, m - 1}] -= c * static_cast<double>(k * m);
  }
  return LadderPolynomial(std::move(out), Ordering::antinormal);
}

LadderPolynomial quantize_generator_tuynman(const PhasePolynomial& f) {
  return toeplitz_quantize(tuynman_tau(f));
}

FockMatrix quantize_generator_numeric(const PhasePolynomial& f, const PolarizationBasis& basis,
                                      const QuadratureScheme& quad) {
  const Eigen::MatrixXcd table = basis.reduced_table(quad);
  const PhasePolynomial multiplier = f + gauge_potential(f);
  const PhasePolynomial fz = d_dz(f);
  const PhasePolynomial fzbar = d_dzbar(f);
  const Eigen::Index rows = table.rows();
  const int N = basis.truncation();

  // Column n holds (hbar G_f eta_n) exp(+|z|^2/2) at every node. With
  // eta_n = nu_n z*^n exp(-|z|^2/2):
  //   d eta_n / dz  -> -(z*/2) eta_n
  //   d eta_n / dz* -> sqrt(n) eta_{n-1} - (z/2) eta_n
  Eigen::MatrixXcd applied(rows, N + 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Complex z = quad.z(static_cast<std::size_t>(i));
    const Complex mult = multiplier(z), a = fz(z), b = fzbar(z);
    for (int n = 0; n <= N; ++n) {
      const Complex eta = table(i, n);
      const Complex d_z = -0.5 * std::conj(z) * eta;
      Complex d_zbar = -0.5 * z * eta;
      if (n > 0) d_zbar += std::sqrt(static_cast<double>(n)) * table(i, n - 1);
      applied(i, n) = mult * eta + a * d_zbar - b * d_z;
    }
  }
  return table.adjoint() * weight_vector(quad).asDiagonal() * applied;
}

}  // namespace prequant
