#include "prequant/polarization.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace prequant {
namespace {

// |nu_n z*^n| in log form, without the Gaussian.
double log_reduced_modulus(int n, double r, double hbar) {
  return n * std::log(r) - 0.5 * (std::lgamma(n + 1.0) + std::log(2.0 * kPi * hbar));
}

}  // namespace

Complex eval_eta_reduced(int n, Complex z, const Constants& c) {
  if (n < 0) throw std::invalid_argument("eval_eta: negative index");
  const double r = std::abs(z);
  if (r == 0.0) return n == 0 ? Complex(1.0 / std::sqrt(2.0 * kPi * c.hbar)) : Complex{};
  const double theta = std::arg(z);
  return std::polar(std::exp(log_reduced_modulus(n, r, c.hbar)), -n * theta);
}

Complex eval_eta(int n, Complex z, const Constants& c) {
  if (n < 0) throw std::invalid_argument("eval_eta: negative index");
  const double r = std::abs(z);
  if (r == 0.0) return n == 0 ? Complex(1.0 / std::sqrt(2.0 * kPi * c.hbar)) : Complex{};
  const double theta = std::arg(z);
  return std::polar(std::exp(log_reduced_modulus(n, r, c.hbar) - 0.5 * r * r), -n * theta);
}

PolarizationBasis::PolarizationBasis(int truncation, const Constants& c)
    : truncation_(truncation), constants_(c) {
  if (truncation < 0) throw std::invalid_argument("PolarizationBasis: negative truncation");
  c.validate();
}

Eigen::MatrixXcd PolarizationBasis::reduced_table(const QuadratureScheme& quad) const {
  Eigen::MatrixXcd table(static_cast<Eigen::Index>(quad.size()), dim());
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Complex z = quad.z(i);
    for (int n = 0; n <= truncation_; ++n) table(static_cast<Eigen::Index>(i), n) = eta_reduced(n, z);
  }
  return table;
}

EvaluationState evaluation_state(Complex z0, int N, const Constants& c) {
  if (N < 0) throw std::invalid_argument("evaluation_state: negative truncation");
  EvaluationState s{z0, FockVector(N + 1)};
  for (int n = 0; n <= N; ++n) s.coefficients(n) = std::conj(eval_eta(n, z0, c));
  return s;
}

Eigen::VectorXcd husimi_map(const FockVector& psi, std::span<const Complex> points, const Constants& c) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    Complex sum{};
    for (Eigen::Index n = 0; n < psi.size(); ++n) sum += eval_eta(static_cast<int>(n), points[i], c) * psi(n);
    out(static_cast<Eigen::Index>(i)) = sum;
  }
  return out;
}

double husimi_norm_squared(const FockVector& psi, const QuadratureScheme& quad, const Constants& c) {
  const PolarizationBasis basis(static_cast<int>(psi.size()) - 1, c);
  const Eigen::VectorXcd xi = basis.reduced_table(quad) * psi;
  double sum = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) sum += quad.weights[i] * std::norm(xi(static_cast<Eigen::Index>(i)));
  return sum;
}

FockMatrix gram_matrix(const QuadratureScheme& quad, int N, const Constants& c) {
  const PolarizationBasis basis(N, c);
  const Eigen::MatrixXcd table = basis.reduced_table(quad);
  Eigen::VectorXd w(static_cast<Eigen::Index>(quad.size()));
  for (std::size_t i = 0; i < quad.size(); ++i) w(static_cast<Eigen::Index>(i)) = quad.weights[i];
  return table.adjoint() * w.asDiagonal() * table;
}

double completeness_residual(const QuadratureScheme& quad, int N, const Constants& c) {
  // sum_i w_i |zeta_i><zeta_i| has entries sum_i w_i conj(eta_n) eta_n', the
  // (transposed) Gram matrix; both share the same spectrum.
  const FockMatrix R = gram_matrix(quad, N, c) - FockMatrix::Identity(N + 1, N + 1);
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(R, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace prequant
