#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "prequant/fock.hpp"
#include "prequant/polarization.hpp"

using namespace prequant;

TEST_CASE("eta_n closed form") {
  const Constants c{0.9, 1.0};
  CHECK(std::abs(eval_eta(0, 0.0, c) - 1.0 / std::sqrt(2 * kPi * c.hbar)) < 1e-15);
  const Complex z(0.6, -0.3);
  // nu_3 z*^3 exp(-|z|^2/2), nu_3 = (3! 2 pi hbar)^-1/2
  const Complex expected = std::pow(std::conj(z), 3) * std::exp(-std::norm(z) / 2) / std::sqrt(6 * 2 * kPi * c.hbar);
  CHECK(std::abs(eval_eta(3, z, c) - expected) < 1e-15);
  CHECK(std::isfinite(std::abs(eval_eta(40, Complex(25.0, 3.0), c))));
  CHECK_THROWS(eval_eta(-1, z, c));
}

TEST_CASE("basis is orthonormal under the quadrature") {
  const Constants c{1.0, 1.0};
  const FockMatrix G = gram_matrix(build_quadrature(32, 64, c), 14, c);
  CHECK((G - FockMatrix::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evaluation states reproduce the Husimi function") {
  const Constants c{1.0, 1.0};
  const int N = 10;
  FockVector psi(N + 1);
  for (int n = 0; n <= N; ++n) psi(n) = Complex(std::cos(n), std::sin(2.0 * n)) / (1.0 + n);
  const Complex z0(0.4, 0.9);
  const EvaluationState e = evaluation_state(z0, N, c);
  const Complex direct = e.coefficients.dot(psi);  // <zeta|psi>
  const std::vector<Complex> pts{z0};
  CHECK(std::abs(direct - husimi_map(psi, pts, c)(0)) < 1e-14);
  // |zeta_z|^2 = exp(-|z|^2) sum |z|^2n / n! / (2 pi hbar) -> 1 / (2 pi hbar) for large N
  CHECK(evaluation_state(z0, 60, c).norm_squared() == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-12));
  CHECK(e.normalized().norm() == doctest::Approx(1.0));
}

TEST_CASE("Husimi map is an isometry") {
  const Constants c{0.7, 1.0};
  FockVector psi = FockVector::Zero(9);
  psi(0) = 0.5;
  psi(3) = Complex(0, 0.7);
  psi(8) = -0.2;
  CHECK(husimi_norm_squared(psi, build_quadrature(24, 48, c), c) == doctest::Approx(psi.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("annihilation symbol is z0") {
  const Constants c{1.0, 1.0};
  const int N = 40;
  const Complex z0(0.7, -1.1);
  const FockVector zeta = evaluation_state(z0, N, c).normalized();
  const Complex symbol = zeta.dot(annihilation_matrix(N) * zeta);
  CHECK(std::abs(symbol - z0) < 1e-8);
}

TEST_CASE("completeness improves to machine precision with exact quadrature") {
  const Constants c{1.0, 1.0};
  CHECK(completeness_residual(build_quadrature(16, 32, c), 12, c) < 1e-10);
  CHECK(completeness_residual(build_quadrature(4, 32, c), 12, c) > 1e-3);
}
