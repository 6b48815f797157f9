#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <limits>

#include "prequant/quantization.hpp"

using namespace prequant;

TEST_CASE("oscillator observable and generator") {
  const PhasePolynomial f = PhasePolynomial::monomial(1, 1);
  CHECK(approx_equal(toeplitz_quantize(f), LadderPolynomial::word(1, 1, Ordering::antinormal)));
  // hbar G of z z* is a-dagger a = a a-dagger - 1
  CHECK(approx_equal(quantize_generator(f), LadderPolynomial::word(1, 1, Ordering::normal)));
  const FockMatrix T = projected_section(toeplitz_quantize(f), 5);
  for (int n = 0; n <= 5; ++n) CHECK(T(n, n).real() == doctest::Approx(n + 1));
}

TEST_CASE("position quantizes to the position operator") {
  const Constants c{0.5, 3.0};
  const int N = 10;
  const FockMatrix X = realize(toeplitz_quantize(PhasePolynomial::position(c)), N);
  const FockMatrix A = annihilation_matrix(N);
  CHECK((X - std::sqrt(c.hbar / (2 * c.beta0)) * (A + A.adjoint())).cwiseAbs().maxCoeff() < 1e-14);
  // linear functions have no generator correction
  CHECK(approx_equal(quantize_generator(PhasePolynomial::position(c)), toeplitz_quantize(PhasePolynomial::position(c))));
}

TEST_CASE("numeric projections") {
  const Constants c{1.0, 1.0};
  const int N = 10;
  const QuadratureScheme quad = build_quadrature(24, 48, c);
  const PolarizationBasis basis(N, c);
  const PhasePolynomial f = PhasePolynomial::monomial(2, 1, Complex(0.3, 1.0)) + PhasePolynomial::monomial(0, 3, 2.0);
  CHECK((toeplitz_quantize_numeric(f, basis, quad) - projected_section(toeplitz_quantize(f), N)).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((quantize_generator_numeric(f, basis, quad) - projected_section(quantize_generator(f), N)).cwiseAbs().maxCoeff() < 1e-11);
  const PhaseFunction g = [](Complex z) { return Complex(std::exp(-std::norm(z - 1.0))); };
  CHECK((coherent_state_quantize_numeric(g, basis, quad) - toeplitz_quantize_numeric(g, basis, quad)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("non-polynomial symbols give positive operators") {
  const Constants c{1.0, 1.0};
  const PhaseFunction bump = [](Complex z) { return Complex(std::exp(-std::norm(z))); };
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(toeplitz_quantize_numeric(bump, PolarizationBasis(8, c), build_quadrature(24, 48, c)));
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  // <0| T |0> = int exp(-|z|^2) |eta_0|^2 = 1/2
  CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("non-finite samples are rejected") {
  const Constants c{1.0, 1.0};
  const PhaseFunction bad = [](Complex) { return Complex(std::numeric_limits<double>::quiet_NaN()); };
  CHECK_THROWS(toeplitz_quantize_numeric(bad, PolarizationBasis(3, c), build_quadrature(4, 8, c)));
}
