#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "prequant/fock.hpp"

using namespace prequant;

TEST_CASE("canonical commutator on the truncated space") {
  const int N = 10;
  const FockMatrix A = annihilation_matrix(N);
  const FockMatrix C = A * A.adjoint() - A.adjoint() * A;
  FockMatrix expected = FockMatrix::Identity(N + 1, N + 1);
  expected(N, N) = -double(N);
  CHECK((C - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("number operator spectrum") {
  const int N = 12;
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(ladder_matrix(0, 1, N) * ladder_matrix(1, 0, N));
  for (int n = 0; n <= N; ++n) CHECK(es.eigenvalues()(n) == doctest::Approx(n));
}

TEST_CASE("realization follows word order") {
  const int N = 8;
  const LadderPolynomial anti = LadderPolynomial::word(2, 1, Ordering::antinormal, 0.5);
  const LadderPolynomial normal = LadderPolynomial::word(2, 1, Ordering::normal, 0.5);
  const FockMatrix A = annihilation_matrix(N), Ad = A.adjoint();
  CHECK((realize(anti, N) - 0.5 * A * A * Ad).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((realize(normal, N) - 0.5 * Ad * A * A).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("projected section is exact on the whole block") {
  const int N = 6;
  const FockMatrix big = realize(LadderPolynomial::word(1, 1, Ordering::antinormal), N + 4);
  const FockMatrix small = projected_section(LadderPolynomial::word(1, 1, Ordering::antinormal), N);
  CHECK((big.topLeftCorner(N + 1, N + 1) - small).cwiseAbs().maxCoeff() < 1e-14);
  for (int n = 0; n <= N; ++n) CHECK(small(n, n).real() == doctest::Approx(n + 1));
}

TEST_CASE("matrix JSON round trip") {
  FockMatrix M(3, 3);
  M << Complex(1, 2), 0.1, Complex(0, -1e-17), 3, 4, 5, Complex(1.0 / 3, 2.0 / 7), 8, 9;
  const FockMatrix back = matrix_from_json(matrix_to_json(M));
  CHECK(back == M);
  CHECK_THROWS(matrix_from_json("{\"dim\": 2, \"entries\": [[1, 0]]}"));
}

TEST_CASE("leading block argument checks") {
  const FockMatrix A = FockMatrix::Identity(4, 4);
  CHECK(leading_block_distance(A, A, 0) == 0.0);
  CHECK_THROWS(leading_block_distance(A, A, 4));
  CHECK_THROWS(leading_block_distance(A, FockMatrix::Identity(3, 3), 0));
}
