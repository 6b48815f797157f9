#include <doctest.h>

#include <cmath>

#include "prequant/phasespace.hpp"
#include "prequant/polarization.hpp"

using namespace prequant;

TEST_CASE("coordinate conversions round trip") {
  const Constants c{0.7, 1.9};
  for (PhasePoint pq : {PhasePoint{0.3, -1.2}, PhasePoint{-2.0, 0.5}, PhasePoint{1e-3, 4.0}}) {
    const PhasePoint aa = convert_coords(pq, CoordSystem::pq, CoordSystem::action_angle, c);
    const PhasePoint back = convert_coords(aa, CoordSystem::action_angle, CoordSystem::pq, c);
    CHECK(back.first == doctest::Approx(pq.first).epsilon(1e-12));
    CHECK(back.second == doctest::Approx(pq.second).epsilon(1e-12));
    // harmonic action (p^2/beta + beta q^2)/2
    CHECK(aa.first == doctest::Approx((pq.first * pq.first / c.beta0 + c.beta0 * pq.second * pq.second) / 2).epsilon(1e-12));
    CHECK(aa.second >= 0.0);
    CHECK(aa.second < 2 * kPi);
  }
  const PhasePoint origin = convert_coords({0, 0}, CoordSystem::pq, CoordSystem::action_angle, c);
  CHECK(origin.first == 0.0);
  CHECK(origin.second == 0.0);
  CHECK_THROWS(convert_coords({-1.0, 0.0}, CoordSystem::action_angle, CoordSystem::pq, c));
  CHECK_THROWS(convert_coords({NAN, 0.0}, CoordSystem::pq, CoordSystem::complex, c));
}

TEST_CASE("Gauss rules integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(12, x, w);
  for (int k = 0; k <= 22; k += 2) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    CHECK(s == doctest::Approx(2.0 / (k + 1)).epsilon(1e-14));
  }
  gauss_laguerre(10, x, w);
  double factorial = 1.0;
  for (int k = 0; k <= 19; ++k) {
    if (k > 0) factorial *= k;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    CHECK(s == doctest::Approx(factorial).epsilon(1e-11));
  }
}

TEST_CASE("phase-space quadrature against an independent product rule") {
  // int dp dq exp(-|z|^2) |z|^(2k) = 2 pi hbar k!; cross-checked with
  // Gauss-Legendre on [0, R] x [0, 2pi) in (I, theta).
  const Constants c{0.8, 1.4};
  const QuadratureScheme quad = build_quadrature(20, 16, c);
  std::vector<double> x, w;
  gauss_legendre(80, x, w);
  const double R = 60.0 * c.hbar;
  for (int k = 0; k <= 6; ++k) {
    double ours = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) ours += quad.weights[i] * std::pow(quad.nodes[i].action / c.hbar, k);
    double oracle = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double I = 0.5 * R * (x[i] + 1.0);
      oracle += 0.5 * R * w[i] * std::exp(-I / c.hbar) * std::pow(I / c.hbar, k);
    }
    oracle *= 2 * kPi;
    CHECK(ours == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("eta_0 is normalized in the plain pq measure") {
  const Constants c{1.0, 1.0};
  const PhaseGrid g = build_grid(-9, 9, -9, 9, 181, 181);
  for (int n : {0, 2}) {
    Eigen::MatrixXcd s(g.n_p, g.n_q);
    for (int i = 0; i < g.n_p; ++i) {
      for (int j = 0; j < g.n_q; ++j) s(i, j) = eval_eta(n, z_from_pq(g.p(i), g.q(j), c), c);
    }
    CHECK(g.norm_squared(s) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS(build_grid(0, 0, 0, 1, 4, 4));
  CHECK_THROWS(build_grid(0, 1, 0, 1, 1, 4));
  CHECK_THROWS(build_quadrature(0, 8, Constants{}));
  const PhaseGrid g = build_grid(-1, 1, -2, 2, 3, 5);
  CHECK(g.total_measure() == doctest::Approx(8.0));
}
