#include <doctest.h>

#include "prequant/koopman.hpp"
#include "prequant/mixed.hpp"

using namespace prequant;

namespace {

const SternGerlachConfig kSG{1.0, 0.5, 1.0, 1.0};

double l2_distance(const MixedState& a, const MixedState& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim(); ++k) s += a.grid.norm_squared(a.components[k] - b.components[k]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("closed-form Stern-Gerlach solution solves the component equations") {
  const PhaseGrid g = build_grid(-8, 8, -8, 8, 161, 161);
  const GaussianParams gp{0.3, -0.2, 1.0, 1.0};
  const auto v0 = [&](double p, double q) { return gp(p, q); };
  const double t = 0.7, eps = 1e-3;
  const MixedState s = sg_exact_state(kSG, v0, v0, g, t);
  const MixedState plus = sg_exact_state(kSG, v0, v0, g, t + eps), minus = sg_exact_state(kSG, v0, v0, g, t - eps);
  for (int k = 0; k < 2; ++k) {
    const int sign = k == 0 ? 1 : -1;
    const PrequantumGenerator G = build_generator(sg_hamiltonian(kSG, sign), kSG.constants());
    KoopmanState comp{g, s.components[k], t};
    const Eigen::MatrixXcd rhs = Complex(0, -1) * apply_generator(G, comp).amplitudes;
    const Eigen::MatrixXcd dt = (plus.components[k] - minus.components[k]) / (2 * eps);
    CHECK(std::sqrt(g.norm_squared(dt - rhs) / g.norm_squared(rhs)) < 1e-4);
  }
}

TEST_CASE("semi-Lagrangian solver tracks the closed form") {
  const PhaseGrid g = build_grid(-10, 10, -10, 10, 96, 96);
  const GaussianParams gp{};
  const Complex a(0.6), b(0.0, 0.8);
  const MixedState s0 = product_state(gaussian_packet(gp, g), {a, b});
  EvolutionDiagnostics d;
  const MixedState s = sg_numeric_evolve(kSG, s0, 1.0 / 48, 48, {}, &d);
  const MixedState e = sg_exact_state(
      kSG, [&](double p, double q) { return a * gp(p, q); }, [&](double p, double q) { return b * gp(p, q); }, g, 1.0);
  CHECK(l2_distance(s, e) < 1e-4);
  CHECK(d.steps == 48);
  CHECK(s.time == doctest::Approx(1.0));
  const auto pops = s.populations();
  CHECK(pops[0] == doctest::Approx(0.36).epsilon(1e-5));
  CHECK(pops[1] == doctest::Approx(0.64).epsilon(1e-5));
}

TEST_CASE("escaping packets stop the solver") {
  const PhaseGrid g = build_grid(-4, 4, -4, 4, 64, 64);
  const MixedState s0 = product_state(gaussian_packet(GaussianParams{}, g), {1.0, 0.0});
  CHECK_THROWS(sg_numeric_evolve(SternGerlachConfig{1.0, 0.0, 3.0, 1.0}, s0, 0.05, 40));
}

TEST_CASE("general evolver reproduces Stern-Gerlach in the commuting case") {
  const Constants c = kSG.constants();
  const PhaseGrid g = build_grid(-10, 10, -10, 10, 96, 96);
  const GaussianParams gp{};
  Eigen::MatrixXcd sz(2, 2);
  sz << 1, 0, 0, -1;
  const MixedEvolver ev(pow(PhasePolynomial::momentum(c), 2) * 0.5, kSG.b0 * sz, {{PhasePolynomial::position(c) * kSG.b1, sz}}, c);
  CHECK(ev.commuting());
  const double a = std::sqrt(0.5);
  const MixedState s = ev.evolve(product_state(gaussian_packet(gp, g), {a, a}), 0.05, 20);
  const auto v0 = [&](double p, double q) { return a * gp(p, q); };
  CHECK(l2_distance(s, sg_exact_state(kSG, v0, v0, g, 1.0)) < 1e-4);
}

TEST_CASE("Strang splitting converges at second order") {
  const Constants c{1.0, 1.0};
  const PhaseGrid g = build_grid(-10, 10, -10, 10, 96, 96);
  Eigen::MatrixXcd sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  const MixedEvolver ev(pow(PhasePolynomial::momentum(c), 2) * 0.5, 0.8 * sx, {{PhasePolynomial::position(c) * 0.5, sz}}, c);
  CHECK_FALSE(ev.commuting());
  const MixedState s0 = product_state(gaussian_packet(GaussianParams{}, g), {1.0, 0.0});
  const MixedState ref = ev.evolve(s0, 1.0 / 128, 128);
  const double e1 = l2_distance(ev.evolve(s0, 1.0 / 8, 8), ref);
  const double e2 = l2_distance(ev.evolve(s0, 1.0 / 16, 16), ref);
  CHECK(std::log2(e1 / e2) > 1.8);
  CHECK(ref.norm_squared() == doctest::Approx(s0.norm_squared()).epsilon(1e-6));
}

TEST_CASE("Schmidt spectrum") {
  const PhaseGrid g = build_grid(-6, 6, -6, 6, 64, 64);
  const KoopmanState packet = gaussian_packet(GaussianParams{}, g);
  const SchmidtSpectrum product = schmidt_spectrum(product_state(packet, {0.6, Complex(0, 0.8)}));
  CHECK(product.values[0] == doctest::Approx(1.0));
  CHECK(product.values[1] < 1e-12);
  CHECK_FALSE(product.entangled);

  // two orthogonal packets with equal weight: sigma = (1/sqrt2, 1/sqrt2)
  MixedState split{g, {gaussian_packet(GaussianParams{2.5, 0, 0.5, 0.5}, g).amplitudes,
                       gaussian_packet(GaussianParams{-2.5, 0, 0.5, 0.5}, g).amplitudes}};
  const SchmidtSpectrum bell = schmidt_spectrum(split);
  CHECK(bell.values[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK(bell.entangled);

  MixedState zero{g, {Eigen::MatrixXcd::Zero(64, 64), Eigen::MatrixXcd::Zero(64, 64)}};
  CHECK_THROWS(schmidt_spectrum(zero));
}

TEST_CASE("packets and configuration validation") {
  const PhaseGrid g = build_grid(-10, 10, -10, 10, 128, 128);
  CHECK(gaussian_packet(GaussianParams{1.0, -2.0, 0.7, 1.4}, g).norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(packet_contained(GaussianParams{}, g));
  CHECK_FALSE(packet_contained(GaussianParams{7.0, 0.0, 1.0, 1.0}, g));
  CHECK_THROWS(GaussianParams{0, 0, -1, 1}.validate());
  CHECK_THROWS(SternGerlachConfig{0.0, 0, 1, 1}.validate());
  CHECK_THROWS(product_state(gaussian_packet(GaussianParams{}, g), {}));
}
