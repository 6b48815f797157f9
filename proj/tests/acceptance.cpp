// Acceptance run: one PASS/FAIL line per criterion.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "prequant/dequantization.hpp"
#include "prequant/koopman.hpp"
#include "prequant/mixed.hpp"
#include "prequant/polarization.hpp"
#include "prequant/quantization.hpp"

using namespace prequant;

namespace {

struct Outcome {
  bool passed;
  std::string summary;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Outcome within(double value, double tol, const std::string& what) {
  return {value <= tol, what + " " + sci(value) + " (tol " + sci(tol) + ")"};
}

std::vector<PhasePolynomial> monomials(int maxdeg) {
  std::vector<PhasePolynomial> out;
  for (int d = 0; d <= maxdeg; ++d) {
    for (int k = 0; k <= d; ++k) out.push_back(PhasePolynomial::monomial(k, d - k));
  }
  return out;
}

double max_abs(const Eigen::MatrixXcd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

double block_error(const FockMatrix& A, const FockMatrix& B, int n) {
  return max_abs(A.topLeftCorner(n, n) - B.topLeftCorner(n, n));
}

// Position and momentum matrices assembled from the ladder entries sqrt(n).
FockMatrix position_matrix(int N, const Constants& c) {
  FockMatrix X = FockMatrix::Zero(N + 1, N + 1);
  const double s = std::sqrt(c.hbar / (2.0 * c.beta0));
  for (int n = 1; n <= N; ++n) X(n - 1, n) = X(n, n - 1) = s * std::sqrt(double(n));
  return X;
}

FockMatrix momentum_matrix(int N, const Constants& c) {
  FockMatrix P = FockMatrix::Zero(N + 1, N + 1);
  const double s = std::sqrt(c.hbar * c.beta0 / 2.0);
  for (int n = 1; n <= N; ++n) {
    P(n - 1, n) = Complex(0.0, -s * std::sqrt(double(n)));
    P(n, n - 1) = Complex(0.0, s * std::sqrt(double(n)));
  }
  return P;
}

Outcome toeplitz_elements() {
  const Constants c{1.0, 1.0};
  const int N = 16;
  const FockMatrix T = toeplitz_quantize_numeric(PhasePolynomial::z(), PolarizationBasis(N, c), build_quadrature(32, 64, c));
  FockMatrix expected = FockMatrix::Zero(N + 1, N + 1);
  for (int n = 1; n <= N; ++n) expected(n - 1, n) = std::sqrt(double(n));
  return within(max_abs(T - expected), 1e-12, "max entry error");
}

Outcome table_rows() {
  const Constants c{0.7, 1.3};
  const int N = 16, n = N - 1;
  const QuadratureScheme quad = build_quadrature(32, 64, c);
  const PolarizationBasis basis(N, c);
  const FockMatrix I = FockMatrix::Identity(N + 1, N + 1);
  const FockMatrix X = position_matrix(N, c), P = momentum_matrix(N, c);
  const FockMatrix X2 = X * X, P2 = P * P;
  const double sx = c.hbar / (2.0 * c.beta0), sp = c.hbar * c.beta0 / 2.0;
  const PhasePolynomial q = PhasePolynomial::position(c), p = PhasePolynomial::momentum(c);
  struct Row {
    PhasePolynomial f;
    FockMatrix observable, generator;
  };
  const std::vector<Row> rows = {{q * q, X2 + sx * I, X2 - sx * I},
                                 {p * p, P2 + sp * I, P2 - sp * I},
                                 {PhasePolynomial::constant(1.0), I, I}};
  double worst = 0.0;
  for (const Row& r : rows) {
    worst = std::max({worst, block_error(realize(toeplitz_quantize(r.f), N), r.observable, n),
                      block_error(toeplitz_quantize_numeric(r.f, basis, quad), r.observable, n),
                      block_error(realize(quantize_generator(r.f), N), r.generator, n),
                      block_error(quantize_generator_numeric(r.f, basis, quad), r.generator, n)});
  }
  return within(worst, 1e-12, "max leading-block error");
}

Outcome oscillator_spectrum() {
  const Constants c{0.8, 1.0};
  const double omega = 1.7, quantum = c.hbar * omega;
  const int N = 20;
  const PhasePolynomial H = PhasePolynomial::monomial(1, 1, quantum);
  Eigen::SelfAdjointEigenSolver<FockMatrix> g(projected_section(quantize_generator(H), N), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<FockMatrix> t(projected_section(toeplitz_quantize(H), N), Eigen::EigenvaluesOnly);
  double worst = 0.0;
  for (int k = 0; k <= N; ++k) {
    worst = std::max({worst, std::abs(g.eigenvalues()(k) - k * quantum), std::abs(t.eigenvalues()(k) - (k + 1) * quantum)});
  }
  return within(worst, 1e-12, "max eigenvalue error");
}

Outcome tuynman_routes() {
  const Constants c{1.0, 1.0};
  const int N = 16;
  const QuadratureScheme quad = build_quadrature(32, 64, c);
  const PolarizationBasis basis(N, c);
  double symbolic = 0.0, numeric = 0.0;
  for (const PhasePolynomial& f : monomials(6)) {
    const LadderPolynomial direct = quantize_generator(f);
    symbolic = std::max(symbolic, distance(direct, quantize_generator_tuynman(f)));
    const int n = N + 1 - f.degree();
    numeric = std::max(numeric, block_error(quantize_generator_numeric(f, basis, quad), realize(direct, N), n));
  }
  Outcome o = within(std::max(symbolic, numeric), 1e-10, "max deviation");
  o.passed = o.passed && symbolic <= 1e-12;
  o.summary += ", symbolic " + sci(symbolic);
  return o;
}

Outcome coherent_equals_toeplitz() {
  const Constants c{1.0, 1.0};
  const int N = 12;
  const QuadratureScheme quad = build_quadrature(32, 64, c);
  const PolarizationBasis basis(N, c);
  double worst = 0.0;
  for (const PhasePolynomial& f : monomials(6)) {
    const PhaseFunction fn = [&](Complex z) { return f(z); };
    worst = std::max(worst, max_abs(coherent_state_quantize_numeric(fn, basis, quad) - toeplitz_quantize_numeric(fn, basis, quad)));
  }
  return within(worst, 1e-11, "max entry difference");
}

Outcome completeness() {
  const Constants c{1.0, 1.0};
  return within(completeness_residual(build_quadrature(16, 32, c), 12, c), 1e-10, "residual norm");
}

Outcome lie_morphism() {
  const Constants c{0.9, 1.2};
  double worst = 0.0;
  const auto ms = monomials(4);
  for (const auto& f : ms) {
    for (const auto& g : ms) {
      worst = std::max(worst, distance(build_generator(poisson_bracket(f, g, c), c),
                                       lie_bracket(build_generator(f, c), build_generator(g, c))));
    }
  }
  return within(worst, 1e-12, "max coefficient difference");
}

Outcome eigenflow() {
  const Constants c{1.0, 1.0};
  const double omega = 1.0, t = 2.0 * kPi / omega / 3.0;
  const PhaseGrid g = build_grid(-10, 10, -10, 10, 256, 256);
  const PhasePolynomial H = PhasePolynomial::monomial(1, 1, c.hbar * omega);
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const KoopmanState s0 = sample_state(g, [&](double p, double q) { return eval_eta(n, z_from_pq(p, q, c), c); });
    const KoopmanState s = propagate_quadratic(H, s0, t, c);
    worst = std::max(worst, std::sqrt(g.norm_squared(s.amplitudes - s0.amplitudes * std::polar(1.0, -n * omega * t))));
  }
  return within(worst, 1e-6, "max L2 error over n = 0..5");
}

struct SgRun {
  double error, drift;
};

SgRun stern_gerlach_run(int n) {
  const SternGerlachConfig cfg{1.0, 0.5, 1.0, 1.0};
  const GaussianParams gp{};
  const PhaseGrid grid = build_grid(-10, 10, -10, 10, n, n);
  const double a = std::sqrt(0.5);
  const MixedState s0 = product_state(gaussian_packet(gp, grid), {a, a});
  const MixedState s = sg_numeric_evolve(cfg, s0, 1.0 / n, n);
  const auto v0 = [&](double p, double q) { return a * gp(p, q); };
  const MixedState e = sg_exact_state(cfg, v0, v0, grid, 1.0);
  double err = 0.0;
  for (int k = 0; k < 2; ++k) err += grid.norm_squared(s.components[k] - e.components[k]);
  return {std::sqrt(err), std::abs(s.norm_squared() - s0.norm_squared())};
}

Outcome stern_gerlach() {
  const SgRun r64 = stern_gerlach_run(64), r128 = stern_gerlach_run(128), r256 = stern_gerlach_run(256);
  const double order = std::min(std::log2(r64.error / r128.error), std::log2(r128.error / r256.error));
  const bool ok = r256.error <= 1e-3 && r256.drift <= 1e-6 && order >= 3.0;
  return {ok, "L2 error " + sci(r256.error) + " (tol 1e-3), drift " + sci(r256.drift) + " (tol 1e-6), order " +
                  std::to_string(order) + " (min 3)"};
}

Outcome entanglement() {
  const SternGerlachConfig cfg{1.0, 0.5, 1.0, 1.0};
  const GaussianParams gp{};
  const PhaseGrid grid = build_grid(-10, 10, -10, 10, 128, 128);
  const double a = std::sqrt(0.5), target = std::sqrt(0.5);
  MixedState pure = product_state(gaussian_packet(gp, grid), {1.0, 0.0});
  MixedState mixed = product_state(gaussian_packet(gp, grid), {a, a});
  double pure_worst = schmidt_spectrum(pure).values[1];
  double peak = 0.0, late = 0.0;
  const int chunk = 32;  // t advances by 0.25 per chunk, up to t = 2
  for (int k = 1; k <= 8; ++k) {
    pure = sg_numeric_evolve(cfg, pure, 1.0 / 128, chunk);
    mixed = sg_numeric_evolve(cfg, mixed, 1.0 / 128, chunk);
    pure_worst = std::max(pure_worst, schmidt_spectrum(pure).values[1]);
    const double s2 = schmidt_spectrum(mixed).values[1];
    peak = std::max(peak, s2);
    if (mixed.time >= 1.5 - 1e-12) late = std::max(late, std::abs(s2 - target) / target);
  }
  const bool ok = pure_worst <= 1e-8 && peak >= 0.1 && late <= 0.05;
  return {ok, "case (i) sigma2 " + sci(pure_worst) + " (tol 1e-8), case (iii) peak " + std::to_string(peak) +
                  " (min 0.1), separated deviation from 1/sqrt2 " + std::to_string(100 * late) + "% (tol 5%)"};
}

Outcome dequantization_roundtrips() {
  const Constants c{1.0, 1.0};
  double worst = 0.0;
  for (const PhasePolynomial& f : monomials(6)) {
    const LadderPolynomial L(f.terms(), Ordering::normal), A(f.terms(), Ordering::antinormal);
    worst = std::max({worst, distance(p_symbol(toeplitz_quantize(f)), f),
                      distance(dequantize_hamiltonian(quantize_generator(f)), f),
                      distance(toeplitz_quantize(p_symbol(L)), L), distance(toeplitz_quantize(p_symbol(A)), A),
                      distance(quantize_generator(dequantize_hamiltonian(L)), L),
                      distance(p_symbol(L), heat_flow(q_symbol(L), HeatDirection::backward)),
                      distance(p_symbol(A), heat_flow(q_symbol(A), HeatDirection::backward))});
  }
  const double omega = 1.3;
  const LadderPolynomial number = LadderPolynomial::word(1, 1, Ordering::normal, c.hbar * omega);
  const double oscillator = distance(dequantize_hamiltonian(number), PhasePolynomial::monomial(1, 1, c.hbar * omega));
  return within(std::max(worst, oscillator), 1e-12, "max coefficient difference");
}

Outcome liouville() {
  const Constants c{1.0, 1.0};
  const PhaseGrid g = build_grid(-10, 10, -10, 10, 256, 256);
  const PhasePolynomial q = PhasePolynomial::position(c), p = PhasePolynomial::momentum(c);
  const PhasePolynomial H = p * p * 0.5 + q * q * 0.5 + p * 0.3 - q * 0.2 + q * p * 0.1;
  const KoopmanState s0 = gaussian_packet(GaussianParams{1.0, -0.5, 1.0, 0.8}, g);
  const double t = 1.3;
  const KoopmanState phased = propagate_quadratic(H, s0, t, c);
  PropagationOptions free;
  free.phase_free = true;
  const KoopmanState transported = propagate_quadratic(H, s0, t, c, free);
  const double worst = max_abs((phased.amplitudes.cwiseAbs2() - transported.amplitudes.cwiseAbs2()).cast<Complex>());
  // Closed-form density: the initial Gaussian pulled back along the inverse flow.
  const AffineFlow back(quadratic_form(H, c), -t);
  const GaussianParams gp{1.0, -0.5, 1.0, 0.8};
  double analytic = 0.0;
  for (int j = 0; j < g.n_q; ++j) {
    for (int i = 0; i < g.n_p; ++i) {
      const auto [p0, q0] = back(g.p(i), g.q(j));
      analytic = std::max(analytic, std::abs(std::norm(phased.amplitudes(i, j)) - std::norm(gp(p0, q0))));
    }
  }
  Outcome o = within(worst, 1e-8, "max pointwise density difference");
  o.passed = o.passed && analytic <= 1e-8;
  o.summary += ", vs closed form " + sci(analytic);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"toeplitz matrix elements of z", toeplitz_elements},
      {"quantized q^2, p^2, 1", table_rows},
      {"harmonic oscillator spectra", oscillator_spectrum},
      {"generator routes agree", tuynman_routes},
      {"coherent-state quantization equals Toeplitz", coherent_equals_toeplitz},
      {"resolution of identity", completeness},
      {"prequantum Lie morphism", lie_morphism},
      {"harmonic eigenflow of eta_n", eigenflow},
      {"Stern-Gerlach exact vs semi-Lagrangian", stern_gerlach},
      {"classical-quantum entanglement", entanglement},
      {"dequantization round trips", dequantization_roundtrips},
      {"Liouville density consistency", liouville},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu  %-44s %s  [%.1fs]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.summary.c_str(), secs);
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
