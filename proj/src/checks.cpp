#include "prequant/checks.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "prequant/dequantization.hpp"
#include "prequant/koopman.hpp"
#include "prequant/mixed.hpp"
#include "prequant/quantization.hpp"

namespace prequant {
namespace {

CheckResult verdict(const std::string& name, double value, double tol, std::string detail = {}) {
  return CheckResult{name, std::isfinite(value) && value <= tol, value, tol, std::move(detail)};
}

std::vector<PhasePolynomial> monomials(int maxdeg) {
  std::vector<PhasePolynomial> out;
  for (int d = 0; d <= maxdeg; ++d) {
    for (int k = 0; k <= d; ++k) out.push_back(PhasePolynomial::monomial(k, d - k));
  }
  return out;
}

std::vector<LadderPolynomial> ladder_words(int maxdeg, Ordering ordering) {
  std::vector<LadderPolynomial> out;
  for (int d = 0; d <= maxdeg; ++d) {
    for (int k = 0; k <= d; ++k) out.push_back(LadderPolynomial::word(k, d - k, ordering));
  }
  return out;
}

// A fixed polynomial with mixed real/imaginary coefficients in every degree.
PhasePolynomial sample_polynomial(int maxdeg, double seed) {
  TermMap t;
  for (int k = 0; k <= maxdeg; ++k) {
    for (int m = 0; k + m <= maxdeg; ++m) t[{k, m}] = Complex(std::sin(seed + 3 * k + m), std::cos(seed * k - m));
  }
  return PhasePolynomial(t);
}

LadderPolynomial sample_ladder(int maxdeg, double seed, Ordering ordering) {
  return LadderPolynomial(sample_polynomial(maxdeg, seed).terms(), ordering);
}

double max_abs(const Eigen::MatrixXcd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Check> make_registry() {
  const Constants c;
  std::vector<Check> r;

  r.push_back({"algebra.antisymmetry", "{f,g} = -{g,f} on monomials of degree <= 4", [c] {
                 double worst = 0.0;
                 for (const auto& f : monomials(4)) {
                   for (const auto& g : monomials(4)) {
                     worst = std::max(worst, distance(poisson_bracket(f, g, c), -poisson_bracket(g, f, c)));
                   }
                 }
                 return verdict("algebra.antisymmetry", worst, 0.0);
               }});
  r.push_back({"algebra.jacobi", "Jacobi identity on monomial triples of degree <= 4", [c] {
                 double worst = 0.0;
                 const auto ms = monomials(4);
                 for (const auto& f : ms) {
                   for (const auto& g : ms) {
                     for (const auto& h : ms) {
                       const PhasePolynomial s = poisson_bracket(f, poisson_bracket(g, h, c), c) +
                                                 poisson_bracket(g, poisson_bracket(h, f, c), c) +
                                                 poisson_bracket(h, poisson_bracket(f, g, c), c);
                       worst = std::max(worst, distance(s, PhasePolynomial()));
                     }
                   }
                 }
                 return verdict("algebra.jacobi", worst, 1e-12);
               }});
  r.push_back({"algebra.leibniz", "{f, g h} = {f,g} h + g {f,h}", [c] {
                 double worst = 0.0;
                 const auto ms = monomials(3);
                 for (const auto& f : ms) {
                   for (const auto& g : ms) {
                     for (const auto& h : ms) {
                       worst = std::max(worst, distance(poisson_bracket(f, g * h, c),
                                                        poisson_bracket(f, g, c) * h + g * poisson_bracket(f, h, c)));
                     }
                   }
                 }
                 return verdict("algebra.leibniz", worst, 1e-12);
               }});
  r.push_back({"algebra.heat_inverse", "forward heat flow undoes the backward flow", [] {
                 double worst = 0.0;
                 for (int s = 0; s < 5; ++s) {
                   const PhasePolynomial f = sample_polynomial(8, 0.7 * s);
                   worst = std::max(worst, distance(heat_flow(heat_flow(f, HeatDirection::backward), HeatDirection::forward), f));
                 }
                 return verdict("algebra.heat_inverse", worst, 1e-10);
               }});
  r.push_back({"algebra.reorder_involution", "normal -> antinormal -> normal is the identity", [] {
                 double worst = 0.0;
                 for (const auto& L : ladder_words(6, Ordering::antinormal)) {
                   const LadderPolynomial back = reorder(reorder(L, Ordering::normal), Ordering::antinormal);
                   worst = std::max(worst, distance(back, L));
                 }
                 return verdict("algebra.reorder_involution", worst, 1e-10);
               }});
  r.push_back({"algebra.reorder_realize", "reordering preserves the realized matrix on the leading block", [] {
                 double worst = 0.0;
                 for (const auto& L : ladder_words(6, Ordering::antinormal)) {
                   const int N = L.degree() + 4;
                   worst = std::max(worst, leading_block_distance(realize(L, N), realize(reorder(L, Ordering::normal), N),
                                                                  L.degree()));
                 }
                 return verdict("algebra.reorder_realize", worst, 1e-9);
               }});

  r.push_back({"phasespace.roundtrip", "coordinate round trips for |z| in [1e-6, 1e3]", [c] {
                 double worst = 0.0;
                 for (double rad : {1e-6, 1e-3, 0.5, 1.0, 30.0, 1e3}) {
                   for (double th : {0.1, 1.7, 3.0, 4.4, 6.2}) {
                     const PhasePoint zp{rad * std::cos(th), rad * std::sin(th)};
                     for (CoordSystem to : {CoordSystem::pq, CoordSystem::action_angle}) {
                       const PhasePoint back = convert_coords(convert_coords(zp, CoordSystem::complex, to, c), to,
                                                              CoordSystem::complex, c);
                       worst = std::max(worst, std::hypot(back.first - zp.first, back.second - zp.second) / rad);
                     }
                   }
                 }
                 return verdict("phasespace.roundtrip", worst, 1e-12);
               }});
  r.push_back({"phasespace.quadrature_exactness", "projected monomials match closed-form elements", [c] {
                 const QuadratureScheme quad = build_quadrature(32, 64, c);
                 const PolarizationBasis basis(12, c);
                 double worst = 0.0;
                 for (const auto& f : monomials(6)) {
                   const FockMatrix num = toeplitz_quantize_numeric(f, basis, quad);
                   worst = std::max(worst, max_abs(num - projected_section(toeplitz_quantize(f), 12)));
                 }
                 return verdict("phasespace.quadrature_exactness", worst, 1e-11);
               }});

  r.push_back({"polarization.orthonormality", "Gram matrix of eta_0..eta_24 is the identity", [c] {
                 const QuadratureScheme quad = build_quadrature(32, 64, c);
                 const FockMatrix G = gram_matrix(quad, 24, c);
                 return verdict("polarization.orthonormality", max_abs(G - FockMatrix::Identity(25, 25)), 1e-12);
               }});
  r.push_back({"polarization.completeness", "resolution of identity at N = 12", [c] {
                 return verdict("polarization.completeness", completeness_residual(build_quadrature(32, 64, c), 12, c),
                                1e-10);
               }});
  r.push_back({"polarization.husimi_isometry", "int |xi|^2 = <psi|psi>", [c] {
                 const QuadratureScheme quad = build_quadrature(32, 64, c);
                 FockVector psi(13);
                 for (int n = 0; n <= 12; ++n) psi(n) = Complex(std::cos(1.3 * n), std::sin(0.4 * n * n));
                 return verdict("polarization.husimi_isometry",
                                std::abs(husimi_norm_squared(psi, quad, c) - psi.squaredNorm()) / psi.squaredNorm(), 1e-10);
               }});
  r.push_back({"polarization.reproducing", "sum_i w_i zeta_i <zeta_i|psi> reconstructs psi", [c] {
                 const QuadratureScheme quad = build_quadrature(32, 64, c);
                 const int N = 12;
                 FockVector psi(N + 1);
                 for (int n = 0; n <= N; ++n) psi(n) = Complex(1.0 / (1 + n), 0.3 * n);
                 FockVector back = FockVector::Zero(N + 1);
                 for (std::size_t i = 0; i < quad.size(); ++i) {
                   const FockVector zeta = evaluation_state(quad.z(i), N, c).coefficients;
                   back += quad.measure_weight(i) * zeta * zeta.dot(psi);
                 }
                 return verdict("polarization.reproducing", (back - psi).cwiseAbs().maxCoeff(), 1e-10);
               }});
  r.push_back({"polarization.annihilation_symbol", "normalized <zeta|a|zeta> = z0", [c] {
                 double worst = 0.0;
                 const FockMatrix A = annihilation_matrix(40);
                 for (Complex z0 : {Complex(0.5, 0.0), Complex(-0.3, 0.8), Complex(1.2, -0.7)}) {
                   worst = std::max(worst, std::abs(q_symbol_numeric(A, z0, c) - z0));
                 }
                 return verdict("polarization.annihilation_symbol", worst, 1e-8);
               }});

  r.push_back({"fock.commutator", "[a, a+] = 1 on the leading block", [] {
                 const int N = 20;
                 const FockMatrix A = annihilation_matrix(N), Ad = A.adjoint();
                 const FockMatrix comm = A * Ad - Ad * A;
                 return verdict("fock.commutator",
                                leading_block_distance(comm, FockMatrix::Identity(N + 1, N + 1), 1), 1e-13);
               }});
  r.push_back({"fock.number_spectrum", "spectrum of a+a is {0, ..., N}", [] {
                 const int N = 20;
                 const FockMatrix M = realize(LadderPolynomial::word(1, 1, Ordering::normal), N);
                 Eigen::SelfAdjointEigenSolver<FockMatrix> es(M);
                 double worst = 0.0;
                 for (int n = 0; n <= N; ++n) worst = std::max(worst, std::abs(es.eigenvalues()(n) - n));
                 return verdict("fock.number_spectrum", worst, 1e-12);
               }});
  r.push_back({"fock.morphism", "realize(L1 L2) = realize(L1) realize(L2) on the leading block", [] {
                 double worst = 0.0;
                 const int N = 16;
                 for (int s = 0; s < 4; ++s) {
                   const LadderPolynomial L1 = sample_ladder(3, s, Ordering::normal);
                   const LadderPolynomial L2 = sample_ladder(3, s + 0.5, Ordering::antinormal);
                   worst = std::max(worst, leading_block_distance(realize(ladder_multiply(L1, L2), N),
                                                                  realize(L1, N) * realize(L2, N), 6) /
                                               std::max(1.0, max_abs(realize(ladder_multiply(L1, L2), N))));
                 }
                 return verdict("fock.morphism", worst, 1e-12);
               }});
  r.push_back({"fock.hermitian", "self-adjoint polynomials realize to Hermitian matrices", [] {
                 double worst = 0.0;
                 for (int s = 0; s < 4; ++s) {
                   const LadderPolynomial L = sample_ladder(4, s, Ordering::antinormal);
                   const LadderPolynomial H = L + L.adjoint();
                   const FockMatrix M = realize(H, 12);
                   worst = std::max(worst, leading_block_distance(M, FockMatrix(M.adjoint()), 4));
                 }
                 return verdict("fock.hermitian", worst, 1e-13);
               }});

  r.push_back({"quantization.route_equality", "Gquant closed form = Tuynman route = numeric projection", [c] {
                 const int N = 16;
                 const QuadratureScheme quad = build_quadrature(32, 64, c);
                 const PolarizationBasis basis(N, c);
                 double symbolic = 0.0, numeric = 0.0;
                 for (const auto& f : monomials(6)) {
                   const LadderPolynomial direct = quantize_generator(f);
                   symbolic = std::max(symbolic, distance(direct, quantize_generator_tuynman(f)));
                   numeric = std::max(numeric, leading_block_distance(quantize_generator_numeric(f, basis, quad),
                                                                      realize(direct, N), f.degree()));
                 }
                 return verdict("quantization.route_equality", std::max(symbolic, numeric), 1e-10,
                                "symbolic " + std::to_string(symbolic));
               }});
  r.push_back({"quantization.hermiticity", "real observables quantize to Hermitian matrices", [c] {
                 const int N = 14;
                 const QuadratureScheme quad = build_quadrature(32, 64, c);
                 const PolarizationBasis basis(N, c);
                 double worst = 0.0;
                 for (int s = 0; s < 3; ++s) {
                   const PhasePolynomial g = sample_polynomial(4, s);
                   const PhasePolynomial f = g + g.conj();
                   const FockMatrix T = realize(toeplitz_quantize(f), N);
                   const FockMatrix G = realize(quantize_generator(f), N);
                   const FockMatrix Gn = quantize_generator_numeric(f, basis, quad);
                   const double scale = std::max({1.0, max_abs(T), max_abs(Gn)});
                   worst = std::max({worst, leading_block_distance(T, FockMatrix(T.adjoint()), 4) / scale,
                                     leading_block_distance(G, FockMatrix(G.adjoint()), 4) / scale,
                                     max_abs(Gn - Gn.adjoint()) / scale});
                 }
                 return verdict("quantization.hermiticity", worst, 1e-12);
               }});
  r.push_back({"quantization.positivity", "f >= 0 projects to a positive semidefinite matrix", [c] {
                 const QuadratureScheme quad = build_quadrature(32, 64, c);
                 const PolarizationBasis basis(12, c);
                 const PhaseFunction f = [](Complex z) { return Complex(std::norm(z - Complex(0.5, -0.2)) * std::norm(z)); };
                 Eigen::SelfAdjointEigenSolver<FockMatrix> es(toeplitz_quantize_numeric(f, basis, quad));
                 return verdict("quantization.positivity", std::max(0.0, -es.eigenvalues().minCoeff()), 1e-10);
               }});
  r.push_back({"quantization.linearity", "quantization is linear", [] {
                 const PhasePolynomial f = sample_polynomial(5, 1.0), g = sample_polynomial(5, 2.0);
                 const Complex a(0.3, -1.1);
                 const double t = distance(toeplitz_quantize(f + g * a), toeplitz_quantize(f) + toeplitz_quantize(g) * a);
                 const double q = distance(quantize_generator(f + g * a), quantize_generator(f) + quantize_generator(g) * a);
                 return verdict("quantization.linearity", std::max(t, q), 1e-12);
               }});

  r.push_back({"dequantization.roundtrips", "quantize/dequantize identities up to degree 6", [] {
                 double worst = 0.0;
                 for (int s = 0; s < 4; ++s) {
                   const PhasePolynomial f = sample_polynomial(6, 0.9 * s);
                   const LadderPolynomial L = sample_ladder(6, 1.3 * s, Ordering::normal);
                   worst = std::max({worst, distance(p_symbol(toeplitz_quantize(f)), f),
                                     distance(dequantize_hamiltonian(quantize_generator(f)), f),
                                     distance(toeplitz_quantize(p_symbol(L)), L),
                                     distance(quantize_generator(dequantize_hamiltonian(L)), L)});
                 }
                 return verdict("dequantization.roundtrips", worst, 1e-9);
               }});
  r.push_back({"dequantization.heat_kernel", "P-symbol = exp(-D) Q-symbol up to degree 8", [] {
                 double worst = 0.0;
                 for (int s = 0; s < 4; ++s) {
                   const LadderPolynomial L = sample_ladder(8, 0.4 * s, s % 2 ? Ordering::normal : Ordering::antinormal);
                   worst = std::max(worst, distance(p_symbol(L), heat_flow(q_symbol(L), HeatDirection::backward)));
                 }
                 return verdict("dequantization.heat_kernel", worst, 1e-8);
               }});
  r.push_back({"dequantization.lower_bound", "Q-symbol minimum >= smallest eigenvalue", [c] {
                 const PhasePolynomial q = PhasePolynomial::position(c), p = PhasePolynomial::momentum(c);
                 const PhasePolynomial f = p * p + q * q * q * q - q * q * 2.0;
                 const LadderPolynomial L = toeplitz_quantize(f);
                 const int N = L.degree() + 16;
                 Eigen::SelfAdjointEigenSolver<FockMatrix> es(projected_section(L, N));
                 const PhasePolynomial S = q_symbol(L);
                 const QuadratureScheme quad = build_quadrature(20, 40, c);
                 double lowest = 1e300;
                 for (std::size_t i = 0; i < quad.size(); ++i) lowest = std::min(lowest, S(quad.z(i)).real());
                 return verdict("dequantization.lower_bound", std::max(0.0, es.eigenvalues().minCoeff() - lowest - 1e-8), 0.0);
               }});

  r.push_back({"koopman.lie_morphism", "G_{f,g} = i[G_f, G_g] for monomials of degree <= 4", [c] {
                 double worst = 0.0;
                 const auto ms = monomials(4);
                 for (const auto& f : ms) {
                   for (const auto& g : ms) {
                     const PrequantumGenerator lhs = build_generator(poisson_bracket(f, g, c), c);
                     const PrequantumGenerator rhs = lie_bracket(build_generator(f, c), build_generator(g, c));
                     worst = std::max(worst, distance(lhs, rhs));
                   }
                 }
                 return verdict("koopman.lie_morphism", worst, 1e-12);
               }});
  r.push_back({"koopman.parts_commute", "M_H and X_H of the same H commute", [c] {
                 double worst = 0.0;
                 for (int s = 0; s < 4; ++s) {
                   const PhasePolynomial g = sample_polynomial(4, s);
                   const PrequantumGenerator G = build_generator(g + g.conj(), c);
                   const PhasePolynomial xm = G.coeff_dz * d_dz(G.source) + G.coeff_dzstar * d_dzbar(G.source);
                   worst = std::max(worst, distance(xm, PhasePolynomial()));
                 }
                 return verdict("koopman.parts_commute", worst, 1e-12);
               }});
  r.push_back({"koopman.unitarity", "quadratic propagation preserves the norm", [c] {
                 const PhaseGrid g = build_grid(-10, 10, -10, 10, 128, 128);
                 const GaussianParams gp{0.5, -0.5, 1.0, 1.0};
                 const KoopmanState s0 = gaussian_packet(gp, g);
                 const PhasePolynomial H = PhasePolynomial::monomial(1, 1) + PhasePolynomial::position(c) * 0.3;
                 const KoopmanState s = propagate_quadratic(H, s0, 1.0, c);
                 return verdict("koopman.unitarity", std::abs(s.norm_squared() - s0.norm_squared()), 1e-6);
               }});
  r.push_back({"koopman.liouville", "|xi(t)|^2 equals the phase-free transported density", [c] {
                 const PhaseGrid g = build_grid(-10, 10, -10, 10, 128, 128);
                 const KoopmanState s0 = gaussian_packet(GaussianParams{1.0, 0.0, 1.0, 0.8}, g);
                 const PhasePolynomial H = PhasePolynomial::monomial(1, 1) + PhasePolynomial::momentum(c) * 0.7;
                 PropagationOptions off;
                 off.phase_free = true;
                 const KoopmanState a = propagate_quadratic(H, s0, 1.3, c);
                 const KoopmanState b = propagate_quadratic(H, s0, 1.3, c, off);
                 return verdict("koopman.liouville", (a.amplitudes.cwiseAbs2() - b.amplitudes.cwiseAbs2()).cwiseAbs().maxCoeff(),
                                1e-8);
               }});
  r.push_back({"koopman.polarization_invariance", "harmonic flow maps eta_n to exp(-i n w t) eta_n", [c] {
                 const PhaseGrid g = build_grid(-10, 10, -10, 10, 256, 256);
                 const double t = 0.7;
                 double worst = 0.0;
                 for (int n = 0; n <= 3; ++n) {
                   const KoopmanState s0 = sample_state(g, [&](double p, double q) { return eval_eta(n, z_from_pq(p, q, c), c); });
                   const KoopmanState s = propagate_quadratic(PhasePolynomial::monomial(1, 1, c.hbar), s0, t, c);
                   worst = std::max(worst, std::sqrt(g.norm_squared(s.amplitudes - s0.amplitudes * std::polar(1.0, -n * t))));
                 }
                 return verdict("koopman.polarization_invariance", worst, 1e-6);
               }});

  // Shared Stern-Gerlach setup for the mixed checks.
  struct SG {
    SternGerlachConfig cfg{1.0, 0.5, 1.0, 1.0};
    GaussianParams gp{};
    PhaseGrid grid = build_grid(-10, 10, -10, 10, 128, 128);
  };
  r.push_back({"mixed.exact_vs_numeric", "semi-Lagrangian solution matches the closed form", [] {
                 const SG sg;
                 const Complex a(std::sqrt(0.5)), b(0.0, std::sqrt(0.5));
                 const MixedState s0 = product_state(gaussian_packet(sg.gp, sg.grid), {a, b});
                 const MixedState s = sg_numeric_evolve(sg.cfg, s0, 1.0 / 128, 128);
                 const MixedState e = sg_exact_state(
                     sg.cfg, [&](double p, double q) { return a * sg.gp(p, q); },
                     [&](double p, double q) { return b * sg.gp(p, q); }, sg.grid, 1.0);
                 double err = 0.0;
                 for (int k = 0; k < 2; ++k) err += sg.grid.norm_squared(s.components[k] - e.components[k]);
                 return verdict("mixed.exact_vs_numeric", std::sqrt(err), 1e-3);
               }});
  r.push_back({"mixed.norm", "norm drift of the numeric solver", [] {
                 const SG sg;
                 const MixedState s0 = product_state(gaussian_packet(sg.gp, sg.grid), {std::sqrt(0.5), std::sqrt(0.5)});
                 const MixedState s = sg_numeric_evolve(sg.cfg, s0, 1.0 / 128, 128);
                 return verdict("mixed.norm", std::abs(s.norm_squared() - s0.norm_squared()), 1e-6);
               }});
  r.push_back({"mixed.populations", "spin populations are conserved", [] {
                 const SG sg;
                 const double up = 0.8, down = 0.6;
                 const MixedState s0 = product_state(gaussian_packet(sg.gp, sg.grid), {up, down});
                 const MixedState e = sg_exact_state(
                     sg.cfg, [&](double p, double q) { return up * sg.gp(p, q); },
                     [&](double p, double q) { return down * sg.gp(p, q); }, sg.grid, 1.0);
                 const MixedState s = sg_numeric_evolve(sg.cfg, s0, 1.0 / 128, 128);
                 const auto p0 = s0.populations(), pe = e.populations(), ps = s.populations();
                 const double exact = std::max(std::abs(pe[0] - p0[0]), std::abs(pe[1] - p0[1]));
                 const double numeric = std::max(std::abs(ps[0] - p0[0]), std::abs(ps[1] - p0[1]));
                 return verdict("mixed.populations", std::max(exact / 1e-10, numeric / 1e-6), 1.0,
                                "exact " + std::to_string(exact) + ", numeric " + std::to_string(numeric));
               }});
  r.push_back({"mixed.entanglement_monotone", "sigma_2 grows until the packets separate, then saturates", [] {
                 const SG sg;
                 const double a = std::sqrt(0.5);
                 double prev = -1.0, decrease = 0.0, last = 0.0;
                 for (int k = 0; k <= 12; ++k) {
                   const MixedState e = sg_exact_state(
                       sg.cfg, [&](double p, double q) { return a * sg.gp(p, q); },
                       [&](double p, double q) { return a * sg.gp(p, q); }, sg.grid, 0.25 * k);
                   last = schmidt_spectrum(e).values[1];
                   decrease = std::max(decrease, prev - last);
                   prev = last;
                 }
                 return verdict("mixed.entanglement_monotone", std::max(decrease, std::abs(last - std::sqrt(0.5))), 1e-6);
               }});
  r.push_back({"mixed.case_iv_weights", "separated packets carry weights |s+|^2 and |s-|^2", [] {
                 const SG sg;
                 const Complex sp(0.6, 0.0), sm(0.0, 0.8);
                 const PhaseGrid wide = build_grid(-14, 14, -14, 14, 160, 160);
                 const MixedState e = sg_exact_state(
                     sg.cfg, [&](double p, double q) { return sp * sg.gp(p, q); },
                     [&](double p, double q) { return sm * sg.gp(p, q); }, wide, 1.5);
                 const auto pops = e.populations();
                 return verdict("mixed.case_iv_weights", std::max(std::abs(pops[0] - 0.36), std::abs(pops[1] - 0.64)), 1e-10);
               }});
  return r;
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = make_registry();
  return registry;
}

std::vector<CheckResult> run_checks(std::string_view filter) {
  std::vector<CheckResult> out;
  for (const Check& check : check_registry()) {
    if (!filter.empty() && check.name.find(filter) == std::string::npos) continue;
    try {
      out.push_back(check.run());
    } catch (const std::exception& e) {
      out.push_back(CheckResult{check.name, false, std::numeric_limits<double>::infinity(), 0.0, e.what()});
    }
  }
  return out;
}

}  // namespace prequant
