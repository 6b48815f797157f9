#pragma once

// Prequantum (Koopman-Schroedinger) dynamics on the phase plane: symbolic
// generators, their grid action, exact propagation for quadratic
// Hamiltonians and the Koopman-Heisenberg picture.

#include <Eigen/Dense>
#include <functional>

#include "prequant/algebra.hpp"
#include "prequant/phasespace.hpp"
#include "prequant/spline.hpp"

namespace prequant {

/// G = multiplier + coeff_dz d/dz + coeff_dzstar d/dz*.
struct PrequantumGenerator {
  PhasePolynomial multiplier;
  PhasePolynomial coeff_dz;
  PhasePolynomial coeff_dzstar;
  PhasePolynomial source;
  Constants constants;

  bool has_zero_field() const { return coeff_dz.is_zero() && coeff_dzstar.is_zero(); }
};

/// G_f = (f + Lambda_f)/hbar - i X_f.
PrequantumGenerator build_generator(const PhasePolynomial& f, const Constants& c);

/// The vector-field part as coefficients of d/dp and d/dq.
struct PqField {
  PhasePolynomial d_p;
  PhasePolynomial d_q;
};
PqField field_pq(const PrequantumGenerator& G);

/// i [G1, G2] in the same normal form. `source` is left empty.
PrequantumGenerator lie_bracket(const PrequantumGenerator& G1, const PrequantumGenerator& G2);

/// Largest coefficient distance over multiplier and field parts.
double distance(const PrequantumGenerator& a, const PrequantumGenerator& b);

/// Multiplication by the generating function commutes with its own field:
/// X_f(f) == 0.
bool hamiltonian_part_commutes(const PrequantumGenerator& G, double tol = 1e-12);
/// Whether X_f(Lambda_f) vanishes; true for homogeneous quadratic f, false in
/// general.
bool gauge_part_commutes(const PrequantumGenerator& G, double tol = 1e-12);

/// Classical wavefunction xi sampled at (p_i, q_j).
struct KoopmanState {
  PhaseGrid grid;
  Eigen::MatrixXcd amplitudes;
  double time = 0.0;

  double norm_squared() const { return grid.norm_squared(amplitudes); }
};

KoopmanState sample_state(const PhaseGrid& grid, const std::function<Complex(double p, double q)>& f,
                          double time = 0.0);

/// G xi with fourth-order central differences (one-sided near the edges).
/// Needs at least 5 samples per axis.
KoopmanState apply_generator(const PrequantumGenerator& G, const KoopmanState& s);

/// H = a p^2 + b p q + c q^2 + d p + e q + f0, extracted from a real
/// polynomial of degree <= 2.
struct QuadraticForm {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f0 = 0;
  double operator()(double p, double q) const { return a * p * p + b * p * q + c * q * q + d * p + e * q + f0; }
};
QuadraticForm quadratic_form(const PhasePolynomial& H, const Constants& c);

/// Exact affine Hamiltonian flow of a quadratic H acting on (p, q, 1).
class AffineFlow {
 public:
  AffineFlow(const QuadraticForm& H, double t);
  std::pair<double, double> operator()(double p, double q) const;
  const Eigen::Matrix3d& matrix() const { return map_; }

 private:
  Eigen::Matrix3d map_;
};

/// Generator matrix C of the augmented linear system d/dt (p, q, 1) = C (p, q, 1).
Eigen::Matrix3d flow_generator(const QuadraticForm& H);

/// Matrix W with int_0^t Lambda_H(Phi_{-u} x) du = X^T W X, X = (p, q, 1).
Eigen::Matrix3d gauge_phase_matrix(const QuadraticForm& H, double t);

/// Total phase delta(p, q, t) = (t H + int_0^t Lambda_H(Phi_{-u}) du) / hbar.
class PrequantumPhase {
 public:
  PrequantumPhase(const QuadraticForm& H, double t, const Constants& c);
  double operator()(double p, double q) const;

 private:
  QuadraticForm H_;
  Eigen::Matrix3d W_;
  double t_, hbar_;
};

struct PropagationOptions {
  Interpolation interpolation = Interpolation::quintic;
  /// Drops the prequantum phase, leaving the plain Koopman transport.
  bool phase_free = false;
};

struct PropagationDiagnostics {
  double norm_before = 0.0;
  double norm_after = 0.0;
  /// Fraction of the initial mass whose back-traced samples fall off the grid.
  double mass_lost = 0.0;
};

/// xi(x, t) = exp(-i delta(x, t)) xi0(Phi_{-t} x). Samples that back-trace
/// outside the grid are set to zero.
KoopmanState propagate_quadratic(const PhasePolynomial& H, const KoopmanState& s0, double t,
                                 const Constants& c, const PropagationOptions& options = {},
                                 PropagationDiagnostics* diagnostics = nullptr);

/// f o Phi_t for a quadratic H, so that d/dt f_t = {H, f_t}.
PhasePolynomial heisenberg_evolve(const PhasePolynomial& f, const PhasePolynomial& H, double t,
                                  const Constants& c);

}  // namespace prequant
