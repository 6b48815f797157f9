#pragma once

// The polarization subspace spanned by eta_n(z) = nu_n z*^n exp(-|z|^2/2),
// nu_n = (n! 2 pi hbar)^{-1/2}, its identification eta_n <-> |n>, evaluation
// (coherent) states and the Husimi map.

#include <span>

#include "prequant/fock.hpp"
#include "prequant/phasespace.hpp"

namespace prequant {

/// eta_n(z). Evaluated in log form, so it stays finite for |z|^2 up to ~700.
Complex eval_eta(int n, Complex z, const Constants& c);

/// eta_n(z) exp(+|z|^2/2), the polynomial part nu_n z*^n. Paired with the
/// exp(-I/hbar)-weighted quadrature this integrates eta products exactly.
Complex eval_eta_reduced(int n, Complex z, const Constants& c);

class PolarizationBasis {
 public:
  PolarizationBasis(int truncation, const Constants& c);

  int truncation() const { return truncation_; }
  int dim() const { return truncation_ + 1; }
  const Constants& constants() const { return constants_; }

  Complex eta(int n, Complex z) const { return eval_eta(n, z, constants_); }
  Complex eta_reduced(int n, Complex z) const { return eval_eta_reduced(n, z, constants_); }

  /// Row i holds eta_reduced(n, z_i) for n = 0..N at every quadrature node.
  Eigen::MatrixXcd reduced_table(const QuadratureScheme& quad) const;

 private:
  int truncation_;
  Constants constants_;
};

/// Unnormalized evaluation state |zeta_z0> = sum_n conj(eta_n(z0)) |n>.
struct EvaluationState {
  Complex center;
  FockVector coefficients;

  double norm_squared() const { return coefficients.squaredNorm(); }
  FockVector normalized() const { return coefficients / coefficients.norm(); }
};

EvaluationState evaluation_state(Complex z0, int N, const Constants& c);

/// xi(z0) = <zeta_z0|psi> = sum_n eta_n(z0) psi_n at each point.
Eigen::VectorXcd husimi_map(const FockVector& psi, std::span<const Complex> points, const Constants& c);

/// int dmu |xi|^2 evaluated with the quadrature.
double husimi_norm_squared(const FockVector& psi, const QuadratureScheme& quad, const Constants& c);

/// Gram matrix int dmu conj(eta_n) eta_n' by quadrature.
FockMatrix gram_matrix(const QuadratureScheme& quad, int N, const Constants& c);

/// Operator norm of sum_i w_i |zeta_i><zeta_i| - identity.
double completeness_residual(const QuadratureScheme& quad, int N, const Constants& c);

}  // namespace prequant
