#pragma once

// Mixed classical-quantum dynamics: a Koopman amplitude per quantum basis
// vector, Stern-Gerlach solvers and the Schmidt spectrum of the split.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "prequant/koopman.hpp"

namespace prequant {

struct MixedState {
  PhaseGrid grid;
  std::vector<Eigen::MatrixXcd> components;
  double time = 0.0;

  int dim() const { return static_cast<int>(components.size()); }
  double norm_squared() const;
  /// Weights ||v_s||^2 of each quantum outcome.
  std::vector<double> populations() const;
};

/// classical (x) (s_0, s_1, ...).
MixedState product_state(const KoopmanState& classical, const std::vector<Complex>& spinor);

struct GaussianParams {
  double p0 = 0.0, q0 = 0.0;
  double w_p = 1.0, w_q = 1.0;
  void validate() const;
  Complex operator()(double p, double q) const;
};

/// (pi w_p w_q)^{-1/2} exp(-(p-p0)^2/2w_p^2 - (q-q0)^2/2w_q^2) on the grid.
KoopmanState gaussian_packet(const GaussianParams& g, const PhaseGrid& grid);

/// True when the packet sits at least `sigmas` widths inside every edge.
bool packet_contained(const GaussianParams& g, const PhaseGrid& grid, double sigmas = 6.0);

/// H = p^2/2m (x) 1 + (b0 + b1 q) (x) sigma3.
struct SternGerlachConfig {
  double m = 1.0;
  double b0 = 0.0;
  double b1 = 1.0;
  double hbar = 1.0;
  void validate() const;
  Constants constants() const { return Constants{hbar, 1.0}; }
};

/// Classical Hamiltonian seen by the spin-up (sign = +1) or spin-down
/// (sign = -1) component: p^2/2m +- (b0 + b1 q).
PhasePolynomial sg_hamiltonian(const SternGerlachConfig& cfg, int sign);

/// delta_pm(p, q, t) of the closed-form solution.
double sg_phase(const SternGerlachConfig& cfg, int sign, double p, double q, double t);

using PhaseFunctionPQ = std::function<Complex(double p, double q)>;

/// Closed-form (v+, v-) at (p, q, t) from initial components v0+ and v0-.
std::pair<Complex, Complex> sg_exact(const SternGerlachConfig& cfg, const PhaseFunctionPQ& v0_plus,
                                     const PhaseFunctionPQ& v0_minus, double p, double q, double t);

/// The closed form sampled on a grid.
MixedState sg_exact_state(const SternGerlachConfig& cfg, const PhaseFunctionPQ& v0_plus,
                          const PhaseFunctionPQ& v0_minus, const PhaseGrid& grid, double t);

struct EvolutionOptions {
  Interpolation interpolation = Interpolation::quintic;
  /// Relative mass allowed to leave the grid before the run fails.
  double mass_loss_threshold = 1e-6;
};

struct EvolutionDiagnostics {
  double mass_lost = 0.0;
  int steps = 0;
};

/// Semi-Lagrangian steps of the exact one-step characteristics per component.
/// Throws when the accumulated mass loss exceeds the threshold.
MixedState sg_numeric_evolve(const SternGerlachConfig& cfg, const MixedState& s, double dt, int n,
                             const EvolutionOptions& options = {}, EvolutionDiagnostics* diagnostics = nullptr);

/// Coupling term G_g (x) mu with mu Hermitian and dimensionless.
struct Coupling {
  PhasePolynomial g;
  Eigen::MatrixXcd mu;
};

/// Evolution under K = 1 (x) H0_Q/hbar + G_{H0} (x) 1 + sum_i G_{g_i} (x) mu_i.
/// When H0_Q and all mu_i commute the components evolve exactly in a common
/// eigenbasis; otherwise each step is a Strang splitting over the terms.
class MixedEvolver {
 public:
  MixedEvolver(PhasePolynomial H0_classical, Eigen::MatrixXcd H0_quantum, std::vector<Coupling> couplings,
               const Constants& c, Interpolation interpolation = Interpolation::quintic);

  int dim() const { return static_cast<int>(H0_quantum_.rows()); }
  bool commuting() const { return commuting_; }

  MixedState evolve(const MixedState& s, double dt, int steps, EvolutionDiagnostics* diagnostics = nullptr) const;

 private:
  // Exactly solvable piece: in the columns of `basis`, component s moves
  // under the classical Hamiltonian hamiltonians[s].
  struct Term {
    Eigen::MatrixXcd basis;
    std::vector<PhasePolynomial> hamiltonians;
  };

  MixedState apply_term(const Term& term, const MixedState& s, double t, double* lost) const;

  Eigen::MatrixXcd H0_quantum_;
  Constants constants_;
  Interpolation interpolation_;
  bool commuting_ = false;
  std::vector<Term> terms_;  // a single term in the commuting case
};

MixedEvolver build_mixed_generator(const PhasePolynomial& H0_classical, const Eigen::MatrixXcd& H0_quantum,
                                   const std::vector<Coupling>& couplings, const Constants& c,
                                   Interpolation interpolation = Interpolation::quintic);

inline constexpr double kEntanglementThreshold = 1e-6;

struct SchmidtSpectrum {
  std::vector<double> values;  // descending, sum of squares 1
  bool entangled = false;
};

/// Singular values of the (grid points x d) matrix sqrt(w_ij) v_s(p_i, q_j).
SchmidtSpectrum schmidt_spectrum(const MixedState& s);

}  // namespace prequant
