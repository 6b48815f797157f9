#include "prequant/mixed.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace prequant {
namespace {

void require_hermitian(const Eigen::MatrixXcd& M, const char* what) {
  if (M.rows() != M.cols()) throw std::invalid_argument(std::string(what) + " must be square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument(std::string(what) + " must be Hermitian");
  }
}

bool is_diagonal(const Eigen::MatrixXcd& M, double tol) {
  Eigen::MatrixXcd off = M;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= tol;
}

void check_shape(const MixedState& s) {
  for (const auto& c : s.components) {
    if (c.rows() != s.grid.n_p || c.cols() != s.grid.n_q) {
      throw std::invalid_argument("MixedState: component does not match the grid");
    }
  }
}

std::vector<Eigen::MatrixXcd> change_basis(const std::vector<Eigen::MatrixXcd>& v, const Eigen::MatrixXcd& U) {
  // out_r = sum_s U(r, s) v_s
  std::vector<Eigen::MatrixXcd> out(v.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    out[r] = Eigen::MatrixXcd::Zero(v[0].rows(), v[0].cols());
    for (std::size_t s = 0; s < v.size(); ++s) {
      const Complex u = U(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
      if (u != Complex{}) out[r] += u * v[s];
    }
  }
  return out;
}

}  // namespace

double MixedState::norm_squared() const {
  double sum = 0.0;
  for (const auto& c : components) sum += grid.norm_squared(c);
  return sum;
}

std::vector<double> MixedState::populations() const {
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(grid.norm_squared(c));
  return out;
}

MixedState product_state(const KoopmanState& classical, const std::vector<Complex>& spinor) {
  if (spinor.empty()) throw std::invalid_argument("product_state: empty spinor");
  MixedState s{classical.grid, {}, classical.time};
  for (Complex a : spinor) s.components.push_back(a * classical.amplitudes);
  return s;
}

void GaussianParams::validate() const {
  if (!(w_p > 0.0) || !(w_q > 0.0)) throw std::invalid_argument("GaussianParams: widths must be positive");
  if (!std::isfinite(p0) || !std::isfinite(q0)) throw std::invalid_argument("GaussianParams: non-finite center");
}

Complex GaussianParams::operator()(double p, double q) const {
  const double dp = (p - p0) / w_p, dq = (q - q0) / w_q;
  return std::exp(-0.5 * (dp * dp + dq * dq)) / std::sqrt(kPi * w_p * w_q);
}

KoopmanState gaussian_packet(const GaussianParams& g, const PhaseGrid& grid) {
  g.validate();
  return sample_state(grid, [&g](double p, double q) { return g(p, q); });
}

bool packet_contained(const GaussianParams& g, const PhaseGrid& grid, double sigmas) {
  return g.p0 - sigmas * g.w_p >= grid.p_min && g.p0 + sigmas * g.w_p <= grid.p_max &&
         g.q0 - sigmas * g.w_q >= grid.q_min && g.q0 + sigmas * g.w_q <= grid.q_max;
}

void SternGerlachConfig::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("SternGerlachConfig: m must be positive");
  if (!(hbar > 0.0)) throw std::invalid_argument("SternGerlachConfig: hbar must be positive");
  if (!std::isfinite(b0) || !std::isfinite(b1)) throw std::invalid_argument("SternGerlachConfig: non-finite field");
}

PhasePolynomial sg_hamiltonian(const SternGerlachConfig& cfg, int sign) {
  cfg.validate();
  const Constants c = cfg.constants();
  const PhasePolynomial p = PhasePolynomial::momentum(c);
  const double s = sign >= 0 ? 1.0 : -1.0;
  return p * p * (0.5 / cfg.m) + PhasePolynomial::constant(s * cfg.b0) + PhasePolynomial::position(c) * (s * cfg.b1);
}

double sg_phase(const SternGerlachConfig& cfg, int sign, double p, double q, double t) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const double bracket = q * t - p * t * t / (2.0 * cfg.m) - s * cfg.b1 * t * t * t / (6.0 * cfg.m);
  return s * (bracket * 0.5 * cfg.b1 + cfg.b0 * t) / cfg.hbar;
}

std::pair<Complex, Complex> sg_exact(const SternGerlachConfig& cfg, const PhaseFunctionPQ& v0_plus,
                                     const PhaseFunctionPQ& v0_minus, double p, double q, double t) {
  const double drift = cfg.b1 * t * t / (2.0 * cfg.m);
  const double qf = q - p * t / cfg.m;
  const Complex plus = std::polar(1.0, -sg_phase(cfg, +1, p, q, t)) * v0_plus(p + cfg.b1 * t, qf - drift);
  const Complex minus = std::polar(1.0, -sg_phase(cfg, -1, p, q, t)) * v0_minus(p - cfg.b1 * t, qf + drift);
  return {plus, minus};
}

MixedState sg_exact_state(const SternGerlachConfig& cfg, const PhaseFunctionPQ& v0_plus,
                          const PhaseFunctionPQ& v0_minus, const PhaseGrid& grid, double t) {
  cfg.validate();
  MixedState s{grid, {Eigen::MatrixXcd(grid.n_p, grid.n_q), Eigen::MatrixXcd(grid.n_p, grid.n_q)}, t};
#pragma omp parallel for schedule(static)
  for (int j = 0; j < grid.n_q; ++j) {
    for (int i = 0; i < grid.n_p; ++i) {
      const auto [a, b] = sg_exact(cfg, v0_plus, v0_minus, grid.p(i), grid.q(j), t);
      s.components[0](i, j) = a;
      s.components[1](i, j) = b;
    }
  }
  return s;
}

MixedState sg_numeric_evolve(const SternGerlachConfig& cfg, const MixedState& s, double dt, int n,
                             const EvolutionOptions& options, EvolutionDiagnostics* diagnostics) {
  cfg.validate();
  if (s.dim() != 2) throw std::invalid_argument("sg_numeric_evolve: spinor state must have two components");
  if (!(dt > 0.0) || n < 0) throw std::invalid_argument("sg_numeric_evolve: need dt > 0 and n >= 0");
  check_shape(s);
  const Constants c = cfg.constants();
  const PhasePolynomial H[2] = {sg_hamiltonian(cfg, +1), sg_hamiltonian(cfg, -1)};
  PropagationOptions prop;
  prop.interpolation = options.interpolation;
  MixedState out = s;
  double lost = 0.0;
  const double initial = s.norm_squared();
  for (int step = 0; step < n; ++step) {
    for (int k = 0; k < 2; ++k) {
      PropagationDiagnostics d;
      KoopmanState comp{s.grid, std::move(out.components[k]), out.time};
      comp = propagate_quadratic(H[k], comp, dt, c, prop, &d);
      out.components[k] = std::move(comp.amplitudes);
      lost += d.mass_lost * d.norm_before;
    }
    out.time += dt;
    if (initial > 0.0 && lost / initial > options.mass_loss_threshold) {
      throw std::runtime_error("sg_numeric_evolve: packet escapes the grid (mass loss " + std::to_string(lost / initial) +
                               " at t = " + std::to_string(out.time) + ")");
    }
  }
  if (diagnostics) {
    diagnostics->mass_lost = initial > 0.0 ? lost / initial : 0.0;
    diagnostics->steps = n;
  }
  return out;
}

MixedEvolver::MixedEvolver(PhasePolynomial H0_classical, Eigen::MatrixXcd H0_quantum, std::vector<Coupling> couplings,
                           const Constants& c, Interpolation interpolation)
    : H0_quantum_(std::move(H0_quantum)), constants_(c), interpolation_(interpolation) {
  c.validate();
  require_hermitian(H0_quantum_, "quantum Hamiltonian");
  const Eigen::Index d = H0_quantum_.rows();
  if (d == 0) throw std::invalid_argument("quantum Hamiltonian must be non-empty");
  quadratic_form(H0_classical, c);
  for (const auto& cp : couplings) {
    quadratic_form(cp.g, c);
    if (cp.mu.rows() != d) throw std::invalid_argument("coupling matrix dimension does not match the quantum space");
    require_hermitian(cp.mu, "coupling matrix");
  }

  // A generic real combination separates every joint eigenspace.
  Eigen::MatrixXcd probe = H0_quantum_;
  for (std::size_t i = 0; i < couplings.size(); ++i) probe += (std::sqrt(2.0 + i) - 0.3 * i) * couplings[i].mu;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> joint(probe);
  const Eigen::MatrixXcd U = joint.eigenvectors();
  auto scale = [](const Eigen::MatrixXcd& M) { return 1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff()); };
  commuting_ = is_diagonal(U.adjoint() * H0_quantum_ * U, scale(H0_quantum_));
  for (const auto& cp : couplings) commuting_ = commuting_ && is_diagonal(U.adjoint() * cp.mu * U, scale(cp.mu));

  if (commuting_) {
    Term term{U, {}};
    const Eigen::MatrixXcd E = U.adjoint() * H0_quantum_ * U;
    for (Eigen::Index s = 0; s < d; ++s) {
      PhasePolynomial h = H0_classical + PhasePolynomial::constant(E(s, s).real());
      for (const auto& cp : couplings) h += cp.g * (U.col(s).dot(cp.mu * U.col(s))).real();
      term.hamiltonians.push_back(h);
    }
    terms_.push_back(std::move(term));
    return;
  }

  auto factor_term = [&](const PhasePolynomial& g, const Eigen::MatrixXcd& mu) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mu);
    Term term{es.eigenvectors(), {}};
    for (Eigen::Index s = 0; s < d; ++s) term.hamiltonians.push_back(g * es.eigenvalues()(s));
    return term;
  };
  if (!H0_classical.is_zero()) {
    terms_.push_back(Term{Eigen::MatrixXcd::Identity(d, d), std::vector<PhasePolynomial>(d, H0_classical)});
  }
  if (H0_quantum_.cwiseAbs().maxCoeff() > 0.0) terms_.push_back(factor_term(PhasePolynomial::constant(1.0), H0_quantum_));
  for (const auto& cp : couplings) terms_.push_back(factor_term(cp.g, cp.mu));
}

MixedState MixedEvolver::apply_term(const Term& term, const MixedState& s, double t, double* lost) const {
  const bool rotate = !term.basis.isIdentity(1e-15);
  MixedState out{s.grid, rotate ? change_basis(s.components, term.basis.adjoint()) : s.components, s.time};
  PropagationOptions prop;
  prop.interpolation = interpolation_;
  for (int k = 0; k < out.dim(); ++k) {
    const PhasePolynomial& h = term.hamiltonians[static_cast<std::size_t>(k)];
    if (h.is_zero()) continue;
    if (h.degree() == 0) {
      out.components[k] *= std::polar(1.0, -h.coefficient(0, 0).real() * t / constants_.hbar);
      continue;
    }
    PropagationDiagnostics d;
    KoopmanState comp{s.grid, std::move(out.components[k]), s.time};
    comp = propagate_quadratic(h, comp, t, constants_, prop, &d);
    out.components[k] = std::move(comp.amplitudes);
    if (lost) *lost += d.mass_lost * d.norm_before;
  }
  if (rotate) out.components = change_basis(out.components, term.basis);
  return out;
}

MixedState MixedEvolver::evolve(const MixedState& s, double dt, int steps, EvolutionDiagnostics* diagnostics) const {
  if (s.dim() != dim()) throw std::invalid_argument("MixedEvolver: state dimension does not match the quantum space");
  if (!(dt > 0.0) || steps < 0) throw std::invalid_argument("MixedEvolver: need dt > 0 and steps >= 0");
  check_shape(s);
  MixedState out = s;
  double lost = 0.0;
  for (int step = 0; step < steps; ++step) {
    if (terms_.size() == 1) {
      out = apply_term(terms_[0], out, dt, &lost);
    } else {
      // Strang: half steps forward through the list, full last term, half steps back.
      const std::size_t last = terms_.size() - 1;
      for (std::size_t i = 0; i < last; ++i) out = apply_term(terms_[i], out, 0.5 * dt, &lost);
      out = apply_term(terms_[last], out, dt, &lost);
      for (std::size_t i = last; i-- > 0;) out = apply_term(terms_[i], out, 0.5 * dt, &lost);
    }
    out.time = s.time + (step + 1) * dt;
  }
  if (diagnostics) {
    const double initial = s.norm_squared();
    diagnostics->mass_lost = initial > 0.0 ? lost / initial : 0.0;
    diagnostics->steps = steps;
  }
  return out;
}

MixedEvolver build_mixed_generator(const PhasePolynomial& H0_classical, const Eigen::MatrixXcd& H0_quantum,
                                   const std::vector<Coupling>& couplings, const Constants& c,
                                   Interpolation interpolation) {
  return MixedEvolver(H0_classical, H0_quantum, couplings, c, interpolation);
}

SchmidtSpectrum schmidt_spectrum(const MixedState& s) {
  check_shape(s);
  if (s.dim() == 0) throw std::invalid_argument("schmidt_spectrum: empty state");
  const PhaseGrid& g = s.grid;
  const Eigen::Index points = static_cast<Eigen::Index>(g.n_p) * g.n_q;
  Eigen::MatrixXcd M(points, s.dim());
  for (int k = 0; k < s.dim(); ++k) {
    for (int j = 0; j < g.n_q; ++j) {
      for (int i = 0; i < g.n_p; ++i) {
        M(static_cast<Eigen::Index>(j) * g.n_p + i, k) = std::sqrt(g.weight(i, j)) * s.components[k](i, j);
      }
    }
  }
  const double total = M.norm();
  if (total == 0.0) throw std::invalid_argument("schmidt_spectrum: zero state");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M / total);
  SchmidtSpectrum out;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) out.values.push_back(svd.singularValues()(k));
  out.entangled = out.values.size() > 1 && out.values[1] > kEntanglementThreshold;
  return out;
}

}  // namespace prequant
