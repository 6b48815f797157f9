#include "prequant/koopman.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prequant {
namespace {

PhasePolynomial apply_field(const PrequantumGenerator& G, const PhasePolynomial& f) {
  return G.coeff_dz * d_dz(f) + G.coeff_dzstar * d_dzbar(f);
}

double max_coefficient(const PhasePolynomial& f) {
  double m = 0.0;
  for (const auto& [e, c] : f.terms()) m = std::max(m, std::abs(c));
  return m;
}

void require_finite(const Eigen::MatrixXcd& a) {
  if (!a.allFinite()) throw std::invalid_argument("apply_generator: non-finite amplitudes");
}

// Fourth-order first derivative along one axis of a strided line.
template <typename Get>
Complex fd4(Get&& v, int i, int n, double h) {
  if (i >= 2 && i <= n - 3) return (-v(i + 2) + 8.0 * v(i + 1) - 8.0 * v(i - 1) + v(i - 2)) / (12.0 * h);
  if (i == 0) return (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) / (12.0 * h);
  if (i == 1) return (-3.0 * v(0) - 10.0 * v(1) + 18.0 * v(2) - 6.0 * v(3) + v(4)) / (12.0 * h);
  if (i == n - 2) {
    return (3.0 * v(n - 1) + 10.0 * v(n - 2) - 18.0 * v(n - 3) + 6.0 * v(n - 4) - v(n - 5)) / (12.0 * h);
  }
  return (25.0 * v(n - 1) - 48.0 * v(n - 2) + 36.0 * v(n - 3) - 16.0 * v(n - 4) + 3.0 * v(n - 5)) / (12.0 * h);
}

}  // namespace

PrequantumGenerator build_generator(const PhasePolynomial& f, const Constants& c) {
  c.validate();
  const double inv = 1.0 / c.hbar;
  return PrequantumGenerator{(f + gauge_potential(f)) * inv, -d_dzbar(f) * inv, d_dz(f) * inv, f, c};
}

PqField field_pq(const PrequantumGenerator& G) {
  const double r = std::sqrt(G.constants.hbar * G.constants.beta0 / 2.0);
  const double s = std::sqrt(G.constants.hbar / (2.0 * G.constants.beta0));
  return PqField{(G.coeff_dzstar - G.coeff_dz) * (kI * r), (G.coeff_dz + G.coeff_dzstar) * s};
}

PrequantumGenerator lie_bracket(const PrequantumGenerator& G1, const PrequantumGenerator& G2) {
  PrequantumGenerator out;
  out.constants = G1.constants;
  out.multiplier = (apply_field(G1, G2.multiplier) - apply_field(G2, G1.multiplier)) * kI;
  out.coeff_dz = (apply_field(G1, G2.coeff_dz) - apply_field(G2, G1.coeff_dz)) * kI;
  out.coeff_dzstar = (apply_field(G1, G2.coeff_dzstar) - apply_field(G2, G1.coeff_dzstar)) * kI;
  return out;
}

double distance(const PrequantumGenerator& a, const PrequantumGenerator& b) {
  return std::max({distance(a.multiplier, b.multiplier), distance(a.coeff_dz, b.coeff_dz),
                   distance(a.coeff_dzstar, b.coeff_dzstar)});
}

bool hamiltonian_part_commutes(const PrequantumGenerator& G, double tol) {
  return max_coefficient(apply_field(G, G.source)) <= tol;
}

bool gauge_part_commutes(const PrequantumGenerator& G, double tol) {
  return max_coefficient(apply_field(G, gauge_potential(G.source))) <= tol;
}

KoopmanState sample_state(const PhaseGrid& grid, const std::function<Complex(double, double)>& f, double time) {
  KoopmanState s{grid, Eigen::MatrixXcd(grid.n_p, grid.n_q), time};
  for (int j = 0; j < grid.n_q; ++j) {
    for (int i = 0; i < grid.n_p; ++i) s.amplitudes(i, j) = f(grid.p(i), grid.q(j));
  }
  return s;
}

KoopmanState apply_generator(const PrequantumGenerator& G, const KoopmanState& s) {
  const PhaseGrid& g = s.grid;
  if (s.amplitudes.rows() != g.n_p || s.amplitudes.cols() != g.n_q) {
    throw std::invalid_argument("apply_generator: amplitudes do not match the grid");
  }
  if (g.n_p < 5 || g.n_q < 5) throw std::invalid_argument("apply_generator: need at least 5 samples per axis");
  require_finite(s.amplitudes);
  const PqField field = field_pq(G);
  const Eigen::MatrixXcd& xi = s.amplitudes;
  KoopmanState out{g, Eigen::MatrixXcd(g.n_p, g.n_q), s.time};
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.n_q; ++j) {
    for (int i = 0; i < g.n_p; ++i) {
      const Complex z = z_from_pq(g.p(i), g.q(j), G.constants);
      const Complex dp = fd4([&](int k) { return xi(k, j); }, i, g.n_p, g.dp());
      const Complex dq = fd4([&](int k) { return xi(i, k); }, j, g.n_q, g.dq());
      out.amplitudes(i, j) = G.multiplier(z) * xi(i, j) + field.d_p(z) * dp + field.d_q(z) * dq;
    }
  }
  return out;
}

QuadraticForm quadratic_form(const PhasePolynomial& H, const Constants& c) {
  if (H.degree() > 2) throw std::invalid_argument("exact propagator requires quadratic Hamiltonian");
  if (!H.is_real(1e-12 * std::max(1.0, max_coefficient(H)))) {
    throw std::invalid_argument("exact propagator requires a real Hamiltonian");
  }
  auto h = [&](double p, double q) { return H(z_from_pq(p, q, c)).real(); };
  QuadraticForm Q;
  Q.f0 = h(0, 0);
  const double pp = h(1, 0), pm = h(-1, 0), qp = h(0, 1), qm = h(0, -1);
  Q.a = 0.5 * (pp + pm) - Q.f0;
  Q.d = 0.5 * (pp - pm);
  Q.c = 0.5 * (qp + qm) - Q.f0;
  Q.e = 0.5 * (qp - qm);
  Q.b = 0.5 * (h(1, 1) - h(1, -1) - h(-1, 1) + h(-1, -1)) * 0.5;
  return Q;
}

Eigen::Matrix3d flow_generator(const QuadraticForm& H) {
  Eigen::Matrix3d C;
  C << -H.b, -2.0 * H.c, -H.e,
       2.0 * H.a, H.b, H.d,
       0.0, 0.0, 0.0;
  return C;
}

AffineFlow::AffineFlow(const QuadraticForm& H, double t) : map_((flow_generator(H) * t).exp()) {}

std::pair<double, double> AffineFlow::operator()(double p, double q) const {
  return {map_(0, 0) * p + map_(0, 1) * q + map_(0, 2), map_(1, 0) * p + map_(1, 1) * q + map_(1, 2)};
}

Eigen::Matrix3d gauge_phase_matrix(const QuadraticForm& H, double t) {
  Eigen::Matrix3d S;
  S << -H.a, -0.5 * H.b, -0.25 * H.d,
       -0.5 * H.b, -H.c, -0.25 * H.e,
       -0.25 * H.d, -0.25 * H.e, 0.0;
  // Backward trajectories solve dX/du = A X with A = -C. Van Loan:
  // exp([[-A^T, S], [0, A]] t) = [[., G], [0, F]], int_0^t e^{A^T u} S e^{A u} du = F^T G.
  const Eigen::Matrix3d A = -flow_generator(H);
  Eigen::Matrix<double, 6, 6> M = Eigen::Matrix<double, 6, 6>::Zero();
  M.topLeftCorner<3, 3>() = -A.transpose();
  M.topRightCorner<3, 3>() = S;
  M.bottomRightCorner<3, 3>() = A;
  const Eigen::Matrix<double, 6, 6> E = (M * t).exp();
  const Eigen::Matrix3d W = E.bottomRightCorner<3, 3>().transpose() * E.topRightCorner<3, 3>();
  return 0.5 * (W + W.transpose());
}

PrequantumPhase::PrequantumPhase(const QuadraticForm& H, double t, const Constants& c)
    : H_(H), W_(gauge_phase_matrix(H, t)), t_(t), hbar_(c.hbar) {}

double PrequantumPhase::operator()(double p, double q) const {
  const Eigen::Vector3d X(p, q, 1.0);
  return (t_ * H_(p, q) + X.dot(W_ * X)) / hbar_;
}

KoopmanState propagate_quadratic(const PhasePolynomial& H, const KoopmanState& s0, double t, const Constants& c,
                                 const PropagationOptions& options, PropagationDiagnostics* diagnostics) {
  c.validate();
  if (!std::isfinite(t)) throw std::invalid_argument("propagate_quadratic: non-finite duration");
  const QuadraticForm Q = quadratic_form(H, c);
  const AffineFlow backward(Q, -t);
  const PrequantumPhase phase(Q, t, c);
  const bool phase_free = options.phase_free;
  KoopmanState out{s0.grid, {}, s0.time + t};
  out.amplitudes = semi_lagrangian_gather(
      s0.grid, s0.amplitudes, options.interpolation, [&](double p, double q) { return backward(p, q); },
      [&](double p, double q, Complex v) {
        return phase_free ? v : std::polar(1.0, -phase(p, q)) * v;
      });
  if (diagnostics) {
    const PhaseGrid& g = s0.grid;
    const AffineFlow forward(Q, t);
    double lost = 0.0;
    for (int j = 0; j < g.n_q; ++j) {
      for (int i = 0; i < g.n_p; ++i) {
        const auto [p, q] = forward(g.p(i), g.q(j));
        if (!g.contains(p, q)) lost += g.weight(i, j) * std::norm(s0.amplitudes(i, j));
      }
    }
    diagnostics->norm_before = s0.norm_squared();
    diagnostics->norm_after = out.norm_squared();
    diagnostics->mass_lost = diagnostics->norm_before > 0.0 ? lost / diagnostics->norm_before : 0.0;
  }
  return out;
}

PhasePolynomial heisenberg_evolve(const PhasePolynomial& f, const PhasePolynomial& H, double t, const Constants& c) {
  c.validate();
  const QuadraticForm Q = quadratic_form(H, c);
  const Eigen::Matrix3d m = AffineFlow(Q, t).matrix();
  const PhasePolynomial p = PhasePolynomial::momentum(c), q = PhasePolynomial::position(c);
  const PhasePolynomial pt = p * m(0, 0) + q * m(0, 1) + PhasePolynomial::constant(m(0, 2));
  const PhasePolynomial qt = p * m(1, 0) + q * m(1, 1) + PhasePolynomial::constant(m(1, 2));
  const double sb = std::sqrt(c.beta0), norm = 1.0 / std::sqrt(2.0 * c.hbar);
  const PhasePolynomial zt = (qt * sb + pt * (kI / sb)) * norm;
  const PhasePolynomial zbart = (qt * sb - pt * (kI / sb)) * norm;
  PhasePolynomial out;
  for (const auto& [e, coef] : f.terms()) out += pow(zt, e.first) * pow(zbart, e.second) * coef;
  return out;
}

}  // namespace prequant
