#include "prequant/phasespace.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace prequant {
namespace {

void require_finite(PhasePoint pt) {
  if (!std::isfinite(pt.first) || !std::isfinite(pt.second)) {
    throw std::invalid_argument("convert_coords: non-finite coordinate");
  }
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

// Laguerre L_n(x) and L_{n-1}(x) by the three-term recurrence.
std::pair<double, double> laguerre_pair(int n, double x) {
  double prev = 1.0, cur = 1.0 - x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

std::pair<double, double> legendre_pair(int n, double x) {
  double prev = 1.0, cur = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

Complex z_from_pq(double p, double q, const Constants& c) {
  const double sb = std::sqrt(c.beta0);
  return Complex(q * sb, p / sb) / std::sqrt(2.0 * c.hbar);
}

std::pair<double, double> pq_from_z(Complex z, const Constants& c) {
  const double s = std::sqrt(2.0 * c.hbar);
  const double sb = std::sqrt(c.beta0);
  return {z.imag() * s * sb, z.real() * s / sb};
}

PhasePoint convert_coords(PhasePoint point, CoordSystem from, CoordSystem to, const Constants& c) {
  require_finite(point);
  Complex z;
  switch (from) {
    case CoordSystem::pq:
      z = z_from_pq(point.first, point.second, c);
      break;
    case CoordSystem::action_angle: {
      if (point.first < 0.0) throw std::invalid_argument("convert_coords: negative action");
      z = std::polar(std::sqrt(point.first / c.hbar), point.second);
      break;
    }
    case CoordSystem::complex:
      z = Complex(point.first, point.second);
      break;
  }
  switch (to) {
    case CoordSystem::pq: {
      if (from == CoordSystem::pq) return point;
      const auto [p, q] = pq_from_z(z, c);
      return {p, q};
    }
    case CoordSystem::action_angle: {
      if (from == CoordSystem::action_angle) return {point.first, wrap_angle(point.second)};
      const double action = c.hbar * std::norm(z);
      const double theta = action == 0.0 ? 0.0 : wrap_angle(std::atan2(z.imag(), z.real()));
      return {action, theta};
    }
    case CoordSystem::complex:
      if (from == CoordSystem::complex) return point;
      return {z.real(), z.imag()};
  }
  return point;
}

void gauss_laguerre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: need at least one node");
  // Golub-Welsch for starting values, then Newton on L_n for full relative accuracy.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = 2.0 * i + 1.0;
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = i + 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double deriv = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto [ln, lnm1] = laguerre_pair(n, x);
      deriv = n * (ln - lnm1) / x;
      const double dx = ln / deriv;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::abs(x)) break;
    }
    const auto [ln, lnm1] = laguerre_pair(n, x);
    deriv = n * (ln - lnm1) / x;
    nodes[i] = x;
    weights[i] = 1.0 / (x * deriv * deriv);
  }
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double deriv = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto [pn, pnm1] = legendre_pair(n, x);
      deriv = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / deriv;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const auto [pn, pnm1] = legendre_pair(n, x);
    deriv = n * (x * pn - pnm1) / (x * x - 1.0);
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
  }
}

double QuadratureScheme::measure_weight(std::size_t i) const {
  return weights[i] * std::exp(nodes[i].action / hbar);
}

Complex QuadratureScheme::z(std::size_t i) const {
  return std::polar(std::sqrt(nodes[i].action / hbar), nodes[i].angle);
}

QuadratureScheme build_quadrature(int order_action, int order_angle, const Constants& c) {
  c.validate();
  if (order_action < 1) throw std::invalid_argument("build_quadrature: Q_I must be >= 1");
  if (order_angle < 2) throw std::invalid_argument("build_quadrature: Q_theta must be >= 2");
  if (order_action > 128) throw std::invalid_argument("build_quadrature: Q_I above 128 overflows the weights");
  std::vector<double> u, w;
  gauss_laguerre(order_action, u, w);
  QuadratureScheme quad;
  quad.hbar = c.hbar;
  quad.order_action = order_action;
  quad.order_angle = order_angle;
  const double dtheta = 2.0 * kPi / order_angle;
  quad.nodes.reserve(static_cast<std::size_t>(order_action) * order_angle);
  quad.weights.reserve(quad.nodes.capacity());
  for (int i = 0; i < order_action; ++i) {
    for (int j = 0; j < order_angle; ++j) {
      quad.nodes.push_back({c.hbar * u[i], j * dtheta});
      quad.weights.push_back(c.hbar * w[i] * dtheta);
    }
  }
  return quad;
}

double PhaseGrid::weight(int i, int j) const {
  const double wp = (i == 0 || i == n_p - 1) ? 0.5 : 1.0;
  const double wq = (j == 0 || j == n_q - 1) ? 0.5 : 1.0;
  return wp * wq * cell_measure();
}

double PhaseGrid::total_measure() const {
  double sum = 0.0;
  for (int i = 0; i < n_p; ++i) {
    for (int j = 0; j < n_q; ++j) sum += weight(i, j);
  }
  return sum;
}

double PhaseGrid::norm_squared(const Eigen::MatrixXcd& samples) const {
  return inner(samples, samples).real();
}

Complex PhaseGrid::inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const {
  if (a.rows() != n_p || a.cols() != n_q || b.rows() != n_p || b.cols() != n_q) {
    throw std::invalid_argument("PhaseGrid::inner: sample array does not match the grid");
  }
  Complex sum{};
  for (int j = 0; j < n_q; ++j) {
    for (int i = 0; i < n_p; ++i) sum += weight(i, j) * std::conj(a(i, j)) * b(i, j);
  }
  return sum;
}

PhaseGrid build_grid(double p_min, double p_max, double q_min, double q_max, int n_p, int n_q) {
  for (double v : {p_min, p_max, q_min, q_max}) {
    if (!std::isfinite(v)) throw std::invalid_argument("build_grid: extents must be finite");
  }
  if (n_p < 2 || n_q < 2) throw std::invalid_argument("build_grid: need at least 2 samples per axis");
  if (!(p_max > p_min) || !(q_max > q_min)) throw std::invalid_argument("build_grid: degenerate extents");
  return PhaseGrid{p_min, p_max, q_min, q_max, n_p, n_q};
}

}  // namespace prequant
