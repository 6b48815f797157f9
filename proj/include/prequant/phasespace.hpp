#pragma once

#include <Eigen/Dense>
#include <vector>

#include "prequant/constants.hpp"

namespace prequant {

enum class CoordSystem { pq, action_angle, complex };

/// A phase-space point in one of the three coordinate systems:
///   pq:            (p, q)
///   action_angle:  (I, theta), theta in [0, 2 pi)
///   complex:       (Re z, Im z)
struct PhasePoint {
  double first = 0.0;
  double second = 0.0;
};

/// Converts between (p,q), (I,theta) and z = (q sqrt(beta0) + i p / sqrt(beta0)) / sqrt(2 hbar).
/// theta is the angle with cos(theta) ~ q sqrt(beta0), sin(theta) ~ p / sqrt(beta0);
/// at I = 0 it is 0. Throws on non-finite input or I < 0.
PhasePoint convert_coords(PhasePoint point, CoordSystem from, CoordSystem to, const Constants& c);

Complex z_from_pq(double p, double q, const Constants& c);
/// Returns (p, q).
std::pair<double, double> pq_from_z(Complex z, const Constants& c);

struct QuadratureNode {
  double action;
  double angle;
};

/// Product rule in (I, theta): Gauss-Laguerre in I with weight exp(-I/hbar)
/// times the uniform trapezoid in theta. `weights` include the exp(-I/hbar)
/// factor, i.e. sum_i w_i g(node_i) ~ int dI dtheta exp(-I/hbar) g.
struct QuadratureScheme {
  std::vector<QuadratureNode> nodes;
  std::vector<double> weights;
  double hbar = 1.0;
  int order_action = 0;
  int order_angle = 0;

  std::size_t size() const { return nodes.size(); }
  /// Weight for integrating a plain function against dmu = dI dtheta.
  double measure_weight(std::size_t i) const;
  /// Dimensionless complex coordinate of node i.
  Complex z(std::size_t i) const;
};

/// Nodes ordered by action index, then angle index.
QuadratureScheme build_quadrature(int order_action, int order_angle, const Constants& c);

/// Gauss-Laguerre nodes and weights for int_0^inf exp(-u) g(u) du.
void gauss_laguerre(int n, std::vector<double>& nodes, std::vector<double>& weights);
/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Uniform rectangular grid on [p_min, p_max] x [q_min, q_max]. Sample (i, j)
/// sits at (p_i, q_j). Integration uses the trapezoid rule.
struct PhaseGrid {
  double p_min = -1.0, p_max = 1.0;
  double q_min = -1.0, q_max = 1.0;
  int n_p = 2, n_q = 2;

  double dp() const { return (p_max - p_min) / (n_p - 1); }
  double dq() const { return (q_max - q_min) / (n_q - 1); }
  double cell_measure() const { return dp() * dq(); }
  double p(int i) const { return p_min + i * dp(); }
  double q(int j) const { return q_min + j * dq(); }
  double weight(int i, int j) const;
  double total_measure() const;
  bool contains(double p, double q) const {
    return p >= p_min && p <= p_max && q >= q_min && q <= q_max;
  }

  /// Trapezoid integral of |samples|^2.
  double norm_squared(const Eigen::MatrixXcd& samples) const;
  /// Trapezoid inner product <a|b>.
  Complex inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;
};

PhaseGrid build_grid(double p_min, double p_max, double q_min, double q_max, int n_p, int n_q);

}  // namespace prequant
