#pragma once

// Tensor-product B-spline interpolation of grid samples. The prefilter
// follows Unser's recursive scheme with mirror boundaries; evaluation
// outside the sampled rectangle returns zero.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>

#include "prequant/phasespace.hpp"

namespace prequant {

enum class Interpolation { cubic, quintic };

namespace detail {

template <int Degree>
struct SplinePoles;

template <>
struct SplinePoles<3> {
  static constexpr std::array<double, 1> values{-0.2679491924311227};  // sqrt(3) - 2
};

template <>
struct SplinePoles<5> {
  static constexpr std::array<double, 2> values{-0.430575347099973, -0.0430962882032647};
};

// In-place conversion of samples to interpolation coefficients along a
// strided line of n values.
template <int Degree, typename Scalar>
void prefilter_line(Scalar* c, Eigen::Index n, Eigen::Index stride) {
  if (n < 2) return;
  auto at = [&](Eigen::Index k) -> Scalar& { return c[k * stride]; };
  double lambda = 1.0;
  for (double z : SplinePoles<Degree>::values) lambda *= (1.0 - z) * (1.0 - 1.0 / z);
  for (Eigen::Index k = 0; k < n; ++k) at(k) *= lambda;

  for (double z : SplinePoles<Degree>::values) {
    // Causal initialization, mirror boundary.
    const auto horizon = static_cast<Eigen::Index>(std::ceil(std::log(1e-16) / std::log(std::abs(z))));
    Scalar sum;
    if (horizon < n) {
      double zn = z;
      sum = at(0);
      for (Eigen::Index k = 1; k < horizon; ++k) {
        sum += zn * at(k);
        zn *= z;
      }
    } else {
      double zn = z;
      const double iz = 1.0 / z;
      double z2n = std::pow(z, static_cast<double>(n - 1));
      sum = at(0) + z2n * at(n - 1);
      z2n *= z2n * iz;
      for (Eigen::Index k = 1; k < n - 1; ++k) {
        sum += (zn + z2n) * at(k);
        zn *= z;
        z2n *= iz;
      }
      sum /= (1.0 - zn * zn);
    }
    at(0) = sum;
    for (Eigen::Index k = 1; k < n; ++k) at(k) += z * at(k - 1);
    at(n - 1) = (z / (z * z - 1.0)) * (z * at(n - 2) + at(n - 1));
    for (Eigen::Index k = n - 2; k >= 0; --k) at(k) = z * (at(k + 1) - at(k));
  }
}

inline Eigen::Index mirror_index(Eigen::Index k, Eigen::Index n) {
  if (n == 1) return 0;
  const Eigen::Index period = 2 * n - 2;
  k %= period;
  if (k < 0) k += period;
  return k < n ? k : period - k;
}

// Values of the centered B-spline at x - k for the Degree+1 coefficients
// k = first, ..., first + Degree that touch x.
template <int Degree>
Eigen::Index spline_weights(double x, std::array<double, Degree + 1>& w) {
  const double y = x + 0.5 * (Degree + 1);
  const double base = std::floor(y);
  const double u = y - base;
  // N_k(u + j) for the cardinal spline N_k supported on [0, k+1].
  std::array<double, Degree + 1> b{};
  b[0] = 1.0;
  for (int k = 1; k <= Degree; ++k) {
    for (int j = k; j >= 0; --j) {
      const double t = u + j;
      const double left = j <= k - 1 ? t * b[j] : 0.0;
      const double right = j >= 1 ? (k + 1 - t) * b[j - 1] : 0.0;
      b[j] = (left + right) / k;
    }
  }
  // Coefficient index base - j carries N(u + j); list in increasing index.
  for (int j = 0; j <= Degree; ++j) w[Degree - j] = b[j];
  return static_cast<Eigen::Index>(base) - Degree;
}

}  // namespace detail

/// Interpolant of complex samples on a PhaseGrid (rows = p, cols = q).
template <int Degree>
class BSplineInterpolator {
  static_assert(Degree == 3 || Degree == 5, "supported spline degrees are 3 and 5");

 public:
  BSplineInterpolator(const PhaseGrid& grid, const Eigen::MatrixXcd& samples)
      : grid_(grid), coeffs_(samples) {
    if (samples.rows() != grid.n_p || samples.cols() != grid.n_q) {
      throw std::invalid_argument("BSplineInterpolator: samples do not match the grid");
    }
    const Eigen::Index np = coeffs_.rows(), nq = coeffs_.cols();
    for (Eigen::Index j = 0; j < nq; ++j) detail::prefilter_line<Degree>(&coeffs_(0, j), np, 1);
    for (Eigen::Index i = 0; i < np; ++i) detail::prefilter_line<Degree>(&coeffs_(i, 0), nq, np);
  }

  Complex operator()(double p, double q) const {
    if (!grid_.contains(p, q)) return {};
    const double x = (p - grid_.p_min) / grid_.dp();
    const double y = (q - grid_.q_min) / grid_.dq();
    std::array<double, Degree + 1> wx, wy;
    const Eigen::Index ix = detail::spline_weights<Degree>(x, wx);
    const Eigen::Index iy = detail::spline_weights<Degree>(y, wy);
    const Eigen::Index np = coeffs_.rows(), nq = coeffs_.cols();
    Complex sum{};
    for (int b = 0; b <= Degree; ++b) {
      const Eigen::Index col = detail::mirror_index(iy + b, nq);
      Complex row{};
      for (int a = 0; a <= Degree; ++a) row += wx[a] * coeffs_(detail::mirror_index(ix + a, np), col);
      sum += wy[b] * row;
    }
    return sum;
  }

  const Eigen::MatrixXcd& coefficients() const { return coeffs_; }

 private:
  PhaseGrid grid_;
  Eigen::MatrixXcd coeffs_;
};

/// Samples `source` on the back-traced points produced by `departure`
/// (a callable (p, q) -> (p', q')) with the chosen spline degree.
template <typename Departure, typename Post>
Eigen::MatrixXcd semi_lagrangian_gather(const PhaseGrid& grid, const Eigen::MatrixXcd& source,
                                        Interpolation interp, Departure&& departure, Post&& post) {
  Eigen::MatrixXcd out(grid.n_p, grid.n_q);
  auto run = [&](const auto& spline) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < grid.n_q; ++j) {
      for (int i = 0; i < grid.n_p; ++i) {
        const double p = grid.p(i), q = grid.q(j);
        const auto [pd, qd] = departure(p, q);
        out(i, j) = post(p, q, spline(pd, qd));
      }
    }
  };
  if (interp == Interpolation::cubic) {
    run(BSplineInterpolator<3>(grid, source));
  } else {
    run(BSplineInterpolator<5>(grid, source));
  }
  return out;
}

}  // namespace prequant
