#pragma once

// Exact symbolic calculus on phase-space polynomials in (z, z*) and on
// polynomials in the ladder letters a, a^dagger.

#include <map>
#include <utility>

#include "prequant/constants.hpp"

namespace prequant {

/// Exponent pair (k, m). For a PhasePolynomial it labels z^k z*^m; for a
/// LadderPolynomial it labels a^k a^dagger^m (antinormal) or a^dagger^m a^k
/// (normal).
using Exponents = std::pair<int, int>;
using TermMap = std::map<Exponents, Complex>;

/// Coefficients smaller than this fraction of the largest one are dropped.
inline constexpr double kCanonicalRelativeCutoff = 1e-14;

/// Finite sum of c_{km} z^k z*^m with z the dimensionless complex phase-space
/// coordinate. Always held in canonical form (no stored zeros).
class PhasePolynomial {
 public:
  PhasePolynomial() = default;
  explicit PhasePolynomial(TermMap terms);

  static PhasePolynomial constant(Complex c);
  static PhasePolynomial monomial(int k, int m, Complex c = 1.0);
  static PhasePolynomial z() { return monomial(1, 0); }
  static PhasePolynomial zbar() { return monomial(0, 1); }

  // Physical coordinates expressed in z, z*.
  static PhasePolynomial position(const Constants& c);
  static PhasePolynomial momentum(const Constants& c);
  static PhasePolynomial action(const Constants& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximal k+m; 0 for the zero polynomial.
  int degree() const;
  Complex coefficient(int k, int m) const;

  Complex operator()(Complex z) const;

  /// Pointwise complex conjugate of the function: c_{km} -> conj(c_{mk}).
  PhasePolynomial conj() const;
  /// True when c_{km} == conj(c_{mk}) up to `tol` (absolute).
  bool is_real(double tol = 1e-12) const;

  PhasePolynomial& operator+=(const PhasePolynomial& rhs);
  PhasePolynomial& operator-=(const PhasePolynomial& rhs);
  PhasePolynomial& operator*=(Complex s);

  friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
  friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
  friend PhasePolynomial operator*(PhasePolynomial a, Complex s) { return a *= s; }
  friend PhasePolynomial operator*(Complex s, PhasePolynomial a) { return a *= s; }
  friend PhasePolynomial operator-(PhasePolynomial a) { return a *= -1.0; }
  friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b);

 private:
  void canonicalize();
  TermMap terms_;
};

PhasePolynomial pow(const PhasePolynomial& f, int n);

/// Largest absolute coefficient difference.
double distance(const PhasePolynomial& a, const PhasePolynomial& b);
inline bool approx_equal(const PhasePolynomial& a, const PhasePolynomial& b, double tol = 1e-12) {
  return distance(a, b) <= tol;
}

PhasePolynomial d_dz(const PhasePolynomial& f);
PhasePolynomial d_dzbar(const PhasePolynomial& f);
/// D f = d^2 f / dz dz*.
PhasePolynomial mixed_derivative(const PhasePolynomial& f);
PhasePolynomial d_dp(const PhasePolynomial& f, const Constants& c);
PhasePolynomial d_dq(const PhasePolynomial& f, const Constants& c);

/// {h, f} = (i/hbar)(dh/dz df/dz* - dh/dz* df/dz).
PhasePolynomial poisson_bracket(const PhasePolynomial& h, const PhasePolynomial& f,
                                const Constants& c);

/// Lambda_f = -1/2 (z df/dz + z* df/dz*); monomials scale by -(k+m)/2.
PhasePolynomial gauge_potential(const PhasePolynomial& f);

/// tau(f) = f - d^2 f / dz dz*.
PhasePolynomial tuynman_tau(const PhasePolynomial& f);

enum class HeatDirection { forward, backward };

/// exp(+D) f (forward) or exp(-D) f (backward). The series terminates because
/// D lowers the total degree by two.
PhasePolynomial heat_flow(const PhasePolynomial& f, HeatDirection direction);

/// (1 - D)^{-1} f as the terminating Neumann series sum_j D^j f.
PhasePolynomial inverse_tuynman(const PhasePolynomial& f);

enum class Ordering { antinormal, normal };

/// Finite sum of ladder words with an ordering tag. Antinormal term (k,m) is
/// a^k a^dagger^m; normal term (k,m) is a^dagger^m a^k.
class LadderPolynomial {
 public:
  LadderPolynomial() = default;
  LadderPolynomial(TermMap terms, Ordering ordering);

  static LadderPolynomial identity(Ordering ordering = Ordering::normal);
  static LadderPolynomial word(int k, int m, Ordering ordering, Complex c = 1.0);
  static LadderPolynomial annihilation() { return word(1, 0, Ordering::normal); }
  static LadderPolynomial creation() { return word(0, 1, Ordering::normal); }

  const TermMap& terms() const { return terms_; }
  Ordering ordering() const { return ordering_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Complex coefficient(int k, int m) const;

  /// Hermitian adjoint, keeping the ordering tag.
  LadderPolynomial adjoint() const;

  // Mixed-tag arithmetic converts the right operand to the left operand's tag.
  LadderPolynomial& operator+=(const LadderPolynomial& rhs);
  LadderPolynomial& operator-=(const LadderPolynomial& rhs);
  LadderPolynomial& operator*=(Complex s);

  friend LadderPolynomial operator+(LadderPolynomial a, const LadderPolynomial& b) { return a += b; }
  friend LadderPolynomial operator-(LadderPolynomial a, const LadderPolynomial& b) { return a -= b; }
  friend LadderPolynomial operator*(LadderPolynomial a, Complex s) { return a *= s; }
  friend LadderPolynomial operator*(Complex s, LadderPolynomial a) { return a *= s; }
  friend LadderPolynomial operator-(LadderPolynomial a) { return a *= -1.0; }

 private:
  void canonicalize();
  TermMap terms_;
  Ordering ordering_ = Ordering::normal;
};

/// Rewrites L in the target ordering using [a, a^dagger] = 1.
LadderPolynomial reorder(const LadderPolynomial& L, Ordering target);

/// Operator product, returned in normal ordering.
LadderPolynomial ladder_multiply(const LadderPolynomial& L1, const LadderPolynomial& L2);

/// Coefficient-wise distance after bringing both operands to normal order.
double distance(const LadderPolynomial& a, const LadderPolynomial& b);
inline bool approx_equal(const LadderPolynomial& a, const LadderPolynomial& b, double tol = 1e-12) {
  return distance(a, b) <= tol;
}

}  // namespace prequant
