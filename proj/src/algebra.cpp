#include "prequant/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prequant {
namespace {

void drop_small(TermMap& terms) {
  double largest = 0.0;
  for (const auto& [e, c] : terms) largest = std::max(largest, std::abs(c));
  const double cutoff = kCanonicalRelativeCutoff * largest;
  std::erase_if(terms, [cutoff](const auto& kv) {
    return kv.second == Complex{} || std::abs(kv.second) < cutoff;
  });
}

void check_exponents(const Exponents& e) {
  if (e.first < 0 || e.second < 0) {
    throw std::invalid_argument("polynomial exponents must be non-negative");
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Number of ways of contracting j annihilators against j creators when moving
// a^k past a^dagger^m: j! C(k,j) C(m,j).
double contraction_weight(int k, int m, int j) {
  return factorial(j) * binomial(k, j) * binomial(m, j);
}

}  // namespace

// ---------------------------------------------------------------------------
// PhasePolynomial

PhasePolynomial::PhasePolynomial(TermMap terms) : terms_(std::move(terms)) {
  for (const auto& [e, c] : terms_) check_exponents(e);
  canonicalize();
}

void PhasePolynomial::canonicalize() { drop_small(terms_); }

PhasePolynomial PhasePolynomial::constant(Complex c) { return monomial(0, 0, c); }

PhasePolynomial PhasePolynomial::monomial(int k, int m, Complex c) {
  return PhasePolynomial(TermMap{{{k, m}, c}});
}

PhasePolynomial PhasePolynomial::position(const Constants& c) {
  const double s = std::sqrt(c.hbar / (2.0 * c.beta0));
  return PhasePolynomial(TermMap{{{1, 0}, s}, {{0, 1}, s}});
}

PhasePolynomial PhasePolynomial::momentum(const Constants& c) {
  const Complex s = -kI * std::sqrt(c.hbar * c.beta0 / 2.0);
  return PhasePolynomial(TermMap{{{1, 0}, s}, {{0, 1}, -s}});
}

PhasePolynomial PhasePolynomial::action(const Constants& c) { return monomial(1, 1, c.hbar); }

int PhasePolynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

Complex PhasePolynomial::coefficient(int k, int m) const {
  auto it = terms_.find({k, m});
  return it == terms_.end() ? Complex{} : it->second;
}

Complex PhasePolynomial::operator()(Complex z) const {
  const Complex zb = std::conj(z);
  Complex sum{};
  for (const auto& [e, c] : terms_) {
    sum += c * std::pow(z, e.first) * std::pow(zb, e.second);
  }
  return sum;
}

PhasePolynomial PhasePolynomial::conj() const {
  TermMap out;
  for (const auto& [e, c] : terms_) out[{e.second, e.first}] = std::conj(c);
  return PhasePolynomial(std::move(out));
}

bool PhasePolynomial::is_real(double tol) const { return distance(*this, conj()) <= tol; }

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) terms_[e] += c;
  canonicalize();
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) terms_[e] -= c;
  canonicalize();
  return *this;
}

PhasePolynomial& PhasePolynomial::operator*=(Complex s) {
  for (auto& [e, c] : terms_) c *= s;
  canonicalize();
  return *this;
}

PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
  TermMap out;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    }
  }
  return PhasePolynomial(std::move(out));
}

PhasePolynomial pow(const PhasePolynomial& f, int n) {
  if (n < 0) throw std::invalid_argument("pow: negative exponent");
  PhasePolynomial result = PhasePolynomial::constant(1.0);
  for (int i = 0; i < n; ++i) result = result * f;
  return result;
}

double distance(const PhasePolynomial& a, const PhasePolynomial& b) {
  double d = 0.0;
  for (const auto& [e, c] : a.terms()) d = std::max(d, std::abs(c - b.coefficient(e.first, e.second)));
  for (const auto& [e, c] : b.terms()) {
    if (!a.terms().contains(e)) d = std::max(d, std::abs(c));
  }
  return d;
}

PhasePolynomial d_dz(const PhasePolynomial& f) {
  TermMap out;
  for (const auto& [e, c] : f.terms()) {
    if (e.first > 0) out[{e.first - 1, e.second}] += c * static_cast<double>(e.first);
  }
  return PhasePolynomial(std::move(out));
}

PhasePolynomial d_dzbar(const PhasePolynomial& f) {
  TermMap out;
  for (const auto& [e, c] : f.terms()) {
    if (e.second > 0) out[{e.first, e.second - 1}] += c * static_cast<double>(e.second);
  }
  return PhasePolynomial(std::move(out));
}

PhasePolynomial mixed_derivative(const PhasePolynomial& f) {
  TermMap out;
  for (const auto& [e, c] : f.terms()) {
    const auto [k, m] = e;
    if (k > 0 && m > 0) out[{k - 1, m - 1}] += c * static_cast<double>(k * m);
  }
  return PhasePolynomial(std::move(out));
}

// dz/dp = i / sqrt(2 hbar beta0) = -dz*/dp,  dz/dq = dz*/dq = sqrt(beta0 / 2 hbar).
PhasePolynomial d_dp(const PhasePolynomial& f, const Constants& c) {
  const Complex s = kI / std::sqrt(2.0 * c.hbar * c.beta0);
  return s * (d_dz(f) - d_dzbar(f));
}

PhasePolynomial d_dq(const PhasePolynomial& f, const Constants& c) {
  const double s = std::sqrt(c.beta0 / (2.0 * c.hbar));
  return s * (d_dz(f) + d_dzbar(f));
}

PhasePolynomial poisson_bracket(const PhasePolynomial& h, const PhasePolynomial& f,
                                const Constants& c) {
  return (kI / c.hbar) * (d_dz(h) * d_dzbar(f) - d_dzbar(h) * d_dz(f));
}

PhasePolynomial gauge_potential(const PhasePolynomial& f) {
  TermMap out;
  for (const auto& [e, c] : f.terms()) {
    out[e] = -0.5 * static_cast<double>(e.first + e.second) * c;
  }
  return PhasePolynomial(std::move(out));
}

PhasePolynomial tuynman_tau(const PhasePolynomial& f) { return f - mixed_derivative(f); }

PhasePolynomial heat_flow(const PhasePolynomial& f, HeatDirection direction) {
  const double sign = direction == HeatDirection::forward ? 1.0 : -1.0;
  PhasePolynomial result = f;
  PhasePolynomial term = f;
  for (int j = 1; !term.is_zero(); ++j) {
    term = mixed_derivative(term) * (sign / j);
    result += term;
  }
  return result;
}

PhasePolynomial inverse_tuynman(const PhasePolynomial& f) {
  PhasePolynomial result = f;
  PhasePolynomial term = mixed_derivative(f);
  while (!term.is_zero()) {
    result += term;
    term = mixed_derivative(term);
  }
  return result;
}

// ---------------------------------------------------------------------------
// LadderPolynomial

LadderPolynomial::LadderPolynomial(TermMap terms, Ordering ordering)
    : terms_(std::move(terms)), ordering_(ordering) {
  for (const auto& [e, c] : terms_) check_exponents(e);
  canonicalize();
}

void LadderPolynomial::canonicalize() { drop_small(terms_); }

LadderPolynomial LadderPolynomial::identity(Ordering ordering) { return word(0, 0, ordering); }

LadderPolynomial LadderPolynomial::word(int k, int m, Ordering ordering, Complex c) {
  return LadderPolynomial(TermMap{{{k, m}, c}}, ordering);
}

int LadderPolynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

Complex LadderPolynomial::coefficient(int k, int m) const {
  auto it = terms_.find({k, m});
  return it == terms_.end() ? Complex{} : it->second;
}

LadderPolynomial LadderPolynomial::adjoint() const {
  // (a^k a+^m)^dagger = a^m a+^k, and likewise for the normal words.
  TermMap out;
  for (const auto& [e, c] : terms_) out[{e.second, e.first}] = std::conj(c);
  return LadderPolynomial(std::move(out), ordering_);
}

LadderPolynomial& LadderPolynomial::operator+=(const LadderPolynomial& rhs) {
  const LadderPolynomial r = reorder(rhs, ordering_);
  for (const auto& [e, c] : r.terms_) terms_[e] += c;
  canonicalize();
  return *this;
}

LadderPolynomial& LadderPolynomial::operator-=(const LadderPolynomial& rhs) {
  const LadderPolynomial r = reorder(rhs, ordering_);
  for (const auto& [e, c] : r.terms_) terms_[e] -= c;
  canonicalize();
  return *this;
}

LadderPolynomial& LadderPolynomial::operator*=(Complex s) {
  for (auto& [e, c] : terms_) c *= s;
  canonicalize();
  return *this;
}

LadderPolynomial reorder(const LadderPolynomial& L, Ordering target) {
  if (L.ordering() == target) return L;
  // a^k a+^m     =  sum_j       j! C(k,j) C(m,j) a+^{m-j} a^{k-j}
  // a+^m a^k     =  sum_j (-1)^j j! C(k,j) C(m,j) a^{k-j} a+^{m-j}
  const double sign = target == Ordering::normal ? 1.0 : -1.0;
  TermMap out;
  for (const auto& [e, c] : L.terms()) {
    const auto [k, m] = e;
    double s = 1.0;
    for (int j = 0; j <= std::min(k, m); ++j) {
      out[{k - j, m - j}] += c * (s * contraction_weight(k, m, j));
      s *= sign;
    }
  }
  return LadderPolynomial(std::move(out), target);
}

LadderPolynomial ladder_multiply(const LadderPolynomial& L1, const LadderPolynomial& L2) {
  const LadderPolynomial a = reorder(L1, Ordering::normal);
  const LadderPolynomial b = reorder(L2, Ordering::normal);
  // (a+^m1 a^k1)(a+^m2 a^k2) = a+^m1 (a^k1 a+^m2) a^k2, then normal-order the middle.
  TermMap out;
  for (const auto& [e1, c1] : a.terms()) {
    for (const auto& [e2, c2] : b.terms()) {
      const auto [k1, m1] = e1;
      const auto [k2, m2] = e2;
      for (int j = 0; j <= std::min(k1, m2); ++j) {
        out[{k1 + k2 - j, m1 + m2 - j}] += c1 * c2 * contraction_weight(k1, m2, j);
      }
    }
  }
  return LadderPolynomial(std::move(out), Ordering::normal);
}

double distance(const LadderPolynomial& a, const LadderPolynomial& b) {
  const LadderPolynomial an = reorder(a, Ordering::normal);
  const LadderPolynomial bn = reorder(b, Ordering::normal);
  double d = 0.0;
  for (const auto& [e, c] : an.terms()) d = std::max(d, std::abs(c - bn.coefficient(e.first, e.second)));
  for (const auto& [e, c] : bn.terms()) {
    if (!an.terms().contains(e)) d = std::max(d, std::abs(c));
  }
  return d;
}

}  // namespace prequant
