#include "prequant/notation.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace prequant {
namespace {

struct Factor {
  std::string name;
  int power = 1;
};

struct Term {
  Complex coefficient{1.0, 0.0};
  std::vector<Factor> factors;
};

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_space();
    if (at_end()) throw error("empty polynomial");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    while (true) {
      Term t = parse_term();
      t.coefficient *= sign;
      terms.push_back(std::move(t));
      skip_space();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') throw error("expected '+' or '-'");
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    return terms;
  }

 private:
  std::runtime_error error(const std::string& what) const {
    return std::runtime_error("polynomial parse error at column " + std::to_string(pos_ + 1) +
                              ": " + what + " in '" + std::string(text_) + "'");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  double parse_real() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) throw error("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  // (re), (re+imi), (imi), (re-imi)
  Complex parse_parenthesized() {
    ++pos_;
    skip_space();
    double re = 0.0, im = 0.0;
    double v = parse_real();
    skip_space();
    if (!at_end() && peek() == 'i') {
      im = v;
      ++pos_;
    } else {
      re = v;
      skip_space();
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        im = parse_real();
        skip_space();
        if (at_end() || peek() != 'i') throw error("expected 'i' after imaginary part");
        ++pos_;
      }
    }
    skip_space();
    if (at_end() || peek() != ')') throw error("expected ')'");
    ++pos_;
    return {re, im};
  }

  Term parse_term() {
    Term t;
    bool any = false;
    while (true) {
      skip_space();
      if (at_end()) break;
      const char ch = peek();
      if (ch == '+' || ch == '-') break;
      if (ch == '*') {
        ++pos_;
        continue;
      }
      if (ch == '(') {
        t.coefficient *= parse_parenthesized();
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        t.coefficient *= parse_real();
      } else {
        t.factors.push_back(parse_factor());
      }
      any = true;
    }
    if (!any) throw error("empty term");
    return t;
  }

  Factor parse_factor() {
    static constexpr std::string_view kNames[] = {"a†", "adag", "ad", "a", "z*", "z", "q", "p", "I"};
    for (std::string_view name : kNames) {
      if (starts_with(name)) {
        pos_ += name.size();
        Factor f{std::string(name), 1};
        if (f.name == "adag" || f.name == "ad") f.name = "a†";
        skip_space();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_space();
          const std::size_t start = pos_;
          while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
          if (start == pos_) throw error("expected integer exponent");
          f.power = std::stoi(std::string(text_.substr(start, pos_ - start)));
        }
        return f;
      }
    }
    throw error("unknown symbol");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PhasePolynomial parse_phase_polynomial(std::string_view text, const Constants& c) {
  PhasePolynomial result;
  for (const Term& t : TermParser(text).parse()) {
    PhasePolynomial term = PhasePolynomial::constant(t.coefficient);
    for (const Factor& f : t.factors) {
      PhasePolynomial base;
      if (f.name == "z") base = PhasePolynomial::z();
      else if (f.name == "z*") base = PhasePolynomial::zbar();
      else if (f.name == "q") base = PhasePolynomial::position(c);
      else if (f.name == "p") base = PhasePolynomial::momentum(c);
      else if (f.name == "I") base = PhasePolynomial::action(c);
      else throw std::runtime_error("symbol '" + f.name + "' is not a phase-space variable");
      term = term * pow(base, f.power);
    }
    result += term;
  }
  return result;
}

LadderPolynomial parse_ladder_polynomial(std::string_view text, Ordering ordering) {
  LadderPolynomial result = LadderPolynomial(TermMap{}, Ordering::normal);
  for (const Term& t : TermParser(text).parse()) {
    LadderPolynomial word = LadderPolynomial::identity() * t.coefficient;
    for (const Factor& f : t.factors) {
      LadderPolynomial letter;
      if (f.name == "a") letter = LadderPolynomial::word(f.power, 0, Ordering::normal);
      else if (f.name == "a†") letter = LadderPolynomial::word(0, f.power, Ordering::normal);
      else throw std::runtime_error("symbol '" + f.name + "' is not a ladder letter");
      word = ladder_multiply(word, letter);
    }
    result += word;
  }
  return reorder(result, ordering);
}

Complex parse_complex(std::string_view text) {
  const PhasePolynomial v = parse_phase_polynomial(text, Constants{});
  if (v.degree() != 0) throw std::runtime_error("expected a number, got '" + std::string(text) + "'");
  return v.coefficient(0, 0);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex c) {
  std::string im = format_number(c.imag());
  if (im.front() != '-') im = "+" + im;
  return "(" + format_number(c.real()) + im + "i)";
}

namespace {

std::string power_string(const char* letter, int power) {
  if (power == 0) return {};
  std::string s = letter;
  if (power > 1) s += "^" + std::to_string(power);
  return s;
}

std::string join_term(Complex c, const std::string& word) {
  if (word.empty()) return format_complex(c);
  if (c == Complex{1.0, 0.0}) return word;
  return format_complex(c) + " " + word;
}

template <typename Poly, typename WordFn>
std::string join_terms(const Poly& poly, WordFn word_of) {
  if (poly.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : poly.terms()) {
    if (!out.empty()) out += " + ";
    out += join_term(c, word_of(e.first, e.second));
  }
  return out;
}

std::string with_space(std::string a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + " " + b;
}

}  // namespace

std::string to_string(const PhasePolynomial& f) {
  return join_terms(f, [](int k, int m) { return with_space(power_string("z", k), power_string("z*", m)); });
}

std::string to_string(const LadderPolynomial& L) {
  if (L.ordering() == Ordering::antinormal) {
    return join_terms(L, [](int k, int m) { return with_space(power_string("a", k), power_string("a†", m)); });
  }
  return join_terms(L, [](int k, int m) { return with_space(power_string("a†", m), power_string("a", k)); });
}

std::string to_string(Ordering ordering) {
  return ordering == Ordering::antinormal ? "antinormal" : "normal";
}

}  // namespace prequant
