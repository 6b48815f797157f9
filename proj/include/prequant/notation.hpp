#pragma once

// Plain-text notation for polynomials, used by the CLI and config files.
//
// Phase polynomials: sums of terms such as `(1.5+0i) z^2 z*^1`, `q`, `p^2`,
// `2 I`. The letters q, p and I expand through the active Constants.
// Ladder polynomials: words in `a` and `a†` (ASCII alias `ad`), e.g.
// `a a† - 1`. Words are multiplied in the written order, so any word is
// accepted regardless of the requested output ordering.

#include <string>
#include <string_view>

#include "prequant/algebra.hpp"

namespace prequant {

PhasePolynomial parse_phase_polynomial(std::string_view text, const Constants& c);
LadderPolynomial parse_ladder_polynomial(std::string_view text, Ordering ordering);

/// A single number: `1.5`, `-2`, `(0.5-1i)`.
Complex parse_complex(std::string_view text);

std::string format_number(double x);
std::string format_complex(Complex c);
std::string to_string(const PhasePolynomial& f);
std::string to_string(const LadderPolynomial& L);
std::string to_string(Ordering ordering);

}  // namespace prequant
