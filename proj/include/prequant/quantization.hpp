#pragma once

// Toeplitz quantization of observables and of prequantum generators. The
// symbolic route works on ladder polynomials; the numeric routes project onto
// the polarization basis with an exact quadrature.

#include <functional>

#include "prequant/algebra.hpp"
#include "prequant/fock.hpp"
#include "prequant/polarization.hpp"

namespace prequant {

/// Phase-space function of the dimensionless coordinate z.
using PhaseFunction = std::function<Complex(Complex)>;

/// z^k z*^m -> a^k a^dagger^m (antinormal).
LadderPolynomial toeplitz_quantize(const PhasePolynomial& f);

/// <eta_n'| f |eta_n> by quadrature. Throws on non-finite samples of f.
FockMatrix toeplitz_quantize_numeric(const PhaseFunction& f, const PolarizationBasis& basis,
                                     const QuadratureScheme& quad);
FockMatrix toeplitz_quantize_numeric(const PhasePolynomial& f, const PolarizationBasis& basis,
                                     const QuadratureScheme& quad);

/// int dmu f(z) |zeta_z><zeta_z| as a weighted sum of evaluation-state outer
/// products.
FockMatrix coherent_state_quantize_numeric(const PhaseFunction& f, const PolarizationBasis& basis,
                                           const QuadratureScheme& quad);

/// hbar G_f quantized termwise: a^k a^dagger^m - k m a^(k-1) a^dagger^(m-1).
LadderPolynomial quantize_generator(const PhasePolynomial& f);

/// The same operator as toeplitz_quantize(tuynman_tau(f)).
LadderPolynomial quantize_generator_tuynman(const PhasePolynomial& f);

/// <eta_n'| hbar G_f |eta_n> by quadrature, with the derivatives of eta_n
/// taken analytically.
FockMatrix quantize_generator_numeric(const PhasePolynomial& f, const PolarizationBasis& basis,
                                      const QuadratureScheme& quad);

}  // namespace prequant
