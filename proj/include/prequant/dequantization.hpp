#pragma once

// Covariant (Q) and contravariant (P) symbols and the reconstruction of a
// classical Hamiltonian from a quantum one.

#include "prequant/algebra.hpp"
#include "prequant/fock.hpp"

namespace prequant {

/// Normalized coherent-state expectation: normal order, a^dagger^m a^k -> z*^m z^k.
PhasePolynomial q_symbol(const LadderPolynomial& L);

/// The f with toeplitz_quantize(f) == L: antinormal order, a^k a^dagger^m -> z^k z*^m.
PhasePolynomial p_symbol(const LadderPolynomial& L);

/// <zeta_z0| M |zeta_z0> / <zeta_z0|zeta_z0> for a truncated matrix.
Complex q_symbol_numeric(const FockMatrix& M, Complex z0, const Constants& c);

/// Least-squares fit of a normal-ordered ladder polynomial of degree
/// <= maxdeg to M on its leading (dim - maxdeg) block. Requires
/// dim >= maxdeg + 3. Throws when the relative residual exceeds 1e-6.
LadderPolynomial matrix_to_ladder(const FockMatrix& M, int maxdeg, double* residual = nullptr);

/// The classical H with quantize_generator(H) == L: sum_j D^j applied to the
/// P-symbol.
PhasePolynomial dequantize_hamiltonian(const LadderPolynomial& L);

}  // namespace prequant
