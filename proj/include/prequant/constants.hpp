#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace prequant {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Physical constants shared by every module.
///
/// `hbar` is both the phase constant of the prequantum flow and the
/// polarization parameter of the quantum subspace (the two are identified).
/// `beta0` is the reference mass*frequency of the action-angle transform.
struct Constants {
  double hbar = 1.0;
  double beta0 = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
      throw std::invalid_argument("Constants: hbar must be positive and finite");
    }
    if (!(beta0 > 0.0) || !std::isfinite(beta0)) {
      throw std::invalid_argument("Constants: beta0 must be positive and finite");
    }
  }
};

}  // namespace prequant
