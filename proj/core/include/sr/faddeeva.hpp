#pragma once

#include <complex>

namespace sr {

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im(z) >= 0.
/// Weideman rational approximation for |z| < 7, Laplace continued fraction
/// beyond. Relative accuracy ~1e-12 over the needed domain.
/// Throws for |z| > 1e8 (accuracy flag per the erfcx contract).
std::complex<double> faddeeva_w(std::complex<double> z);

/// Scaled complementary error function
///   U(z) = (2/sqrt(pi)) int_z^inf e^{z^2 - s^2} ds = w(iz),
/// valid for Re(z) >= 0 (right half-plane).
std::complex<double> erfcx_complex(std::complex<double> z);

}  // namespace sr
