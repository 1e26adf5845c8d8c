#pragma once

#include <Eigen/Dense>

namespace sr {

/// Self-consistent induced rates, in units of the free-space rate gamma.
/// Gamma is the single-particle induced pump/decay rate, GammaBar the
/// two-particle correlation damping rate.
struct RatePair {
  double Gamma = 0.0;
  double GammaBar = 0.0;
};

/// The medium knobs of the two-body formalism. C is the cooperativity
/// 2 pi c^3 N / omega^3 for number density N; rho_size = omega d / (2c)
/// measures the sample size d in radiation wavelengths; gamma is the
/// free-space rate p^2 omega0^3 / (3 pi hbar eps0 c^3).
struct MediumParams {
  double C = 0.0;
  double rho_size = 1.0;
  double gamma = 1.0;
};

/// Scalar observables closing the rate equations, plus the reduced
/// single-particle matrix they derive from.
struct Observables {
  double A = 0.0;  ///< total excited-level population
  double V = 0.0;  ///< top-bottom inversion
  double Y = 0.0;  ///< summed two-atom coherence (real part)
  double Y_imag_residue = 0.0;  ///< |Im Y|, should stay < 1e-10
  Eigen::MatrixXcd rho1;        ///< reduced single-particle density matrix
};

}  // namespace sr
