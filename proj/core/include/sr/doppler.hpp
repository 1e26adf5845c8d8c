#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "sr/faddeeva.hpp"
#include "sr/types.hpp"

namespace sr {

/// Gaussian Doppler profile settings: Delta_D is the width of the detuning
/// distribution (units gamma), quad_order the Gauss-Hermite node count for
/// the thermal average.
struct DopplerParams {
  double Delta_D = 0.0;
  int quad_order = 40;
};

/// Gaussian average of the resonant Lorentzian kernel,
///   < 1/(Gf - i(Delta - delta)) >_delta
///     = sqrt(pi/2)/Delta_D * K,   K = w(i conj(z0)),
/// with z0 = (Gf + i Delta)/(sqrt(2) Delta_D). Returns K. Re(K) > 0 for
/// Gf > 0. This is the single documented formula standing for the paper-level
/// "U(i z0)": its values are pinned against direct quadrature in the tests,
/// and it reduces to 1/(Gf - i Delta) scaled by Delta_D sqrt(2/pi) as
/// Delta_D -> 0.
std::complex<double> averaged_lorentzian_kernel(double Gf, double Delta,
                                                double Delta_D);

/// Doppler-broadened self-consistent rates at a single Fourier detuning
/// Delta. With S = sqrt(pi/2)/Delta_D and K as above:
///   zeta_bar = (1/2) C rho gamma V S Re(K)
///   rho_bar  = rho - (1/2) C rho gamma V S Im(K)
///   Gamma    = gamma (e^{2 zeta_bar} - 1) A/V
///            + 2 C^2 rho^4 gamma^2 S Re(K) I(zeta_bar, rho_bar) Y
///   GammaBar = gamma^2 S Re(K) I(zeta_bar, rho_bar)
///              [3 C rho A + 2 C^2 rho^4 Y].
/// Singular-V handling matches solve_rates. Since Re(K) > 0, zeta_bar flips
/// sign only with V, exactly as the resonant zeta does.
RatePair doppler_rates(double Delta, const DopplerParams& dp,
                       const MediumParams& p, const Observables& obs,
                       double Gamma_guess);

/// Thermal average Gamma^D = int dDelta f_D(Delta) Gamma(Delta) by
/// Gauss-Hermite quadrature with Delta = sqrt(2) Delta_D x. Each node solves
/// its own fixed point, warm-started from its inner neighbour; summation
/// order is fixed (center outward, + node then - node) for determinism.
RatePair average_rates(const DopplerParams& dp, const MediumParams& p,
                       const Observables& obs, double Gamma_guess);

/// average_rates with a node-doubling self-check; throws if doubling
/// quad_order moves Gamma by more than rel_tol relative.
RatePair average_rates_checked(const DopplerParams& dp, const MediumParams& p,
                               const Observables& obs, double Gamma_guess,
                               double rel_tol = 1e-6);

/// Gauss-Hermite nodes/weights for weight e^{-x^2} (Golub-Welsch; cached).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermite& gauss_hermite(int n);

/// Least-squares power-law fit y = a x^b on log-log coordinates.
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace sr
