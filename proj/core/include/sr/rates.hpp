#pragma once

#include "sr/types.hpp"

namespace sr {

/// zeta = (1/2) C rho gamma / (Gamma + gamma/2) * V. Negative when V < 0.
/// Depends on (C, rho_size) only through the product C * rho_size.
double zeta(const MediumParams& p, double Gamma, double V);

/// I(zeta, rho) = [((zeta-1) e^zeta + cos rho)^2 + (rho e^zeta - sin rho)^2]
///               / (zeta^2 + rho^2)^2, evaluated exactly.
/// The large-argument asymptote e^{2 zeta}/(zeta^2 + rho^2) is a cross-check
/// only, never substituted. Throws at zeta = rho = 0.
double big_I(double zeta_val, double rho_size);

/// (e^{2 zeta} - 1)/V with zeta = k V: finite as V -> 0, evaluated by series
/// 2k (1 + zeta + (2/3) zeta^2 + ...) when |2 zeta| < 1e-6. `k` is the
/// V-independent slope (1/2) C rho gamma / (Gamma + gamma/2).
double pump_kernel(double k, double V);

/// The two additive contributions to Gamma at a trial value, exposed so the
/// term-by-term scaling properties can be asserted separately.
struct RateTerms {
  double pump;       ///< gamma (e^{2 zeta} - 1) A / V
  double coherence;  ///< 2 C^2 rho^4 gamma^2 I(zeta, rho) / (Gamma + gamma/2) * Y
};
RateTerms rate_terms(const MediumParams& p, const Observables& obs, double Gamma);

/// Solve the resonant (Delta = 0) self-consistent rate equation
///   Gamma = gamma (e^{2 zeta(Gamma)} - 1) A/V
///         + 2 C^2 rho^4 gamma^2 I(zeta(Gamma), rho)/(Gamma + gamma/2) Y
/// by damped fixed-point iteration with a bracketing-bisection fallback,
/// then evaluate GammaBar at the solution. Relative residual < 1e-10.
/// Throws on non-convergence or when the solution would need zeta > 350
/// (e^{700} overflows; signals a regime outside C * rho <~ 1e3).
RatePair solve_rates(const MediumParams& p, const Observables& obs,
                     double Gamma_guess);

}  // namespace sr
