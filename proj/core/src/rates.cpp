#include "sr/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sr {
namespace {

constexpr double kZetaCap = 350.0;   // e^{2*350} overflows double
constexpr double kGammaHi = 1e9;     // bracket ceiling for the fixed point
constexpr double kResidualTol = 1e-10;

// Gamma = f(Gamma) right-hand side; saturates instead of overflowing so the
// root search can traverse zeta > kZetaCap regions. *saturated reports it.
double rate_rhs(const MediumParams& p, const Observables& obs, double Gamma,
                bool* saturated) {
  const double gf = Gamma + 0.5 * p.gamma;
  const double k = 0.5 * p.C * p.rho_size * p.gamma / gf;
  const double z = k * obs.V;
  if (z > kZetaCap) {
    *saturated = true;
    return 1e300;
  }
  const double first = p.gamma * pump_kernel(k, obs.V) * obs.A;
  const double r2 = p.rho_size * p.rho_size;
  const double second = 2.0 * p.C * p.C * r2 * r2 * p.gamma * p.gamma *
                        big_I(z, p.rho_size) / gf * obs.Y;
  return first + second;
}

}  // namespace

double zeta(const MediumParams& p, double Gamma, double V) {
  return 0.5 * p.C * p.rho_size * p.gamma / (Gamma + 0.5 * p.gamma) * V;
}

double big_I(double z, double rho) {
  if (z == 0.0 && rho == 0.0)
    throw std::domain_error("big_I: undefined at zeta = rho = 0");
  const double ez = std::exp(z);
  const double re = (z - 1.0) * ez + std::cos(rho);
  const double im = rho * ez - std::sin(rho);
  const double d = z * z + rho * rho;
  return (re * re + im * im) / (d * d);
}

double pump_kernel(double k, double V) {
  const double z = k * V;
  if (std::abs(2.0 * z) < 1e-6) {
    // (e^{2z}-1)/V = 2k (1 + z + (2/3) z^2 + (1/3) z^3 + ...)
    return 2.0 * k * (1.0 + z + (2.0 / 3.0) * z * z);
  }
  return std::expm1(2.0 * z) / V;
}

RateTerms rate_terms(const MediumParams& p, const Observables& obs,
                     double Gamma) {
  const double gf = Gamma + 0.5 * p.gamma;
  const double k = 0.5 * p.C * p.rho_size * p.gamma / gf;
  const double z = k * obs.V;
  const double r2 = p.rho_size * p.rho_size;
  return {p.gamma * pump_kernel(k, obs.V) * obs.A,
          2.0 * p.C * p.C * r2 * r2 * p.gamma * p.gamma *
              big_I(z, p.rho_size) / gf * obs.Y};
}

RatePair solve_rates(const MediumParams& p, const Observables& obs,
                     double Gamma_guess) {
  if (p.C < 0.0) throw std::domain_error("solve_rates: C must be >= 0");
  RatePair out;
  if (p.C == 0.0) return out;  // every term carries C

  bool saturated = false;
  auto f = [&](double g) { return rate_rhs(p, obs, g, &saturated); };
  const double scale = std::max(std::abs(Gamma_guess), p.gamma);

  // Damped iteration, warm-started from the previous timestep's Gamma.
  double g = std::max(Gamma_guess, 0.0);
  bool converged = false;
  double prev_resid = std::numeric_limits<double>::infinity();
  int worse_count = 0;
  for (int it = 0; it < 500; ++it) {
    const double fg = f(g);
    const double resid = std::abs(g - fg);
    if (!saturated && resid <= kResidualTol * std::max(std::abs(g), p.gamma)) {
      converged = true;
      break;
    }
    if (!std::isfinite(fg) && !saturated)
      throw std::runtime_error("solve_rates: NaN in rate equation at Gamma = " +
                               std::to_string(g));
    // Oscillation / divergence: hand over to bisection.
    if (resid > prev_resid) {
      if (++worse_count >= 3) break;
    }
    prev_resid = resid;
    saturated = false;
    double next = 0.5 * g + 0.5 * std::min(fg, kGammaHi);
    if (next < 0.0) next = 0.0;
    g = next;
  }

  if (!converged) {
    // g(x) = x - f(x): negative where the rhs still exceeds x, positive above
    // the fixed point. f is bounded for large x so a ceiling bracket exists.
    saturated = false;
    const double f0 = f(0.0);
    if (!saturated && f0 <= 0.0) {
      out.Gamma = 0.0;  // formulas give a nonpositive rate; clamp at zero
    } else {
      double lo = 0.0, hi = std::max(2.0 * scale, 1.0);
      saturated = false;
      while (hi - f(hi) < 0.0) {
        hi *= 4.0;
        if (hi > kGammaHi)
          throw std::runtime_error("solve_rates: no bracket up to 1e9 gamma");
      }
      for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(hi, p.gamma);
           ++it) {
        const double mid = 0.5 * (lo + hi);
        saturated = false;
        if (mid - f(mid) < 0.0)
          lo = mid;
        else
          hi = mid;
      }
      // The bracket pins the root to relative machine precision even when
      // the residual g - f(g) is steep; no residual re-check needed.
      g = 0.5 * (lo + hi);
      saturated = false;
      (void)f(g);
      if (saturated)
        throw std::overflow_error(
            "solve_rates: converged zeta exceeds 350 (unphysical C*rho regime)");
    }
    out.Gamma = std::max(g, 0.0);
  } else {
    out.Gamma = std::max(g, 0.0);
  }

  const double gf = out.Gamma + 0.5 * p.gamma;
  const double z = zeta(p, out.Gamma, obs.V);
  if (z > kZetaCap)
    throw std::overflow_error("solve_rates: zeta exceeds 350 at solution");
  const double r2 = p.rho_size * p.rho_size;
  out.GammaBar = p.gamma * p.gamma * big_I(z, p.rho_size) / gf *
                 (3.0 * p.C * p.rho_size * obs.A + 2.0 * p.C * p.C * r2 * r2 * obs.Y);
  return out;
}

}  // namespace sr
