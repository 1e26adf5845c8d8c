#include "sr/doppler.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "sr/rates.hpp"

namespace sr {
namespace {

using cplx = std::complex<double>;

constexpr double kZetaCap = 350.0;
constexpr double kGammaHi = 1e9;
constexpr double kResidualTol = 1e-10;

struct DopplerTerms {
  double zeta_bar;
  double rho_bar;
  double s_reK;  // sqrt(pi/2)/Delta_D * Re K, the averaged Lorentzian weight
};

DopplerTerms eval_terms(double Gamma, double Delta, const DopplerParams& dp,
                        const MediumParams& p, double V) {
  const double gf = Gamma + 0.5 * p.gamma;
  const cplx K = averaged_lorentzian_kernel(gf, Delta, dp.Delta_D);
  const double S = std::sqrt(M_PI / 2.0) / dp.Delta_D;
  DopplerTerms t;
  t.s_reK = S * K.real();
  t.zeta_bar = 0.5 * p.C * p.rho_size * p.gamma * V * t.s_reK;
  t.rho_bar = p.rho_size -
              0.5 * p.C * p.rho_size * p.gamma * V * S * K.imag();
  return t;
}

double doppler_rhs(double Gamma, double Delta, const DopplerParams& dp,
                   const MediumParams& p, const Observables& obs,
                   bool* saturated) {
  const auto t = eval_terms(Gamma, Delta, dp, p, obs.V);
  // zeta_bar = kbar * V with kbar independent of V, as in the resonant case.
  const double kbar = 0.5 * p.C * p.rho_size * p.gamma * t.s_reK;
  if (t.zeta_bar > kZetaCap) {
    *saturated = true;
    return 1e300;
  }
  const double r2 = p.rho_size * p.rho_size;
  const double first = p.gamma * pump_kernel(kbar, obs.V) * obs.A;
  const double second = 2.0 * p.C * p.C * r2 * r2 * p.gamma * p.gamma *
                        t.s_reK * big_I(t.zeta_bar, t.rho_bar) * obs.Y;
  return first + second;
}

}  // namespace

std::complex<double> averaged_lorentzian_kernel(double Gf, double Delta,
                                                double Delta_D) {
  if (Delta_D <= 0.0)
    throw std::domain_error("averaged_lorentzian_kernel: Delta_D > 0 required");
  const double s = 1.0 / (std::sqrt(2.0) * Delta_D);
  // w(i conj(z0)) = w((Delta + i Gf) * s); argument is in the UHP for Gf > 0.
  return faddeeva_w(cplx(Delta * s, Gf * s));
}

RatePair doppler_rates(double Delta, const DopplerParams& dp,
                       const MediumParams& p, const Observables& obs,
                       double Gamma_guess) {
  if (dp.Delta_D <= 0.0)
    throw std::domain_error("doppler_rates: Delta_D > 0 required");
  RatePair out;
  if (p.C == 0.0) return out;

  bool saturated = false;
  auto f = [&](double g) {
    return doppler_rhs(g, Delta, dp, p, obs, &saturated);
  };

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
    if (resid > prev_resid && ++worse_count >= 3) break;
    prev_resid = resid;
    saturated = false;
    double next = 0.5 * g + 0.5 * std::min(fg, kGammaHi);
    g = std::max(next, 0.0);
  }

  if (!converged) {
    saturated = false;
    const double f0 = f(0.0);
    if (!saturated && f0 <= 0.0) {
      g = 0.0;
    } else {
      double lo = 0.0, hi = std::max(2.0 * std::abs(Gamma_guess), 1.0);
      saturated = false;
      while (hi - f(hi) < 0.0) {
        hi *= 4.0;
        if (hi > kGammaHi)
          throw std::runtime_error("doppler_rates: no bracket up to 1e9 gamma");
      }
      for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(hi, p.gamma);
           ++it) {
        const double mid = 0.5 * (lo + hi);
        saturated = false;
        if (mid - f(mid) < 0.0)
          lo = mid;
        else
          hi = mid;
      }
      g = 0.5 * (lo + hi);
      saturated = false;
      const double fg = f(g);
      if (saturated)
        throw std::overflow_error("doppler_rates: zeta_bar exceeds 350");
      if (std::abs(g - fg) > 1e-7 * std::max(std::abs(g), p.gamma))
        throw std::runtime_error("doppler_rates: fixed point did not converge");
    }
  }
  out.Gamma = std::max(g, 0.0);

  const auto t = eval_terms(out.Gamma, Delta, dp, p, obs.V);
  const double r2 = p.rho_size * p.rho_size;
  out.GammaBar = p.gamma * p.gamma * t.s_reK * big_I(t.zeta_bar, t.rho_bar) *
                 (3.0 * p.C * p.rho_size * obs.A +
                  2.0 * p.C * p.C * r2 * r2 * obs.Y);
  return out;
}

RatePair average_rates(const DopplerParams& dp, const MediumParams& p,
                       const Observables& obs, double Gamma_guess) {
  if (dp.quad_order < 8)
    throw std::domain_error("average_rates: quad_order >= 8 required");
  const auto& gh = gauss_hermite(dp.quad_order);
  const int n = dp.quad_order;
  const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);

  // Evaluate center-outward so each node warm-starts from its inner
  // neighbour; accumulate in the same fixed order.
  std::vector<RatePair> node_rates(n);
  const int mid_hi = n / 2;          // first node with x >= 0
  const int mid_lo = mid_hi - 1;     // last node with x < 0
  double guess = Gamma_guess;
  for (int i = mid_hi; i < n; ++i) {
    const double Delta = std::sqrt(2.0) * dp.Delta_D * gh.nodes[i];
    node_rates[i] = doppler_rates(Delta, dp, p, obs, guess);
    guess = node_rates[i].Gamma;
  }
  guess = Gamma_guess;
  for (int i = mid_lo; i >= 0; --i) {
    const double Delta = std::sqrt(2.0) * dp.Delta_D * gh.nodes[i];
    node_rates[i] = doppler_rates(Delta, dp, p, obs, guess);
    guess = node_rates[i].Gamma;
  }

  RatePair out;
  for (int i = 0; i < n; ++i) {
    const double w = gh.weights[i] * inv_sqrt_pi;
    out.Gamma += w * node_rates[i].Gamma;
    out.GammaBar += w * node_rates[i].GammaBar;
  }
  return out;
}

RatePair average_rates_checked(const DopplerParams& dp, const MediumParams& p,
                               const Observables& obs, double Gamma_guess,
                               double rel_tol) {
  const RatePair coarse = average_rates(dp, p, obs, Gamma_guess);
  DopplerParams fine = dp;
  fine.quad_order = 2 * dp.quad_order;
  const RatePair refined = average_rates(fine, p, obs, Gamma_guess);
  const double denom = std::max(std::abs(refined.Gamma), p.gamma);
  if (std::abs(refined.Gamma - coarse.Gamma) > rel_tol * denom)
    throw std::runtime_error(
        "average_rates: node-doubling check failed at quad_order = " +
        std::to_string(dp.quad_order));
  return refined;
}

const GaussHermite& gauss_hermite(int n) {
  static std::map<int, GaussHermite> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Golub-Welsch on the Hermite Jacobi matrix: off-diagonal sqrt(k/2).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussHermite gh;
  gh.nodes.resize(n);
  gh.weights.resize(n);
  const double mu0 = std::sqrt(M_PI);  // int e^{-x^2} dx
  for (int i = 0; i < n; ++i) {
    gh.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    gh.weights[i] = mu0 * v0 * v0;
  }
  return cache.emplace(n, std::move(gh)).first->second;
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_power_law: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    if (x <= 0.0 || y <= 0.0)
      throw std::invalid_argument("fit_power_law: points must be positive");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  if (vxx <= 0.0)
    throw std::invalid_argument("fit_power_law: degenerate (single abscissa)");
  PowerLawFit fit;
  fit.exponent = vxy / vxx;
  fit.prefactor = std::exp((sy - fit.exponent * sx) / n);
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

}  // namespace sr
