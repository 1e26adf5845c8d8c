#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sr/scenario.hpp"
#include "sr/types.hpp"

namespace sr {

/// One output-grid sample of a two-body/doppler run. Units: t in 1/gamma,
/// I_em in gamma hbar omega0 per particle, rates in gamma.
struct SeriesPoint {
  double t = 0.0;
  double I_em = 0.0;
  double Gamma = 0.0;
  double GammaBar = 0.0;
  double A = 0.0;
  double V = 0.0;
  double Y = 0.0;
};

/// Structure monitors accumulated over a whole trajectory.
struct Diagnostics {
  double max_trace_drift = 0.0;      ///< max |tr rho - 1|
  double max_herm_residual = 0.0;    ///< max |rho - rho^dagger| before repair
  double min_eigenvalue = 1.0;       ///< smallest rho eigenvalue seen
  double energy_balance_rel = 0.0;   ///< max |(E0 - E) - E_rad| / E0
  double max_interchange_asym = 0.0; ///< max |rho - swap(rho)|
};

struct RunSummary {
  double I0 = 0.0;      ///< emission intensity at t = 0
  double peak_I = 0.0;  ///< maximum emission intensity over the run
  double t_max = 0.0;   ///< time of the maximum
  double Gamma0 = 0.0;  ///< self-consistent Gamma at t = 0 (computed)
  double wall_time_s = 0.0;
  long n_steps = 0;  ///< accepted integrator steps
  bool stopped_early = false;  ///< excited population fell below eps_stop
};

struct TwoBodyResult {
  std::vector<SeriesPoint> series;
  RunSummary summary;
  Diagnostics diagnostics;
  bool burst = false;  ///< peak_I exceeded I0 (1 + 1e-3)
};

/// Integrate the effective two-body master equation of `s` (mode twobody or
/// doppler). Rates are frozen within each accepted step and re-solved after
/// it with warm start; steps are capped so the relative rate change per step
/// stays below integrator.rate_change_cap. With stop_at_burst the run
/// returns as soon as the burst predicate fires (marginal-width searches).
TwoBodyResult run_twobody(const Scenario& s, bool stop_at_burst = false);

struct DickeResult {
  std::vector<double> t;
  std::vector<double> I_em;
  std::vector<Eigen::VectorXd> rho;  ///< cascade populations per grid time
  RunSummary summary;
};

/// Rate-equation cascade of `s` (mode dicke) from the fully excited level.
DickeResult run_dicke(const Scenario& s);

/// Whether `base` with Doppler width Delta_D still shows a burst
/// (peak I_em > I0 (1 + 1e-3)).
bool superradiant_at(const Scenario& base, double Delta_D);

struct MarginalResult {
  double Delta_m = 0.0;  ///< marginal Doppler width, units gamma
  int evaluations = 0;   ///< trajectory runs spent in the search
};

/// Largest Doppler width that still yields a burst, located by log-space
/// bisection to relative width rel_tol.
MarginalResult marginal_width(const Scenario& base, double rel_tol = 5e-3);

}  // namespace sr
