#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sr/halfint.hpp"
#include "sr/integrate.hpp"

namespace sr {

/// <sigma1+ sigma1->_{JM}: probability that one atom is not in its lowest
/// level, 1 - <j,(N-1)j; -j, M+j | J, M>^2.
double dipole_population(int N, HalfInt j, HalfInt M);

/// <sigma1+ sigma2->_{JM}: the two-atom dipole correlation, a double
/// Clebsch-Gordan sum over single-particle projections.
double dipole_correlation(int N, HalfInt j, HalfInt M);

/// Collective enhancement factor
///   <D+ D->_{JM} = N <s1+ s1-> + N(N-1) <s1+ s2->
/// for N spin-j atoms in the Dicke state |J = Nj, M>. For j = 1/2 this equals
/// (J + M)(J - M + 1). Throws if |M| > Nj.
double enhancement_factor(int N, HalfInt j, HalfInt M);

/// Precomputed collective decay rates W_J(M) = gamma <D+ D->_{JM} for the
/// point-sample cascade, indexed k = level_index(J, M) (M = J first).
struct DickeLadder {
  int N = 1;
  HalfInt j{1};
  HalfInt J{1};  // N * j
  double gamma = 1.0;
  Eigen::VectorXd W;
};
DickeLadder make_ladder(int N, HalfInt j, double gamma = 1.0);

/// Populations of the cascade rate equation at each grid time, starting from
/// the fully excited level rho_{M=J} = 1.
struct CascadeTrajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> rho;  // one population vector (length 2J+1) per time
};
CascadeTrajectory evolve_cascade(const DickeLadder& ladder,
                                 const std::vector<double>& t_grid,
                                 const StepperConfig& cfg = {});

/// Per-particle emission intensity I_em(t) = W(t)/N with
/// W = sum_M rho_M W_J(M), in units gamma * hbar * omega0.
std::vector<double> emission_curve(const DickeLadder& ladder,
                                   const CascadeTrajectory& traj);

}  // namespace sr
