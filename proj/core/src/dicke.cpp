#include "sr/dicke.hpp"

#include <cmath>
#include <stdexcept>

#include "sr/angular.hpp"

namespace sr {

double dipole_population(int N, HalfInt j, HalfInt M) {
  const HalfInt J = N * j;
  const HalfInt rest = (N - 1) * j;
  const double c = cg(j, -j, rest, M + j, J, M);
  return 1.0 - c * c;
}

double dipole_correlation(int N, HalfInt j, HalfInt M) {
  if (N < 2) return 0.0;
  const HalfInt J = N * j;
  const HalfInt rest1 = (N - 1) * j;  // block of atoms 2..N
  const HalfInt rest2 = (N - 2) * j;  // block of atoms 3..N
  const HalfInt one = HalfInt::whole(1);

  // Amplitude of particle 1 at m1 and particle 2 at m2 inside |J, M>:
  //   A(m1, m2) = <j, (N-1)j; m1, M-m1 | J, M>
  //             * <j, (N-2)j; m2, M-m1-m2 | (N-1)j, M-m1>.
  // <s1+ s2-> pairs A(m1, m2) with A(m1+1, m2-1); the (N-2) block spectator
  // projection M-m1-m2 is untouched.
  double sum = 0.0;
  for (int t1 = -j.twice(); t1 <= j.twice(); t1 += 2) {
    const HalfInt m1(t1);
    const double outer = cg(j, m1, rest1, M - m1, J, M);
    if (outer == 0.0) continue;
    const double outer_up = cg(j, m1 + one, rest1, M - m1 - one, J, M);
    if (outer_up == 0.0) continue;
    for (int t2 = -j.twice(); t2 <= j.twice(); t2 += 2) {
      const HalfInt m2(t2);
      const double inner = cg(j, m2, rest2, M - m1 - m2, rest1, M - m1);
      if (inner == 0.0) continue;
      const double inner_down =
          cg(j, m2 - one, rest2, M - m1 - m2, rest1, M - m1 - one);
      sum += outer * inner * outer_up * inner_down;
    }
  }
  return sum;
}

double enhancement_factor(int N, HalfInt j, HalfInt M) {
  if (N < 1) throw std::domain_error("enhancement_factor: N >= 1 required");
  const HalfInt J = N * j;
  if (M.abs() > J)
    throw std::domain_error("enhancement_factor: |M| > Nj");
  if (M == -J) return 0.0;  // ground level cannot emit
  return N * dipole_population(N, j, M) +
         static_cast<double>(N) * (N - 1) * dipole_correlation(N, j, M);
}

DickeLadder make_ladder(int N, HalfInt j, double gamma) {
  DickeLadder ladder;
  ladder.N = N;
  ladder.j = j;
  ladder.J = N * j;
  ladder.gamma = gamma;
  const int levels = multiplicity(ladder.J);
  ladder.W.resize(levels);
  for (int k = 0; k < levels; ++k) {
    const HalfInt M = projection_at(ladder.J, k);
    ladder.W[k] = gamma * enhancement_factor(N, j, M);
  }
  return ladder;
}

CascadeTrajectory evolve_cascade(const DickeLadder& ladder,
                                 const std::vector<double>& t_grid,
                                 const StepperConfig& cfg) {
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw std::invalid_argument("evolve_cascade: t_grid must start at 0");
  const int levels = static_cast<int>(ladder.W.size());
  Eigen::VectorXd rho0 = Eigen::VectorXd::Zero(levels);
  rho0[0] = 1.0;  // fully excited, M = J

  const Eigen::VectorXd& W = ladder.W;
  auto rhs = [&W, levels](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy[0] = -W[0] * y[0];
    for (int k = 1; k < levels; ++k) dy[k] = -W[k] * y[k] + W[k - 1] * y[k - 1];
  };

  // Round-off from the bidiagonal flow may push populations slightly
  // negative; clamp within tolerance, report beyond it.
  StepHook clamp = [](double t, Eigen::VectorXd& y) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] < 0.0) {
        if (y[i] < -1e-9)
          throw std::runtime_error("evolve_cascade: population " +
                                   std::to_string(y[i]) + " at t = " +
                                   std::to_string(t));
        y[i] = std::max(y[i], -1e-12);
      }
    }
  };

  auto states = integrate_to(rhs, rho0, t_grid, cfg, {clamp});
  CascadeTrajectory traj;
  traj.t = t_grid;
  traj.rho = std::move(states);
  return traj;
}

std::vector<double> emission_curve(const DickeLadder& ladder,
                                   const CascadeTrajectory& traj) {
  std::vector<double> I;
  I.reserve(traj.rho.size());
  for (const auto& rho : traj.rho)
    I.push_back(rho.dot(ladder.W) / ladder.N);
  return I;
}

}  // namespace sr
