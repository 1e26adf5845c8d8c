#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "sr/halfint.hpp"
#include "sr/types.hpp"

namespace sr {

/// The effective two-body master equation over the (2j+1)^2-dimensional
/// product basis |m1, m2> (descending projections, fully excited state at
/// index 0):
///   rho' = - sum_{i,k} (Gamma_ik / 2) ([rho s_i-, s_k+] + [s_i-, s_k+ rho])
///          - sum_{i,k} ((Gamma_ik + gamma d_ik)/2)
///                      ([rho s_k+, s_i-] + [s_k+, s_i- rho])
/// with s_i- the dipole-lowering operator on particle i, Gamma_ii = Gamma and
/// Gamma_{i != k} = GammaBar. The generator is trace-free and preserves
/// hermiticity and particle-interchange symmetry.
class TwoBodySystem {
public:
  explicit TwoBodySystem(HalfInt j, double gamma = 1.0);

  HalfInt spin() const { return j_; }
  double gamma() const { return gamma_; }
  int single_dim() const { return d_; }
  int dim() const { return d_ * d_; }

  /// |j,j><j,j| (x) |j,j><j,j|.
  Eigen::MatrixXcd fully_excited() const;

  void master_rhs(const Eigen::MatrixXcd& rho, const RatePair& rates,
                  Eigen::MatrixXcd& drho) const;

  /// rho1 = (1/2) sum_i tr_i rho, plus the A, V, Y scalars of the rate
  /// equations. Y uses the interchange-symmetrized matrix element
  /// rho_{ab;cd} = (<a,c|rho|b,d> + <c,a|rho|d,b>)/2.
  Observables observables(const Eigen::MatrixXcd& rho) const;

  /// Reduced single-particle matrix of any two-body matrix (also valid for
  /// rho-dot, yielding d/dt rho1).
  Eigen::MatrixXcd reduce(const Eigen::MatrixXcd& rho) const;

  /// Per-particle radiation intensity in units gamma hbar omega0:
  /// I_em = - sum_m (j + m) d/dt rho1_mm, positive for energy leaving the
  /// atoms.
  double emission_intensity(const Eigen::MatrixXcd& rho1_dot) const;

  /// Stored excitation energy per particle, sum_m (j + m) rho1_mm.
  double excitation_energy(const Eigen::MatrixXcd& rho1) const;

  /// Structure residuals used by the run-time monitors.
  double hermiticity_residual(const Eigen::MatrixXcd& rho) const;
  double interchange_residual(const Eigen::MatrixXcd& rho) const;

private:
  HalfInt j_;
  double gamma_;
  int d_;
  using Sp = Eigen::SparseMatrix<std::complex<double>>;
  // The i,k sums collapse onto collective and per-particle operators:
  //   sum_ik G_ik X_k rho X_i = GammaBar D rho D + (Gamma - GammaBar)
  //                             sum_i X_i rho X_i.
  Sp lower_[2];   // s1-, s2-
  Sp raise_[2];   // s1+, s2+
  Sp Dm_, Dp_;    // collective D- = s1- + s2-, D+
  Sp DmDp_, DpDm_;        // D- D+, D+ D-
  Sp sum_lr_, sum_rl_;    // sum_i s_i- s_i+, sum_i s_i+ s_i-
  mutable Eigen::MatrixXcd scratch_;
};

}  // namespace sr
