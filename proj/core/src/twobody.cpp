#include "sr/twobody.hpp"

#include <complex>
#include <vector>

#include "sr/angular.hpp"

namespace sr {
namespace {

using cplx = std::complex<double>;
using Sp = Eigen::SparseMatrix<cplx>;

Sp kron_sparse(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const int da = static_cast<int>(A.rows());
  const int db = static_cast<int>(B.rows());
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int ar = 0; ar < da; ++ar)
    for (int ac = 0; ac < da; ++ac) {
      if (A(ar, ac) == 0.0) continue;
      for (int br = 0; br < db; ++br)
        for (int bc = 0; bc < db; ++bc) {
          if (B(br, bc) == 0.0) continue;
          trip.emplace_back(ar * db + br, ac * db + bc,
                            cplx(A(ar, ac) * B(br, bc), 0.0));
        }
    }
  Sp out(da * db, da * db);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

TwoBodySystem::TwoBodySystem(HalfInt j, double gamma)
    : j_(j), gamma_(gamma), d_(multiplicity(j)) {
  const Eigen::MatrixXd s = dipole_lowering(j);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d_, d_);
  lower_[0] = kron_sparse(s, id);
  lower_[1] = kron_sparse(id, s);
  for (int i = 0; i < 2; ++i) raise_[i] = Sp(lower_[i].transpose());
  Dm_ = lower_[0] + lower_[1];
  Dp_ = Sp(Dm_.transpose());
  DmDp_ = (Dm_ * Dp_).pruned();
  DpDm_ = (Dp_ * Dm_).pruned();
  sum_lr_ = (lower_[0] * raise_[0] + lower_[1] * raise_[1]).pruned();
  sum_rl_ = (raise_[0] * lower_[0] + raise_[1] * lower_[1]).pruned();
  scratch_.resize(dim(), dim());
}

Eigen::MatrixXcd TwoBodySystem::fully_excited() const {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim(), dim());
  rho(0, 0) = 1.0;
  return rho;
}

void TwoBodySystem::master_rhs(const Eigen::MatrixXcd& rho,
                               const RatePair& rates,
                               Eigen::MatrixXcd& drho) const {
  drho.setZero(dim(), dim());
  const cplx Gb(rates.GammaBar, 0.0);
  const cplx dG(rates.Gamma - rates.GammaBar, 0.0);     // pump per-particle
  const cplx dGp(rates.Gamma + gamma_ - rates.GammaBar, 0.0);  // decay

  // Anticommutator halves: drho -= (c/2) (S rho + rho S).
  auto anticommute = [&](const Sp& S, cplx c) {
    if (c == 0.0) return;
    c *= 0.5;
    drho.noalias() -= c * (S * rho);
    drho.noalias() -= c * (rho * S);
  };

  // pump sector: sum_ik G_ik (s_k+ rho s_i- - {s_i- s_k+, rho}/2)
  if (Gb != 0.0) {
    scratch_.noalias() = Dp_ * rho;
    drho.noalias() += Gb * (scratch_ * Dm_);
  }
  if (dG != 0.0)
    for (int i = 0; i < 2; ++i) {
      scratch_.noalias() = raise_[i] * rho;
      drho.noalias() += dG * (scratch_ * lower_[i]);
    }
  anticommute(DmDp_, Gb);
  anticommute(sum_lr_, dG);

  // decay sector: sum_ik (G_ik + gamma d_ik)(s_i- rho s_k+ - {s_k+ s_i-, rho}/2)
  if (Gb != 0.0) {
    scratch_.noalias() = Dm_ * rho;
    drho.noalias() += Gb * (scratch_ * Dp_);
  }
  if (dGp != 0.0)
    for (int i = 0; i < 2; ++i) {
      scratch_.noalias() = lower_[i] * rho;
      drho.noalias() += dGp * (scratch_ * raise_[i]);
    }
  anticommute(DpDm_, Gb);
  anticommute(sum_rl_, dGp);
}

Eigen::MatrixXcd TwoBodySystem::reduce(const Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd r1 = Eigen::MatrixXcd::Zero(d_, d_);  // trace out particle 2
  Eigen::MatrixXcd r2 = Eigen::MatrixXcd::Zero(d_, d_);  // trace out particle 1
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b)
      for (int s = 0; s < d_; ++s) {
        r1(a, b) += rho(a * d_ + s, b * d_ + s);
        r2(a, b) += rho(s * d_ + a, s * d_ + b);
      }
  return 0.5 * (r1 + r2);
}

Observables TwoBodySystem::observables(const Eigen::MatrixXcd& rho) const {
  Observables obs;
  obs.rho1 = reduce(rho);
  // A sums every level above the lowest; index d_-1 is m = -j.
  double A = 0.0;
  for (int k = 0; k + 1 < d_; ++k) A += obs.rho1(k, k).real();
  obs.A = A;
  obs.V = obs.rho1(0, 0).real() - obs.rho1(d_ - 1, d_ - 1).real();

  // Y = sum_{m,m'=-j}^{j-1} rho_{m+1,m; m',m'+1}, symmetrized entry
  // <m+1, m'|rho|m, m'+1>.
  cplx Y(0.0, 0.0);
  for (int km = 0; km + 1 < d_; ++km)       // km = index of m+1, km+1 of m
    for (int kp = 0; kp + 1 < d_; ++kp) {   // kp = index of m'+1, kp+1 of m'
      const cplx direct = rho(km * d_ + (kp + 1), (km + 1) * d_ + kp);
      const cplx swapped = rho((kp + 1) * d_ + km, kp * d_ + (km + 1));
      Y += 0.5 * (direct + swapped);
    }
  obs.Y = Y.real();
  obs.Y_imag_residue = std::abs(Y.imag());
  return obs;
}

double TwoBodySystem::emission_intensity(const Eigen::MatrixXcd& rho1_dot) const {
  double dE = 0.0;
  for (int k = 0; k < d_; ++k) {
    const double weight = (j_ + projection_at(j_, k)).value();  // j + m
    dE += weight * rho1_dot(k, k).real();
  }
  return -dE;
}

double TwoBodySystem::excitation_energy(const Eigen::MatrixXcd& rho1) const {
  double E = 0.0;
  for (int k = 0; k < d_; ++k)
    E += (j_ + projection_at(j_, k)).value() * rho1(k, k).real();
  return E;
}

double TwoBodySystem::hermiticity_residual(const Eigen::MatrixXcd& rho) const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double TwoBodySystem::interchange_residual(const Eigen::MatrixXcd& rho) const {
  double worst = 0.0;
  for (int a = 0; a < d_; ++a)
    for (int c = 0; c < d_; ++c)
      for (int b = 0; b < d_; ++b)
        for (int e = 0; e < d_; ++e) {
          const cplx diff =
              rho(a * d_ + c, b * d_ + e) - rho(c * d_ + a, e * d_ + b);
          worst = std::max(worst, std::abs(diff));
        }
  return worst;
}

}  // namespace sr
