#pragma once

#include <Eigen/Dense>

#include "sr/halfint.hpp"

namespace sr {

/// Clebsch-Gordan coefficient <j1, j2; m1, m2 | J, M> with the
/// Condon-Shortley phase, evaluated by the Racah closed-form sum with
/// log-factorials and sign tracking. Selection-rule failures (M != m1+m2,
/// triangle violation, |m| > j) return 0 rather than throwing: the collective
/// dipole sums iterate over many vanishing terms.
double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

/// Dipole lowering operator for spin j in the descending-projection basis:
/// unit entries <m|s-|m+1> on the first subdiagonal, 2j of them.
Eigen::MatrixXd dipole_lowering(HalfInt j);

/// Spin-ladder lowering operator: entries sqrt(j(j+1) - m(m-1)) at the same
/// positions. Coincides with dipole_lowering only for j = 1/2.
Eigen::MatrixXd spin_lowering(HalfInt j);

}  // namespace sr
