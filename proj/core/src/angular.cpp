#include "sr/angular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sr {
namespace {

// log(n!)
double lf(int n) { return std::lgamma(n + 1.0); }

// (j1 + m1) etc. as plain integers; caller guarantees parity.
int as_int(HalfInt a) { return a.twice() / 2; }

bool integer_sum(HalfInt a, HalfInt b) { return (a.twice() + b.twice()) % 2 == 0; }

}  // namespace

double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  if (!j1.nonnegative() || !j2.nonnegative() || !J.nonnegative())
    throw std::domain_error("cg: spin magnitudes must be >= 0");

  // Selection rules: all vanishing cases return 0 by contract.
  if ((m1 + m2) != M) return 0.0;
  if (!projection_valid(j1, m1) || !projection_valid(j2, m2) ||
      !projection_valid(J, M))
    return 0.0;
  if (J > j1 + j2 || J < (j1 - j2).abs()) return 0.0;
  if (!integer_sum(j1 + j2, J)) return 0.0;

  const int a1 = as_int(j1 + m1), a2 = as_int(j1 - m1);
  const int a3 = as_int(j2 + m2), a4 = as_int(j2 - m2);
  const int a5 = as_int(J + M), a6 = as_int(J - M);
  const int t1 = as_int(j1 + j2 - J);
  const int t2 = as_int(j1 - j2 + J);
  const int t3 = as_int(J - j1 + j2);
  const int t4 = as_int(j1 + j2 + J) + 1;
  const int u1 = as_int(J - j2 + m1);  // may be negative, shifts k range
  const int u2 = as_int(J - j1 - m2);

  const double log_pre =
      0.5 * (std::log(J.twice() + 1.0) + lf(t1) + lf(t2) + lf(t3) - lf(t4) +
             lf(a1) + lf(a2) + lf(a3) + lf(a4) + lf(a5) + lf(a6));

  const int k_lo = std::max({0, -u1, -u2});
  const int k_hi = std::min({t1, a2, a3});
  if (k_lo > k_hi) return 0.0;

  // Alternating Racah sum accumulated relative to its largest term.
  double log_term_max = -1e300;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double lt = -(lf(k) + lf(t1 - k) + lf(a2 - k) + lf(a3 - k) +
                        lf(u1 + k) + lf(u2 + k));
    log_term_max = std::max(log_term_max, lt);
  }
  double sum = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double lt = -(lf(k) + lf(t1 - k) + lf(a2 - k) + lf(a3 - k) +
                        lf(u1 + k) + lf(u2 + k));
    const double term = std::exp(lt - log_term_max);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum * std::exp(log_pre + log_term_max);
}

Eigen::MatrixXd dipole_lowering(HalfInt j) {
  if (j.twice() < 1) throw std::domain_error("dipole_lowering: j >= 1/2 required");
  const int d = multiplicity(j);
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(d, d);
  // <m|s-|m+1> = 1 in the descending basis: row index of m is col index + 1.
  for (int col = 0; col + 1 < d; ++col) op(col + 1, col) = 1.0;
  return op;
}

Eigen::MatrixXd spin_lowering(HalfInt j) {
  if (j.twice() < 1) throw std::domain_error("spin_lowering: j >= 1/2 required");
  const int d = multiplicity(j);
  const double jv = j.value();
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(d, d);
  for (int col = 0; col + 1 < d; ++col) {
    const double m = projection_at(j, col).value();  // source projection
    op(col + 1, col) = std::sqrt(jv * (jv + 1.0) - m * (m - 1.0));
  }
  return op;
}

}  // namespace sr
