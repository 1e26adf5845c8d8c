#include "sr/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sr {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order weights of the embedded solution.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

constexpr double kDtUnderflow = 1e-12;

}  // namespace

DormandPrince::DormandPrince(Rhs rhs, StepperConfig cfg)
    : rhs_(std::move(rhs)), cfg_(cfg) {}

double DormandPrince::step_embedded(double t, const Eigen::VectorXd& y,
                                    double dt, Eigen::VectorXd& y_new) const {
  const auto n = y.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);

  rhs_(t, y, k1);
  tmp = y + dt * (a21 * k1);
  rhs_(t + c2 * dt, tmp, k2);
  tmp = y + dt * (a31 * k1 + a32 * k2);
  rhs_(t + c3 * dt, tmp, k3);
  tmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
  rhs_(t + c4 * dt, tmp, k4);
  tmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
  rhs_(t + c5 * dt, tmp, k5);
  tmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
  rhs_(t + dt, tmp, k6);
  y_new = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  rhs_(t + dt, y_new, k7);

  Eigen::VectorXd y4 =
      y + dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale =
        cfg_.abs_tol +
        cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    const double r = (y_new[i] - y4[i]) / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

DormandPrince::Outcome DormandPrince::try_step(double& t, Eigen::VectorXd& y,
                                               double dt) const {
  if (dt < kDtUnderflow)
    throw std::runtime_error("integrator: step size underflow at t = " +
                             std::to_string(t));
  Eigen::VectorXd y_new(y.size());
  const double err = step_embedded(t, y, dt, y_new);
  const double factor =
      std::clamp(0.9 * std::pow(std::max(err, 1e-300), -0.2), 0.2, 5.0);
  double dt_next = std::min(dt * factor, cfg_.dt_max);
  if (err <= 1.0) {
    t += dt;
    y.swap(y_new);
    return {true, dt, dt_next};
  }
  return {false, dt, dt_next};
}

std::vector<Eigen::VectorXd> integrate_to(const Rhs& rhs, Eigen::VectorXd y0,
                                          const std::vector<double>& t_grid,
                                          const StepperConfig& cfg,
                                          const std::vector<StepHook>& hooks) {
  if (t_grid.empty()) return {};
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("integrate_to: t_grid must be strictly increasing");

  DormandPrince stepper(rhs, cfg);
  std::vector<Eigen::VectorXd> out;
  out.reserve(t_grid.size());

  double t = t_grid.front();
  out.push_back(y0);
  double dt = cfg.dt_init;
  for (size_t g = 1; g < t_grid.size(); ++g) {
    const double t_target = t_grid[g];
    while (t < t_target) {
      const double remaining = t_target - t;
      if (remaining <= kDtUnderflow * std::max(1.0, std::abs(t_target))) {
        t = t_target;  // roundoff residue; the state is already there
        break;
      }
      const bool last = dt >= remaining;
      auto res = stepper.try_step(t, y0, last ? remaining : dt);
      dt = res.dt_next;
      if (res.accepted) {
        if (last) t = t_target;
        for (const auto& hook : hooks) hook(t, y0);
      }
    }
    out.push_back(y0);
  }
  return out;
}

}  // namespace sr
