#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace sr {

/// Adaptive stepper settings. Time is nondimensionalized to gamma = 1
/// throughout the library; outputs are rescaled on write only.
struct StepperConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double dt_init = 1e-6;
  double dt_max = 0.1;
  /// Maximum allowed relative change of the self-consistent rates across one
  /// accepted step; the driving loop shrinks its step cap when exceeded.
  double rate_change_cap = 0.05;
};

using Rhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Hook executed after every accepted step, in declared order. Hooks may
/// mutate the state (rate re-solve, ablation mask, structure checks).
using StepHook = std::function<void(double, Eigen::VectorXd&)>;

/// Embedded Dormand-Prince 5(4) pair.
class DormandPrince {
public:
  DormandPrince(Rhs rhs, StepperConfig cfg);

  /// One embedded step attempt from (t, y) with step dt. Fills y_new with the
  /// 5th-order candidate and returns the scaled error estimate; the step is
  /// acceptable iff the estimate is <= 1.
  double step_embedded(double t, const Eigen::VectorXd& y, double dt,
                       Eigen::VectorXd& y_new) const;

  struct Outcome {
    bool accepted;
    double dt_used;
    double dt_next;
  };

  /// Attempt a step of size dt; on acceptance advances (t, y) in place.
  /// Throws on dt underflow below 1e-12.
  Outcome try_step(double& t, Eigen::VectorXd& y, double dt) const;

  const StepperConfig& config() const { return cfg_; }

private:
  Rhs rhs_;
  StepperConfig cfg_;
};

/// Integrate y' = rhs(t, y) and report the state at each grid time. Steps are
/// clipped so grid times are hit exactly; hooks run after every accepted step.
std::vector<Eigen::VectorXd> integrate_to(const Rhs& rhs, Eigen::VectorXd y0,
                                          const std::vector<double>& t_grid,
                                          const StepperConfig& cfg = {},
                                          const std::vector<StepHook>& hooks = {});

}  // namespace sr
