#pragma once

#include "gpnls/types.hpp"

namespace gpnls {

struct StepperOptions {
  bool nonlinearity_enabled = true;
  bool dealias_two_thirds = false;  // off by default; available for refinement studies
};

// Fourier-space state of the direct solver. The solution blocks are d1 x d2
// (the shape of g); u_hat holds the transform of each block entry.
struct StepperState {
  GridConfig grid;
  Eigen::MatrixXcd u_hat;  // num_points x (d1*d2)
  double dt = 1e-3;
  long step_count = 0;

  double time() const { return static_cast<double>(step_count) * dt; }
};

// Initial data for the direct solver: solve the Fredholm equation at t = 0
// for g0 and transform g0(0,0;x). Shares the gp code path. Propagates
// NearSingularOperator.
StepperState splitstep_initial_data(const ScatteringField& p0, CompanionVariant v,
                                    const DispersionCoefficients& c, double dt);

// One step: exact linear phase, then an explicit Euler step on the
// transformed nonlinearity evaluated in physical space. The companion field
// inside the step is derived from the current solution per the variant
// (reflected/conjugated current-step data; a forward stepper has no access
// to the exact reversed-time field).
StepperState splitstep_advance(const StepperState& state, const DispersionCoefficients& c,
                               CompanionVariant v, const StepperOptions& options = {});

// Physical-space solution at the current step.
Eigen::MatrixXcd stepper_solution(const StepperState& state);

}  // namespace gpnls
