#include "gpnls/splitstep.hpp"

#include "gpnls/fredholm.hpp"
#include "gpnls/quintic.hpp"
#include "gpnls/scattering.hpp"
#include "gpnls/spectral.hpp"

namespace gpnls {

StepperState splitstep_initial_data(const ScatteringField& p0, CompanionVariant v,
                                    const DispersionCoefficients& c, double dt) {
  const SolutionField s0 = gp_solution_at_time(p0, 0.0, v, c);
  StepperState st;
  st.grid = p0.grid;
  st.dt = dt;
  st.step_count = 0;
  st.u_hat = forward_transform(s0.g);
  return st;
}

namespace {

Eigen::MatrixXcd block_at(const GridConfig& grid, const Eigen::MatrixXcd& profile,
                          Eigen::Index ix) {
  Eigen::MatrixXcd b(grid.block_rows, grid.block_cols);
  for (Eigen::Index r = 0; r < grid.block_rows; ++r)
    for (Eigen::Index c = 0; c < grid.block_cols; ++c)
      b(r, c) = profile(ix, r * grid.block_cols + c);
  return b;
}

// Companion block and its x-derivatives at grid point i, derived from the
// current physical-space field w and its derivatives. Reflection flips the
// sign of odd derivatives.
struct CompanionBlocks {
  Eigen::MatrixXcd gt, dgt, d2gt;
};

CompanionBlocks companion_at(const GridConfig& grid, const Eigen::MatrixXcd& w,
                             const Eigen::MatrixXcd& wx, const Eigen::MatrixXcd& wxx,
                             Eigen::Index i, CompanionVariant v) {
  CompanionBlocks out;
  switch (v) {
    case CompanionVariant::Adjoint:
      out.gt = block_at(grid, w, i).adjoint();
      out.dgt = block_at(grid, wx, i).adjoint();
      out.d2gt = block_at(grid, wxx, i).adjoint();
      break;
    case CompanionVariant::NegatedAdjoint:
      out.gt = -block_at(grid, w, i).adjoint();
      out.dgt = -block_at(grid, wx, i).adjoint();
      out.d2gt = -block_at(grid, wxx, i).adjoint();
      break;
    case CompanionVariant::ReverseSpaceTimeTranspose: {
      const Eigen::Index j = reflected_index(grid.num_points, i);
      out.gt = block_at(grid, w, j).transpose();
      out.dgt = -block_at(grid, wx, j).transpose();
      out.d2gt = block_at(grid, wxx, j).transpose();
      break;
    }
    case CompanionVariant::ReverseTimeTranspose:
      out.gt = block_at(grid, w, i).transpose();
      out.dgt = block_at(grid, wx, i).transpose();
      out.d2gt = block_at(grid, wxx, i).transpose();
      break;
  }
  return out;
}

}  // namespace

StepperState splitstep_advance(const StepperState& state, const DispersionCoefficients& c,
                               CompanionVariant v, const StepperOptions& options) {
  const GridConfig& grid = state.grid;
  const Eigen::VectorXcd ik = fourier_symbols(grid);
  const Eigen::VectorXcd mult = propagator_multipliers(c, state.dt, ik);

  StepperState next = state;
  next.step_count = state.step_count + 1;

  Eigen::MatrixXcd v_hat = state.u_hat;
  for (Eigen::Index e = 0; e < v_hat.cols(); ++e) v_hat.col(e).array() *= mult.array();
  if (!options.nonlinearity_enabled) {
    next.u_hat = v_hat;
    return next;
  }

  Eigen::MatrixXcd dv_hat = v_hat, d2v_hat = v_hat;
  for (Eigen::Index e = 0; e < v_hat.cols(); ++e) {
    dv_hat.col(e).array() *= ik.array();
    d2v_hat.col(e).array() *= ik.array().square();
  }
  const Eigen::MatrixXcd w = inverse_transform(v_hat);
  const Eigen::MatrixXcd wx = inverse_transform(dv_hat);
  const Eigen::MatrixXcd wxx = inverse_transform(d2v_hat);

  Eigen::MatrixXcd psi(grid.num_points, grid.entries());
  for (Eigen::Index i = 0; i < grid.num_points; ++i) {
    const CompanionBlocks cb = companion_at(grid, w, wx, wxx, i, v);
    const Eigen::MatrixXcd p = quintic_nonlinearity(block_at(grid, w, i), cb.gt,
                                                    block_at(grid, wx, i), cb.dgt,
                                                    block_at(grid, wxx, i), cb.d2gt, c);
    for (Eigen::Index r = 0; r < grid.block_rows; ++r)
      for (Eigen::Index cc = 0; cc < grid.block_cols; ++cc)
        psi(i, r * grid.block_cols + cc) = p(r, cc);
  }

  Eigen::MatrixXcd psi_hat = forward_transform(psi);
  if (options.dealias_two_thirds) {
    const Eigen::Index n = grid.num_points;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index k = (j <= n / 2 - 1) ? j : j - n;
      if (std::abs(k) > n / 3) psi_hat.row(j).setZero();
    }
  }
  next.u_hat = v_hat + state.dt * psi_hat;
  return next;
}

Eigen::MatrixXcd stepper_solution(const StepperState& state) {
  return inverse_transform(state.u_hat);
}

}  // namespace gpnls
