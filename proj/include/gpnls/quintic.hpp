#pragma once

#include "gpnls/types.hpp"

namespace gpnls {

// The non-commutative nonlinearity at one point, matrix products in the
// written order:
//   2 mu2 g gt g
// + 3 mu3 ((dg) gt g + g gt (dg))
// + 2 mu4 (2 (d2g) gt g + g (d2gt) g + 2 g gt (d2g)
//          + (dg)(dgt) g + 3 (dg) gt (dg) + g (dgt)(dg)
//          + 3 g gt g gt g)
Eigen::MatrixXcd quintic_nonlinearity(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& gt,
                                      const Eigen::MatrixXcd& dg, const Eigen::MatrixXcd& dgt,
                                      const Eigen::MatrixXcd& d2g, const Eigen::MatrixXcd& d2gt,
                                      const DispersionCoefficients& c);

// Pointwise in x over the whole solution profile; returns num_points x (d1*d2).
Eigen::MatrixXcd quintic_rhs(const SolutionField& s, const DispersionCoefficients& c);

struct PdeResidual {
  Eigen::MatrixXcd field;      // num_points x (d1*d2)
  Eigen::VectorXd per_x;       // Frobenius norm of the residual block per grid point
  double max_norm = 0.0;
  double l2_norm = 0.0;        // sqrt(dx * sum per_x^2)
};

// Residual of the quintic equation with the time derivative realised by the
// centered difference of independently evaluated solutions at t -/+ delta:
//   (g_plus - g_minus)/(2 delta) - mu2 d2g - mu3 d3g - mu4 d4g - quintic_rhs(s).
PdeResidual pde_residual(const SolutionField& s_minus, const SolutionField& s,
                         const SolutionField& s_plus, double delta,
                         const DispersionCoefficients& c);

}  // namespace gpnls
