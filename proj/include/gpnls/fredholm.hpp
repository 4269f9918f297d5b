#pragma once

#include "gpnls/types.hpp"

namespace gpnls {

// Solvability threshold on |det1|; below it the solve reports the
// coordinate-patch breakdown instead of attempting a patch change.
inline constexpr double kNearSingularThreshold = 1e-8;

// Left-hand Riemann is the production rule; trapezoid is available for
// convergence studies.
enum class QuadratureRule { LeftRiemann, Trapezoid };

struct QuadratureGrid {
  QuadratureRule rule = QuadratureRule::LeftRiemann;
  Eigen::VectorXd nodes;    // on [-L/2, 0]
  Eigen::VectorXd weights;

  static QuadratureGrid make(const GridConfig& grid, QuadratureRule rule);
  Eigen::Index size() const { return nodes.size(); }
};

// Discretized data kernel q(y_i, z_j; x, t) for one x: a block matrix over
// quadrature node pairs, plus the q(., 0) edge column used to extend the
// solution kernel to the trace point (0, 0).
struct DataKernel {
  double x = 0.0;
  double t = 0.0;
  QuadratureGrid quad;
  Eigen::Index block_rows = 1;  // q block shape
  Eigen::Index block_cols = 1;
  Eigen::MatrixXcd entries;     // (n*block_rows) x (n*block_cols)
  Eigen::MatrixXcd edge_col;    // (n*block_rows) x block_cols, q(zeta_k, 0)
  Eigen::MatrixXcd corner;      // block_rows x block_cols, q(0, 0)

  Eigen::MatrixXcd block(Eigen::Index i, Eigen::Index j) const {
    return entries.block(i * block_rows, j * block_cols, block_rows, block_cols);
  }
};

// q(y_i, z_j) = sum_k w_k p~(y_i + zeta_k + x) p(zeta_k + z_j + x).
// p~ blocks times p blocks must be commensurate (p~ cols == p rows).
DataKernel assemble_data_kernel(const ScatteringField& p, const ScatteringField& p_tilde,
                                double x, QuadratureRule rule = QuadratureRule::LeftRiemann);

// Discrete id + Q in collocation form (row weights): rows scaled by w_k, so
// the solve reads  g_row * (I + W Q) = p_row.
Eigen::MatrixXcd fredholm_matrix_rows(const DataKernel& q);
// Operator-action form (column weights): (I + Q W) psi = rhs.
Eigen::MatrixXcd fredholm_matrix_cols(const DataKernel& q);

// order 1: det(I + W Q). order 2: det1 * exp(-sum_k w_k tr q(zeta_k, zeta_k)),
// the discrete regularised determinant.
Complex fredholm_determinant(const DataKernel& q, int order);

struct KernelSolution {
  double x = 0.0;
  double t = 0.0;
  Eigen::MatrixXcd g_nodes;     // (n*d1) x (n*d2), g(y_i, z_j)
  Eigen::MatrixXcd g_zero_row;  // d1 x (n*d2), g(0, z_j)
  Eigen::MatrixXcd trace;       // d1 x d2, g(0, 0; x, t)
  Complex det1{1.0, 0.0};
  double residual = 0.0;        // relative inf-norm of G(id+Q) - P over node pairs
};

// Solves g(y_i, z_j) + sum_k w_k g(y_i, zeta_k) q(zeta_k, z_j) = p(y_i+z_j+x)
// as one dense block system per x (row unknowns, operator acting on the
// right), then extends to the trace point via the same equation at y = 0,
// z = 0. Throws NearSingularOperator when |det1| < kNearSingularThreshold.
KernelSolution solve_marchenko(const ScatteringField& p, const DataKernel& q, double x);

// Same system restricted to the y = 0 row (all gp evaluation needs); shares
// the assembly and factorization code path with solve_marchenko.
struct TraceSolution {
  Eigen::MatrixXcd g_zero_row;
  Eigen::MatrixXcd trace;
  Complex det1{1.0, 0.0};
};
TraceSolution solve_marchenko_trace(const ScatteringField& p, const DataKernel& q, double x);

// Full pipeline at one time: evolve p and p~ to t, assemble both data
// kernels, solve both Fredholm equations per grid point, record g(0,0;x,t),
// g~(0,0;x,t) and det1(x,t), and differentiate the profiles spectrally.
SolutionField gp_solution_at_time(const ScatteringField& p0, double t, CompanionVariant v,
                                  const DispersionCoefficients& c,
                                  QuadratureRule rule = QuadratureRule::LeftRiemann);

// det1(x, t) over the grid without solving: evolve, assemble, factorize.
Eigen::VectorXcd determinant_profile(const ScatteringField& p0, double t, CompanionVariant v,
                                     const DispersionCoefficients& c,
                                     QuadratureRule rule = QuadratureRule::LeftRiemann);

}  // namespace gpnls
