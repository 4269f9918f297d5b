#include "gpnls/fredholm.hpp"

#include "gpnls/scattering.hpp"
#include "gpnls/spectral.hpp"

#include <Eigen/LU>

#include <memory>

namespace gpnls {

QuadratureGrid QuadratureGrid::make(const GridConfig& grid, QuadratureRule rule) {
  QuadratureGrid q;
  q.rule = rule;
  const double a = -0.5 * grid.length;
  if (rule == QuadratureRule::LeftRiemann) {
    const Eigen::Index n = grid.num_quad;
    const double h = (0.5 * grid.length) / static_cast<double>(n);
    q.nodes.resize(n);
    q.weights = Eigen::VectorXd::Constant(n, h);
    for (Eigen::Index k = 0; k < n; ++k) q.nodes[k] = a + static_cast<double>(k) * h;
  } else {
    // n_quad intervals, n_quad + 1 nodes including both endpoints.
    const Eigen::Index n = grid.num_quad + 1;
    const double h = (0.5 * grid.length) / static_cast<double>(grid.num_quad);
    q.nodes.resize(n);
    q.weights = Eigen::VectorXd::Constant(n, h);
    q.weights[0] = 0.5 * h;
    q.weights[n - 1] = 0.5 * h;
    for (Eigen::Index k = 0; k < n; ++k) q.nodes[k] = a + static_cast<double>(k) * h;
  }
  return q;
}

DataKernel assemble_data_kernel(const ScatteringField& p, const ScatteringField& p_tilde,
                                double x, QuadratureRule rule) {
  if (p_tilde.grid.block_cols != p.grid.block_rows)
    throw std::invalid_argument("assemble_data_kernel: block shapes are not commensurate");

  DataKernel q;
  q.x = x;
  q.t = p.time;
  q.quad = QuadratureGrid::make(p.grid, rule);
  q.block_rows = p_tilde.grid.block_rows;
  q.block_cols = p.grid.block_cols;

  const Eigen::Index n = q.quad.size();
  const Eigen::Index tr = p_tilde.grid.block_rows, tc = p_tilde.grid.block_cols;
  const Eigen::Index pr = p.grid.block_rows, pc = p.grid.block_cols;

  // Left factor L(i,k) = p~(y_i + zeta_k + x), right factor R(k,j) =
  // w_k p(zeta_k + z_j + x); the kernel is one block GEMM q = L R.
  Eigen::MatrixXcd left(n * tr, n * tc);
  Eigen::MatrixXcd right(n * pr, n * pc);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double arg = q.quad.nodes[i] + q.quad.nodes[k] + x;
      left.block(i * tr, k * tc, tr, tc) = hankel_sample(p_tilde, arg);
      right.block(i * pr, k * pc, pr, pc) = q.quad.weights[i] * hankel_sample(p, arg);
    }
  q.entries.noalias() = left * right;

  // q(zeta_k, 0) column and the q(0, 0) corner for the trace extension.
  Eigen::MatrixXcd p_at_nodes(n * pr, pc);
  for (Eigen::Index k = 0; k < n; ++k)
    p_at_nodes.block(k * pr, 0, pr, pc) =
        q.quad.weights[k] * hankel_sample(p, q.quad.nodes[k] + x);
  q.edge_col.noalias() = left * p_at_nodes;
  q.corner = Eigen::MatrixXcd::Zero(tr, pc);
  for (Eigen::Index k = 0; k < n; ++k)
    q.corner.noalias() += hankel_sample(p_tilde, q.quad.nodes[k] + x) * p_at_nodes.block(k * pr, 0, pr, pc);
  return q;
}

namespace {

Eigen::MatrixXcd scaled_identity_plus(const DataKernel& q, bool row_weights) {
  const Eigen::Index n = q.quad.size();
  const Eigen::Index br = q.block_rows, bc = q.block_cols;
  if (br != bc)
    throw std::invalid_argument("fredholm matrix: data kernel blocks must be square");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n * br, n * bc);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = row_weights ? q.quad.weights[k] : q.quad.weights[j];
      a.block(k * br, j * bc, br, bc) += w * q.block(k, j);
    }
  return a;
}

// Right-hand-side row of Hankel samples p(y + zeta_j + x) for a fixed y.
Eigen::MatrixXcd sample_row(const ScatteringField& p, const QuadratureGrid& quad, double y,
                            double x) {
  const Eigen::Index pr = p.grid.block_rows, pc = p.grid.block_cols;
  Eigen::MatrixXcd row(pr, quad.size() * pc);
  for (Eigen::Index j = 0; j < quad.size(); ++j)
    row.block(0, j * pc, pr, pc) = hankel_sample(p, y + quad.nodes[j] + x);
  return row;
}

Eigen::MatrixXcd extend_to_trace(const ScatteringField& p, const DataKernel& q, double x,
                                 const Eigen::MatrixXcd& g_zero_row) {
  // g(0,0) = p(x) - sum_k w_k g(0, zeta_k) q(zeta_k, 0).
  const Eigen::Index bc = q.block_cols;
  Eigen::MatrixXcd acc = hankel_sample(p, x);
  for (Eigen::Index k = 0; k < q.quad.size(); ++k)
    acc.noalias() -= q.quad.weights[k] *
                     (g_zero_row.block(0, k * bc, g_zero_row.rows(), bc) *
                      q.edge_col.block(k * q.block_rows, 0, q.block_rows, bc));
  return acc;
}

}  // namespace

Eigen::MatrixXcd fredholm_matrix_rows(const DataKernel& q) { return scaled_identity_plus(q, true); }
Eigen::MatrixXcd fredholm_matrix_cols(const DataKernel& q) { return scaled_identity_plus(q, false); }

Complex fredholm_determinant(const DataKernel& q, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("fredholm_determinant: order must be 1 or 2");
  const Complex det1 = Eigen::PartialPivLU<Eigen::MatrixXcd>(fredholm_matrix_rows(q)).determinant();
  if (order == 1) return det1;
  Complex tr(0.0, 0.0);
  for (Eigen::Index k = 0; k < q.quad.size(); ++k)
    tr += q.quad.weights[k] * q.block(k, k).trace();
  return det1 * std::exp(-tr);
}

KernelSolution solve_marchenko(const ScatteringField& p, const DataKernel& q, double x) {
  const Eigen::Index n = q.quad.size();
  const Eigen::Index pr = p.grid.block_rows, pc = p.grid.block_cols;

  // One factorization of (id + WQ)^T serves the determinant, every node row
  // and the y = 0 row.
  const Eigen::MatrixXcd a = fredholm_matrix_rows(q);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a.transpose());

  KernelSolution sol;
  sol.x = x;
  sol.t = q.t;
  sol.det1 = lu.determinant();
  if (std::abs(sol.det1) < kNearSingularThreshold) throw NearSingularOperator(x, q.t, sol.det1);

  Eigen::MatrixXcd rhs(n * pr, n * pc);
  for (Eigen::Index i = 0; i < n; ++i)
    rhs.middleRows(i * pr, pr) = sample_row(p, q.quad, q.quad.nodes[i], x);
  sol.g_nodes = lu.solve(rhs.transpose()).transpose();

  const Eigen::MatrixXcd zero_rhs = sample_row(p, q.quad, 0.0, x);
  sol.g_zero_row = lu.solve(zero_rhs.transpose()).transpose();
  sol.trace = extend_to_trace(p, q, x, sol.g_zero_row);

  const double scale = rhs.cwiseAbs().maxCoeff();
  const double defect = (sol.g_nodes * a - rhs).cwiseAbs().maxCoeff();
  sol.residual = scale > 0.0 ? defect / scale : defect;
  return sol;
}

TraceSolution solve_marchenko_trace(const ScatteringField& p, const DataKernel& q, double x) {
  const Eigen::MatrixXcd a = fredholm_matrix_rows(q);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a.transpose());

  TraceSolution sol;
  sol.det1 = lu.determinant();
  if (std::abs(sol.det1) < kNearSingularThreshold) throw NearSingularOperator(x, q.t, sol.det1);

  const Eigen::MatrixXcd zero_rhs = sample_row(p, q.quad, 0.0, x);
  sol.g_zero_row = lu.solve(zero_rhs.transpose()).transpose();
  sol.trace = extend_to_trace(p, q, x, sol.g_zero_row);
  return sol;
}

SolutionField gp_solution_at_time(const ScatteringField& p0, double t, CompanionVariant v,
                                  const DispersionCoefficients& c, QuadratureRule rule) {
  if (!check_dispersion_property(c))
    throw std::invalid_argument("gp_solution_at_time: coefficients violate the dispersion property");

  const ScatteringField p_t = evolve_scattering(p0, t, c);
  const ScatteringField pt_t = companion_field(p0, t, v, c);

  const GridConfig& grid = p0.grid;
  const Eigen::Index n = grid.num_points;

  SolutionField s;
  s.grid = grid;
  s.time = t;
  s.g.resize(n, grid.block_rows * grid.block_cols);
  s.g_tilde.resize(n, grid.block_cols * grid.block_rows);
  s.det1.resize(n);

  std::unique_ptr<NearSingularOperator> failure;

#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    try {
      const double xi = grid.x(i);
      const DataKernel q = assemble_data_kernel(p_t, pt_t, xi, rule);
      const TraceSolution ts = solve_marchenko_trace(p_t, q, xi);
      const DataKernel qt = assemble_data_kernel(pt_t, p_t, xi, rule);
      const TraceSolution tst = solve_marchenko_trace(pt_t, qt, xi);
      // Disjoint per-i slots; gather order is the grid order by construction.
      s.det1[i] = ts.det1;
      for (Eigen::Index r = 0; r < grid.block_rows; ++r)
        for (Eigen::Index cc = 0; cc < grid.block_cols; ++cc)
          s.g(i, r * grid.block_cols + cc) = ts.trace(r, cc);
      for (Eigen::Index r = 0; r < grid.block_cols; ++r)
        for (Eigen::Index cc = 0; cc < grid.block_rows; ++cc)
          s.g_tilde(i, r * grid.block_rows + cc) = tst.trace(r, cc);
    } catch (const NearSingularOperator& e) {
#pragma omp critical(gpnls_gp_failure)
      {
        if (!failure || e.x < failure->x) failure = std::make_unique<NearSingularOperator>(e);
      }
    }
  }
  if (failure) throw *failure;

  s.dg = spectral_derivative(grid, s.g, 1);
  s.d2g = spectral_derivative(grid, s.g, 2);
  s.d3g = spectral_derivative(grid, s.g, 3);
  s.d4g = spectral_derivative(grid, s.g, 4);
  s.dg_tilde = spectral_derivative(grid, s.g_tilde, 1);
  s.d2g_tilde = spectral_derivative(grid, s.g_tilde, 2);
  return s;
}

Eigen::VectorXcd determinant_profile(const ScatteringField& p0, double t, CompanionVariant v,
                                     const DispersionCoefficients& c, QuadratureRule rule) {
  const ScatteringField p_t = evolve_scattering(p0, t, c);
  const ScatteringField pt_t = companion_field(p0, t, v, c);
  const Eigen::Index n = p0.grid.num_points;
  Eigen::VectorXcd dets(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const DataKernel q = assemble_data_kernel(p_t, pt_t, p0.grid.x(i), rule);
    dets[i] = fredholm_determinant(q, 1);
  }
  return dets;
}

}  // namespace gpnls
