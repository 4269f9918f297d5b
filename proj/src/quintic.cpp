#include "gpnls/quintic.hpp"

#include <cmath>

namespace gpnls {

Eigen::MatrixXcd quintic_nonlinearity(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& gt,
                                      const Eigen::MatrixXcd& dg, const Eigen::MatrixXcd& dgt,
                                      const Eigen::MatrixXcd& d2g, const Eigen::MatrixXcd& d2gt,
                                      const DispersionCoefficients& c) {
  if (g.cols() != gt.rows() || gt.cols() != g.rows())
    throw std::invalid_argument("quintic_nonlinearity: block shapes are not commensurate");

  const Eigen::MatrixXcd gt_g = gt * g;    // d2 x d2
  const Eigen::MatrixXcd g_gt = g * gt;    // d1 x d1

  Eigen::MatrixXcd rhs = 2.0 * c.mu2 * (g * gt_g);
  rhs.noalias() += 3.0 * c.mu3 * (dg * gt_g);
  rhs.noalias() += 3.0 * c.mu3 * (g_gt * dg);
  rhs.noalias() += 2.0 * c.mu4 * (2.0 * (d2g * gt_g));
  rhs.noalias() += 2.0 * c.mu4 * (g * (d2gt * g));
  rhs.noalias() += 2.0 * c.mu4 * (2.0 * (g_gt * d2g));
  rhs.noalias() += 2.0 * c.mu4 * (dg * (dgt * g));
  rhs.noalias() += 2.0 * c.mu4 * (3.0 * (dg * (gt * dg)));
  rhs.noalias() += 2.0 * c.mu4 * (g * (dgt * dg));
  rhs.noalias() += 2.0 * c.mu4 * (3.0 * (g_gt * (g * gt_g)));
  return rhs;
}

Eigen::MatrixXcd quintic_rhs(const SolutionField& s, const DispersionCoefficients& c) {
  const Eigen::Index n = s.grid.num_points;
  Eigen::MatrixXcd out(n, s.grid.entries());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::MatrixXcd psi = quintic_nonlinearity(
        s.block(s.g, i), s.block(s.g_tilde, i, true), s.block(s.dg, i),
        s.block(s.dg_tilde, i, true), s.block(s.d2g, i), s.block(s.d2g_tilde, i, true), c);
    for (Eigen::Index r = 0; r < s.grid.block_rows; ++r)
      for (Eigen::Index cc = 0; cc < s.grid.block_cols; ++cc)
        out(i, r * s.grid.block_cols + cc) = psi(r, cc);
  }
  return out;
}

PdeResidual pde_residual(const SolutionField& s_minus, const SolutionField& s,
                         const SolutionField& s_plus, double delta,
                         const DispersionCoefficients& c) {
  const double tol = 1e-9 * std::max(1.0, std::abs(s.time));
  if (std::abs(s.time - s_minus.time - delta) > tol ||
      std::abs(s_plus.time - s.time - delta) > tol)
    throw std::invalid_argument("pde_residual: fields must be at t - delta, t, t + delta");

  PdeResidual r;
  r.field = (s_plus.g - s_minus.g) / (2.0 * delta);
  r.field -= c.mu2 * s.d2g + c.mu3 * s.d3g + c.mu4 * s.d4g;
  r.field -= quintic_rhs(s, c);

  const Eigen::Index n = s.grid.num_points;
  r.per_x.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) r.per_x[i] = r.field.row(i).norm();
  r.max_norm = r.per_x.maxCoeff();
  r.l2_norm = std::sqrt(s.grid.dx() * r.per_x.squaredNorm());
  return r;
}

}  // namespace gpnls
