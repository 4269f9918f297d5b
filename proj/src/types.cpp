#include "gpnls/types.hpp"

#include <sstream>

namespace gpnls {

Eigen::VectorXd GridConfig::x_grid() const {
  Eigen::VectorXd xs(num_points);
  for (Eigen::Index i = 0; i < num_points; ++i) xs[i] = x(i);
  return xs;
}

void GridConfig::validate() const {
  if (!(length > 0.0)) throw std::invalid_argument("length: must be > 0");
  if (num_points < 4 || (num_points & (num_points - 1)) != 0)
    throw std::invalid_argument("nx: must be a power of two >= 4");
  if (num_quad < 2) throw std::invalid_argument("nquad: must be >= 2");
  if (block_rows < 1) throw std::invalid_argument("block_rows: must be >= 1");
  if (block_cols < 1) throw std::invalid_argument("block_cols: must be >= 1");
}

GridConfig transposed(const GridConfig& grid) {
  GridConfig g = grid;
  std::swap(g.block_rows, g.block_cols);
  return g;
}

bool is_transpose_variant(CompanionVariant v) {
  return v == CompanionVariant::ReverseSpaceTimeTranspose ||
         v == CompanionVariant::ReverseTimeTranspose;
}

const char* to_string(CompanionVariant v) {
  switch (v) {
    case CompanionVariant::Adjoint: return "adjoint";
    case CompanionVariant::NegatedAdjoint: return "negated-adjoint";
    case CompanionVariant::ReverseSpaceTimeTranspose: return "reverse-space-time-transpose";
    case CompanionVariant::ReverseTimeTranspose: return "reverse-time-transpose";
  }
  return "?";
}

CompanionVariant parse_variant(const std::string& name) {
  if (name == "adjoint") return CompanionVariant::Adjoint;
  if (name == "negated-adjoint") return CompanionVariant::NegatedAdjoint;
  if (name == "reverse-space-time-transpose") return CompanionVariant::ReverseSpaceTimeTranspose;
  if (name == "reverse-time-transpose") return CompanionVariant::ReverseTimeTranspose;
  throw std::invalid_argument("variant: unknown name '" + name + "'");
}

Eigen::MatrixXcd ScatteringField::block(Eigen::Index ix) const {
  Eigen::MatrixXcd b(grid.block_rows, grid.block_cols);
  for (Eigen::Index r = 0; r < grid.block_rows; ++r)
    for (Eigen::Index c = 0; c < grid.block_cols; ++c)
      b(r, c) = data(ix, r * grid.block_cols + c);
  return b;
}

void ScatteringField::set_block(Eigen::Index ix, const Eigen::MatrixXcd& b) {
  for (Eigen::Index r = 0; r < grid.block_rows; ++r)
    for (Eigen::Index c = 0; c < grid.block_cols; ++c)
      data(ix, r * grid.block_cols + c) = b(r, c);
}

ScatteringField zero_field(const GridConfig& grid, double time) {
  ScatteringField f;
  f.grid = grid;
  f.time = time;
  f.data = Eigen::MatrixXcd::Zero(grid.num_points, grid.entries());
  return f;
}

Eigen::MatrixXcd SolutionField::block(const Eigen::MatrixXcd& profile, Eigen::Index ix,
                                      bool tilde_shape) const {
  const Eigen::Index rows = tilde_shape ? grid.block_cols : grid.block_rows;
  const Eigen::Index cols = tilde_shape ? grid.block_rows : grid.block_cols;
  Eigen::MatrixXcd b(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) b(r, c) = profile(ix, r * cols + c);
  return b;
}

NearSingularOperator::NearSingularOperator(double x_, double t_, Complex det1_)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "near-singular data operator: |det1| = " << std::abs(det1_) << " at x = " << x_
           << ", t = " << t_;
        return os.str();
      }()),
      x(x_),
      t(t_),
      det1(det1_) {}

}  // namespace gpnls
