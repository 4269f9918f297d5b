#include "gpnls/scattering.hpp"

#include "gpnls/spectral.hpp"

#include <cmath>

namespace gpnls {

ScatteringField field_from_scalar_profile(const GridConfig& grid,
                                          const std::function<Complex(double)>& profile,
                                          double time) {
  ScatteringField f = zero_field(grid, time);
  for (Eigen::Index i = 0; i < grid.num_points; ++i) {
    const Complex v = profile(grid.x(i));
    for (Eigen::Index e = 0; e < grid.entries(); ++e) f.data(i, e) = v;
  }
  return f;
}

ScatteringField field_from_block_profile(const GridConfig& grid,
                                         const std::function<Eigen::MatrixXcd(double)>& profile,
                                         double time) {
  ScatteringField f = zero_field(grid, time);
  for (Eigen::Index i = 0; i < grid.num_points; ++i) f.set_block(i, profile(grid.x(i)));
  return f;
}

Eigen::Index reflected_index(Eigen::Index n, Eigen::Index i) { return (n - i) % n; }

namespace {

// Blockwise transpose (optionally conjugated, optionally negated) of a whole
// field; the returned field has the transposed block shape.
ScatteringField transform_blocks(const ScatteringField& src, bool conjugate, bool negate,
                                 bool reflect) {
  ScatteringField out = zero_field(transposed(src.grid), src.time);
  const Eigen::Index n = src.grid.num_points;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = reflect ? reflected_index(n, i) : i;
    Eigen::MatrixXcd b = src.block(j).transpose();
    if (conjugate) b = b.conjugate();
    if (negate) b = -b;
    out.set_block(i, b);
  }
  return out;
}

}  // namespace

ScatteringField companion_field(const ScatteringField& p0, double t, CompanionVariant v,
                                const DispersionCoefficients& c) {
  if (p0.time != 0.0)
    throw std::invalid_argument("companion_field: p0 must be given at time 0");
  if (is_transpose_variant(v) && c.mu3 != Complex(0.0, 0.0))
    throw std::invalid_argument(
        "companion_field: reverse-space-time/reverse-time variants require mu3 = 0");

  switch (v) {
    case CompanionVariant::Adjoint:
      return transform_blocks(evolve_scattering(p0, t, c), true, false, false);
    case CompanionVariant::NegatedAdjoint:
      return transform_blocks(evolve_scattering(p0, t, c), true, true, false);
    case CompanionVariant::ReverseSpaceTimeTranspose: {
      ScatteringField out = transform_blocks(evolve_scattering(p0, -t, c), false, false, true);
      out.time = t;
      return out;
    }
    case CompanionVariant::ReverseTimeTranspose: {
      ScatteringField out = transform_blocks(evolve_scattering(p0, -t, c), false, false, false);
      out.time = t;
      return out;
    }
  }
  throw std::logic_error("companion_field: unreachable");
}

Eigen::MatrixXcd hankel_sample(const ScatteringField& p, double arg) {
  const Eigen::Index n = p.grid.num_points;
  double pos = (arg + 0.5 * p.grid.length) / p.grid.dx();
  pos = std::fmod(pos, static_cast<double>(n));
  if (pos < 0.0) pos += static_cast<double>(n);

  const double rounded = std::round(pos);
  if (std::abs(pos - rounded) < 1e-9) {
    const Eigen::Index i = static_cast<Eigen::Index>(rounded) % n;
    return p.block(i);
  }
  const Eigen::Index i0 = static_cast<Eigen::Index>(std::floor(pos));
  const Eigen::Index i1 = (i0 + 1) % n;
  const double w = pos - static_cast<double>(i0);
  return (1.0 - w) * p.block(i0) + w * p.block(i1);
}

}  // namespace gpnls
