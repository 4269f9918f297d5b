#pragma once

#include "gpnls/types.hpp"

#include <functional>

namespace gpnls {

// Fill every block entry with the same scalar profile evaluated on the grid.
ScatteringField field_from_scalar_profile(const GridConfig& grid,
                                          const std::function<Complex(double)>& profile,
                                          double time = 0.0);

// General matrix-valued initial data.
ScatteringField field_from_block_profile(const GridConfig& grid,
                                         const std::function<Eigen::MatrixXcd(double)>& profile,
                                         double time = 0.0);

// Index of -x on the periodic grid; the endpoint maps to itself under the
// identification -(-L/2) = L/2 = -L/2.
Eigen::Index reflected_index(Eigen::Index n, Eigen::Index i);

// Companion scattering data p~(.,t) built from p0 at time 0:
//   Adjoint                     p~(x,t) =  p(x,t)^dag
//   NegatedAdjoint              p~(x,t) = -p(x,t)^dag
//   ReverseSpaceTimeTranspose   p~(x,t) =  p(-x,-t)^T   (requires mu3 = 0)
//   ReverseTimeTranspose        p~(x,t) =  p(x,-t)^T    (requires mu3 = 0)
// Every variant satisfies dp~/dt = tilde_mu2 D^2 p~ + tilde_mu3 D^3 p~ + tilde_mu4 D^4 p~.
ScatteringField companion_field(const ScatteringField& p0, double t, CompanionVariant v,
                                const DispersionCoefficients& c);

// Value of the Hankel kernel p(arg) with arg = y + z + x reduced into
// [-L/2, L/2) by periodic wrapping; linear interpolation between nodes when
// arg is off-grid.
Eigen::MatrixXcd hankel_sample(const ScatteringField& p, double arg);

}  // namespace gpnls
