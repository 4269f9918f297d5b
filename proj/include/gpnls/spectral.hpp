#pragma once

#include "gpnls/types.hpp"

namespace gpnls {

// Discrete Fourier multipliers i*kappa_k = 2*pi*i*k/L in FFT index order
// (k = 0..n/2-1, -n/2..-1).
Eigen::VectorXcd fourier_symbols(const GridConfig& grid);

// d(i*kappa) = mu2 (i*kappa)^2 + mu3 (i*kappa)^3 + mu4 (i*kappa)^4.
Complex dispersion_symbol(const DispersionCoefficients& c, Complex ik);

// True iff (d(i*kappa))^* = -d(i*kappa) for all real kappa, checked exactly
// on the coefficients: Re mu2 = 0, Im mu3 = 0, Re mu4 = 0.
bool check_dispersion_property(const DispersionCoefficients& c);

// exp(t * d(i*kappa_k)) per mode; unit modulus whenever the dispersion
// property holds. t may be negative.
Eigen::VectorXcd propagator_multipliers(const DispersionCoefficients& c, double t,
                                        const Eigen::VectorXcd& symbols);

Eigen::VectorXcd forward_transform(const Eigen::VectorXcd& f);
Eigen::VectorXcd inverse_transform(const Eigen::VectorXcd& fhat);

// Column-wise transforms for block-entry profiles.
Eigen::MatrixXcd forward_transform(const Eigen::MatrixXcd& cols);
Eigen::MatrixXcd inverse_transform(const Eigen::MatrixXcd& cols);

// Exact single-step propagation of the linear equation dp/dt = d(D)p from
// p0.time to t, entrywise in Fourier space.
ScatteringField evolve_scattering(const ScatteringField& p0, double t,
                                  const DispersionCoefficients& c);

// Entrywise multiplication by (i*kappa)^order in Fourier space; order in 1..4.
Eigen::VectorXcd spectral_derivative(const GridConfig& grid, const Eigen::VectorXcd& f, int order);
Eigen::MatrixXcd spectral_derivative(const GridConfig& grid, const Eigen::MatrixXcd& cols, int order);

// Zero out all modes with |k| > k_max. Keeps real fields real.
Eigen::VectorXcd band_limit(const Eigen::VectorXcd& f, Eigen::Index k_max);
Eigen::MatrixXcd band_limit(const Eigen::MatrixXcd& cols, Eigen::Index k_max);

// sqrt(dx * sum |f_i|^2) per block entry.
Eigen::VectorXd entry_l2_norms(const ScatteringField& f);

}  // namespace gpnls
