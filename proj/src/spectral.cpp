#include "gpnls/spectral.hpp"

#include <unsupported/Eigen/FFT>

namespace gpnls {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

Eigen::VectorXcd fourier_symbols(const GridConfig& grid) {
  const Eigen::Index n = grid.num_points;
  Eigen::VectorXcd ik(n);
  const double scale = 2.0 * M_PI / grid.length;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double k = (j <= n / 2 - 1) ? static_cast<double>(j) : static_cast<double>(j - n);
    ik[j] = Complex(0.0, scale * k);
  }
  return ik;
}

Complex dispersion_symbol(const DispersionCoefficients& c, Complex ik) {
  const Complex ik2 = ik * ik;
  return ik2 * (c.mu2 + ik * (c.mu3 + ik * c.mu4));
}

bool check_dispersion_property(const DispersionCoefficients& c) {
  return c.mu2.real() == 0.0 && c.mu3.imag() == 0.0 && c.mu4.real() == 0.0;
}

Eigen::VectorXcd propagator_multipliers(const DispersionCoefficients& c, double t,
                                        const Eigen::VectorXcd& symbols) {
  Eigen::VectorXcd m(symbols.size());
  for (Eigen::Index j = 0; j < symbols.size(); ++j)
    m[j] = std::exp(t * dispersion_symbol(c, symbols[j]));
  return m;
}

Eigen::VectorXcd forward_transform(const Eigen::VectorXcd& f) {
  Eigen::VectorXcd out;
  fft_engine().fwd(out, f);
  return out;
}

Eigen::VectorXcd inverse_transform(const Eigen::VectorXcd& fhat) {
  Eigen::VectorXcd out;
  fft_engine().inv(out, fhat);
  return out;
}

Eigen::MatrixXcd forward_transform(const Eigen::MatrixXcd& cols) {
  Eigen::MatrixXcd out(cols.rows(), cols.cols());
  for (Eigen::Index e = 0; e < cols.cols(); ++e)
    out.col(e) = forward_transform(Eigen::VectorXcd(cols.col(e)));
  return out;
}

Eigen::MatrixXcd inverse_transform(const Eigen::MatrixXcd& cols) {
  Eigen::MatrixXcd out(cols.rows(), cols.cols());
  for (Eigen::Index e = 0; e < cols.cols(); ++e)
    out.col(e) = inverse_transform(Eigen::VectorXcd(cols.col(e)));
  return out;
}

ScatteringField evolve_scattering(const ScatteringField& p0, double t,
                                  const DispersionCoefficients& c) {
  const Eigen::VectorXcd mult =
      propagator_multipliers(c, t - p0.time, fourier_symbols(p0.grid));
  ScatteringField out = p0;
  out.time = t;
  for (Eigen::Index e = 0; e < p0.data.cols(); ++e) {
    Eigen::VectorXcd fhat = forward_transform(Eigen::VectorXcd(p0.data.col(e)));
    fhat.array() *= mult.array();
    out.data.col(e) = inverse_transform(fhat);
  }
  return out;
}

Eigen::VectorXcd spectral_derivative(const GridConfig& grid, const Eigen::VectorXcd& f,
                                     int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("spectral_derivative: order must be 1..4");
  const Eigen::VectorXcd ik = fourier_symbols(grid);
  Eigen::VectorXcd fhat = forward_transform(f);
  for (Eigen::Index j = 0; j < fhat.size(); ++j) {
    Complex w = ik[j];
    Complex p = w;
    for (int o = 1; o < order; ++o) p *= w;
    fhat[j] *= p;
  }
  return inverse_transform(fhat);
}

Eigen::MatrixXcd spectral_derivative(const GridConfig& grid, const Eigen::MatrixXcd& cols,
                                     int order) {
  Eigen::MatrixXcd out(cols.rows(), cols.cols());
  for (Eigen::Index e = 0; e < cols.cols(); ++e)
    out.col(e) = spectral_derivative(grid, Eigen::VectorXcd(cols.col(e)), order);
  return out;
}

Eigen::VectorXcd band_limit(const Eigen::VectorXcd& f, Eigen::Index k_max) {
  const Eigen::Index n = f.size();
  Eigen::VectorXcd fhat = forward_transform(f);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index k = (j <= n / 2 - 1) ? j : j - n;
    if (std::abs(k) > k_max) fhat[j] = Complex(0.0, 0.0);
  }
  return inverse_transform(fhat);
}

Eigen::MatrixXcd band_limit(const Eigen::MatrixXcd& cols, Eigen::Index k_max) {
  Eigen::MatrixXcd out(cols.rows(), cols.cols());
  for (Eigen::Index e = 0; e < cols.cols(); ++e)
    out.col(e) = band_limit(Eigen::VectorXcd(cols.col(e)), k_max);
  return out;
}

Eigen::VectorXd entry_l2_norms(const ScatteringField& f) {
  Eigen::VectorXd norms(f.data.cols());
  for (Eigen::Index e = 0; e < f.data.cols(); ++e)
    norms[e] = std::sqrt(f.grid.dx() * f.data.col(e).squaredNorm());
  return norms;
}

}  // namespace gpnls
