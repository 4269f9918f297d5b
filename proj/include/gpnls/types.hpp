#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace gpnls {

using Complex = std::complex<double>;

// Periodic grid on [-L/2, L/2) together with the quadrature resolution on
// [-L/2, 0] and the matrix block shape of the scattering data.
struct GridConfig {
  double length = 40.0;
  Eigen::Index num_points = 256;  // spatial samples, power of two
  Eigen::Index num_quad = 128;    // quadrature nodes on [-L/2, 0]
  Eigen::Index block_rows = 1;
  Eigen::Index block_cols = 1;

  double dx() const { return length / static_cast<double>(num_points); }
  double x(Eigen::Index i) const { return -0.5 * length + static_cast<double>(i) * dx(); }
  Eigen::VectorXd x_grid() const;
  Eigen::Index entries() const { return block_rows * block_cols; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Grid for companion fields: block shape transposed, everything else shared.
GridConfig transposed(const GridConfig& grid);

// Coefficients of d(D) = mu2*D^2 + mu3*D^3 + mu4*D^4 and the derived tilde
// coefficients tilde_mu_j = (-1)^(j-1) mu_j of the companion equation.
struct DispersionCoefficients {
  Complex mu2{0.0, 0.0};
  Complex mu3{0.0, 0.0};
  Complex mu4{0.0, 0.0};

  Complex tilde_mu2() const { return -mu2; }
  Complex tilde_mu3() const { return mu3; }
  Complex tilde_mu4() const { return -mu4; }
};

// Rule producing the companion data p~ from p. Adjoint variants conjugate-
// transpose the blocks; the transpose variants additionally reverse time
// (and space) and require mu3 = 0.
enum class CompanionVariant {
  Adjoint,
  NegatedAdjoint,
  ReverseSpaceTimeTranspose,
  ReverseTimeTranspose,
};

bool is_transpose_variant(CompanionVariant v);
const char* to_string(CompanionVariant v);
CompanionVariant parse_variant(const std::string& name);

// Matrix-valued field sampled on the periodic x-grid at one time.
// data is num_points x (block_rows*block_cols); column r*block_cols + c
// holds the x-profile of block entry (r, c).
struct ScatteringField {
  GridConfig grid;
  double time = 0.0;
  Eigen::MatrixXcd data;

  Eigen::MatrixXcd block(Eigen::Index ix) const;
  void set_block(Eigen::Index ix, const Eigen::MatrixXcd& b);
};

ScatteringField zero_field(const GridConfig& grid, double time = 0.0);

// g(0,0;x,t) over the x-grid with its companion and spectral derivatives,
// plus the Fredholm determinant det1(x,t) recorded per grid point.
struct SolutionField {
  GridConfig grid;
  double time = 0.0;
  Eigen::MatrixXcd g, dg, d2g, d3g, d4g;            // num_points x (d1*d2)
  Eigen::MatrixXcd g_tilde, dg_tilde, d2g_tilde;    // num_points x (d2*d1)
  Eigen::VectorXcd det1;

  Eigen::MatrixXcd block(const Eigen::MatrixXcd& profile, Eigen::Index ix,
                         bool tilde_shape = false) const;
};

// |det1| dropped below the solvability threshold at some x: the Grassmannian
// coordinate patch broke down. No patch change is attempted.
struct NearSingularOperator : std::runtime_error {
  NearSingularOperator(double x_, double t_, Complex det1_);
  double x;
  double t;
  Complex det1;
};

}  // namespace gpnls
