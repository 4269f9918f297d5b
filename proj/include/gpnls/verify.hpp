#pragma once

#include "gpnls/fredholm.hpp"
#include "gpnls/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gpnls {
namespace verify {

struct IdentityReport {
  std::string name;
  std::string parameters;
  std::vector<double> levels;   // refinement parameter per level (h or delta)
  std::vector<double> errors;
  double estimated_order = 0.0;
  double expected_order = 0.0;
  double order_tolerance = 0.0;
  bool degenerate = false;      // every error at round-off; order not measurable
  bool passed = false;
};

// Least-squares slope of log(error) against log(level). Requires >= 2 levels.
double estimate_order(const std::vector<double>& levels, const std::vector<double>& errors);

using HankelProfile = std::function<Complex(double)>;
using ParamKernel = std::function<Complex(double y, double z, double x)>;

struct KernelRuleOptions {
  std::vector<Eigen::Index> quad_levels{32, 64, 128};
  double dx = 1e-4;             // centered difference step for the outer x-derivative
  double expected_order = 1.0;  // left-Riemann quadrature
  double order_tolerance = 0.3;
};

// Discrete check of [F d/dx(H H') F'](y,z;x) = [FH](y,0;x) [H'F'](0,z;x) on
// the quadrature grid, compositions weighted exactly like the fredholm
// assembly. Kernels are evaluated directly (no periodic wrap); the Hankel
// profiles must decay within the integration window for the rule's boundary
// term to vanish.
IdentityReport check_kernel_product_rule(const HankelProfile& h, const HankelProfile& h_prime,
                                         const ParamKernel& f, const ParamKernel& f_prime,
                                         double x, const GridConfig& grid,
                                         const KernelRuleOptions& options = {});

// Smooth defaults: Gaussian-modulated trigonometric profiles of width 2.
struct KernelRuleInputs {
  HankelProfile h, h_prime;
  ParamKernel f, f_prime;
};
KernelRuleInputs default_kernel_rule_inputs();

struct KeyIdentityOptions {
  std::vector<Eigen::Index> quad_levels{32, 64, 128};
  double window_halfwidth = 10.0;  // measure on |x| <= this
  double expected_order = 1.0;
  double order_tolerance = 0.3;
};

// Discrete check of d/dx [P U P~](0,0;x,t) = g(0,0;x,t) g~(0,0;x,t): the
// composition trace D(x) is assembled with the fredholm weights, the
// x-derivative is spectral. Valid where the profile decays within the
// half-domain (periodic truncation leaves a boundary term p(x - L/2)
// p~(x - L/2) which is only small on the stated window).
IdentityReport check_key_identity_i(const ScatteringField& p0, double t, CompanionVariant v,
                                    const DispersionCoefficients& c,
                                    const KeyIdentityOptions& options = {});

struct SolverComparison {
  std::vector<double> times;
  std::vector<double> max_diff;            // max_x |g_GP - g_SS| per checkpoint
  std::vector<SolutionField> gp;           // GP evaluation per checkpoint
  std::vector<Eigen::MatrixXcd> stepper;   // physical stepper solution per checkpoint
};

// March the direct solver over [0, T] and evaluate the linearisation method
// at the checkpoints. linear_only disables the nonlinearity on both sides
// (the stepper's Psi branch and the GP side replaced by the exact linear
// propagation of g0).
SolverComparison compare_solvers(const ScatteringField& p0, double T,
                                 const DispersionCoefficients& c, CompanionVariant v, double dt,
                                 const std::vector<double>& checkpoints, bool linear_only = false);

struct DeterminantSeries {
  std::vector<double> times;
  std::vector<double> min_abs;
  std::vector<double> max_abs;
  std::vector<double> max_imag;
  std::vector<SolutionField> fields;
};

// Extrema over x of det1(x, t) at the checkpoints.
DeterminantSeries determinant_monitor(const ScatteringField& p0,
                                      const DispersionCoefficients& c, CompanionVariant v,
                                      const std::vector<double>& checkpoints);

}  // namespace verify
}  // namespace gpnls
