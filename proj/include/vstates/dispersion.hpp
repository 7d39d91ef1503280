#pragma once

#include <array>
#include <variant>

namespace vstates {

/// Linear theory of the annulus {b < |z| < 1}.
///
/// The public API is indexed by fold number m (number of symmetry sides).
/// A fold-m state corresponds to Fourier frequency n = m - 1 in the
/// linearized operator, so delta(), frequency_matrix() and kernel_vector()
/// take the frequency while everything else takes the fold.
namespace dispersion {

/// x^n by binary exponentiation.
double ipow(double x, unsigned n);

/// Determinant of the frequency-n block of the linearized V-state operator
/// divided by b. Throws std::domain_error unless 0 < b < 1.
double delta(unsigned n, double lambda, double b);

/// f_m(b) = 1 + b^m - m(1 - b^2)/2. Negative values certify two distinct
/// real bifurcation eigenvalues for fold m.
double feasibility(int m, double b);

/// Unique root of feasibility(m, .) on (0,1). Requires m >= 3.
double critical_radius(int m);

/// phi_n(b) = (1 - b^2)n - (1 + b^2) - 2 b^{n+1}; its root marks the radius
/// at which lambda = (1 + b^2)/2 becomes a double eigenvalue.
double double_eigenvalue_locus(int n, double b);

/// Unique root of double_eigenvalue_locus(n, .) on (0,1). Requires n >= 2.
double double_eigenvalue_radius(int n);

struct DispersionPoint {
  int fold = 0;
  double inner_radius = 0.0;
  double lambda_minus = 0.0;  // pairs with omega_plus
  double lambda_plus = 0.0;   // pairs with omega_minus
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  bool transversal = false;
};

struct Infeasible {
  int fold = 0;
  double inner_radius = 0.0;
  double feasibility = 0.0;
};

using FoldEigenvalues = std::variant<DispersionPoint, Infeasible>;

/// Bifurcation angular velocities Omega_m^{+-}(b) of fold m from the
/// annulus of inner radius b. Returns Infeasible when f_m(b) >= 0 or m < 3.
FoldEigenvalues eigenvalues_for_fold(int m, double b);

/// lambda = 1 - 2 Omega.
inline double lambda_from_omega(double omega) { return 1.0 - 2.0 * omega; }
inline double omega_from_lambda(double lambda) { return 0.5 * (1.0 - lambda); }

struct FrequencyMatrix {
  unsigned n = 0;
  double lambda = 0.0;
  double b = 0.0;
  std::array<std::array<double, 2>, 2> entries{};

  double determinant() const;
  std::array<double, 2> apply(const std::array<double, 2>& v) const;
};

/// The 2x2 block M_n mapping the frequency-n coefficients of the boundary
/// perturbation to the coefficients of the linearized residual.
FrequencyMatrix frequency_matrix(unsigned n, double lambda, double b);

/// Generator (n(1-lambda) - lambda, -b^n) of the kernel of M_n. Only
/// meaningful when delta(n, lambda, b) vanishes; not re-checked here.
std::array<double, 2> kernel_vector(unsigned n, double lambda, double b);

}  // namespace dispersion
}  // namespace vstates
