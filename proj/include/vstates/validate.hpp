#pragma once

#include <string>
#include <vector>

namespace vstates {

struct ValidationCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool upper_bound = true;  // pass iff value <= threshold (else value >= threshold)

  bool passed() const { return upper_bound ? value <= threshold : value >= threshold; }
};

struct ValidationReport {
  std::string suite;
  std::vector<ValidationCheck> checks;

  bool passed() const;
};

/// Closed-form annulus integrals: I = (b^2 - 1)/z on |z| = 1 and I = 0 on
/// |z| = b, plus a vanishing pointwise residual.
ValidationReport validate_annulus(double b, int nodes = 256);

/// Smallest singular value of the finite-difference Jacobian at the annulus:
/// below 1e-4 within 1e-3 of each Omega_m^{+-}(b), above 1e-2 midway.
ValidationReport validate_jacobian(double b, int m, int nodes = 512, int modes = 15);

/// Trapezoid refinement N -> 2N on a smooth perturbed contour agrees to 1e-12.
ValidationReport validate_convergence(double b, int m, int nodes = 256);

/// Dispatches on "annulus", "jacobian" or "convergence"; throws
/// std::invalid_argument for anything else.
ValidationReport run_validation(const std::string& suite, double b, int m);

}  // namespace vstates
