#pragma once

#include <vector>

#include "vstates/contour.hpp"
#include "vstates/quadrature.hpp"

namespace vstates {

/// Sine coefficients of the V-state equation error on each boundary:
///   r_j(theta) ~ sum_{k=1..M} b_{j,k} sin(m k theta).
struct DiscreteResidual {
  std::vector<double> b1;
  std::vector<double> b2;
  double max_abs = 0.0;         // max over nodes of |r_j(theta_i)|, both boundaries
  double cosine_content = 0.0;  // largest cosine/constant coefficient left by the projection

  /// Flattened (b1, b2), the value of F_{b,Omega}.
  std::vector<double> flatten() const;
};

enum class Projection {
  FoldReduced,  // residual evaluated on one sector, transforms of length N/m
  Full,         // residual evaluated on all N nodes, transforms of length N
};

/// F_{b,Omega}(a1, a2) at N nodes. Throws ContourError for invalid geometry.
DiscreteResidual assemble(const VortexContourCoeffs& coeffs, double omega, int nodes,
                          Projection projection = Projection::FoldReduced);

/// b_{j,k} = (2/N) sum_i r_j(theta_i) sin(m k theta_i), k = 1..modes, using all
/// N node values.
DiscreteResidual project_full(const PointwiseResidual& r, int fold, int modes);

/// Evaluates sum_k coeff[k-1] sin(m k theta_i) at the N nodes.
std::vector<double> synthesize_sines(const std::vector<double>& coeff, int fold, int nodes);

}  // namespace vstates
