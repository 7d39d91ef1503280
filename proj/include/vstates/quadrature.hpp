#pragma once

#include <span>
#include <vector>

#include "vstates/contour.hpp"

namespace vstates {

class QuadratureError : public std::invalid_argument {
 public:
  explicit QuadratureError(const std::string& what) : std::invalid_argument(what) {}
};

/// One sampled closed curve: nodes and d/dtheta at equispaced parameters.
struct BoundaryView {
  std::span<const cplx> z;
  std::span<const cplx> dz;
};

inline BoundaryView outer_boundary(const SampledContour& sc) { return {sc.z1, sc.dz1}; }
inline BoundaryView inner_boundary(const SampledContour& sc) { return {sc.z2, sc.dz2}; }

enum class Diagonal {
  OnCurve,   // targets[i] is source node i; the singular term takes its limit value
  OffCurve,  // targets are away from the source curve
};

/// Trapezoidal approximation of
///   I(z) = 1/(2 pi i) \oint (conj(zeta) - conj(z)) / (zeta - z) dzeta
/// over one boundary, for each target. With Diagonal::OnCurve the targets
/// must coincide with the leading source nodes; the self term is replaced by
/// its limit conj(z'), which keeps the periodic trapezoid spectrally accurate.
std::vector<cplx> kernel_integral(std::span<const cplx> targets, BoundaryView source,
                                  Diagonal diagonal);

/// Pointwise residual Re[(2 Omega conj(z_j) + I_1(z_j) - I_2(z_j)) z_j'] on
/// each boundary, where I_1 integrates over the outer and I_2 over the inner
/// boundary.
struct PointwiseResidual {
  std::vector<double> outer;
  std::vector<double> inner;
};

PointwiseResidual vstate_residual_pointwise(const SampledContour& sc, double omega);

/// Same residual restricted to the first `count` nodes of each boundary.
PointwiseResidual vstate_residual_leading(const SampledContour& sc, double omega, int count);

}  // namespace vstates
