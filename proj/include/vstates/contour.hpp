#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace vstates {

using cplx = std::complex<double>;

/// Thrown when a coefficient set does not describe two nested star-shaped
/// curves, or when the node count would alias the cosine basis.
class ContourError : public std::domain_error {
 public:
  explicit ContourError(const std::string& what) : std::domain_error(what) {}
};

/// Boundary radii as m-fold cosine series:
///   rho_1(theta) = 1 + sum_k a1[k-1] cos(m k theta)
///   rho_2(theta) = b + sum_k a2[k-1] cos(m k theta)
/// a1 and a2 have the same length M. All-zero arrays give the annulus.
struct VortexContourCoeffs {
  double b = 0.5;
  int fold = 3;
  std::vector<double> a1;
  std::vector<double> a2;

  VortexContourCoeffs() = default;
  VortexContourCoeffs(double inner_radius, int m, int modes)
      : b(inner_radius), fold(m), a1(modes, 0.0), a2(modes, 0.0) {}

  int modes() const { return static_cast<int>(a1.size()); }

  /// Flattened unknowns (a1[0..M), a2[0..M)).
  std::vector<double> flatten() const;
  void assign(const std::vector<double>& flat);

  /// Continuous radii and their theta-derivatives.
  double rho1(double theta) const;
  double rho2(double theta) const;
  cplx z1(double theta) const;
  cplx z2(double theta) const;

  bool operator==(const VortexContourCoeffs&) const = default;
};

/// Largest M that the node count can resolve without aliasing: floor((N-1)/(2m)).
int max_modes(int nodes, int m);

/// Points and analytic tangents of both boundaries at theta_j = 2 pi j / N.
struct SampledContour {
  int nodes = 0;
  int fold = 1;
  std::vector<double> theta;
  std::vector<cplx> z1, z2;
  std::vector<cplx> dz1, dz2;
};

/// Samples both boundaries. Throws ContourError if N < 2mM+1, if N is not a
/// multiple of m, or if a radius is non-positive or the inner boundary is not
/// strictly inside the outer one at some node.
SampledContour sample(const VortexContourCoeffs& coeffs, int nodes);

/// Minimum of |z1_i - z2_j| over all node pairs.
double boundary_distance(const SampledContour& sc);

/// Node-pair minimum followed by a local refinement of both curve parameters
/// on the continuous cosine series.
double boundary_distance_refined(const VortexContourCoeffs& coeffs, const SampledContour& sc);

/// The first N/m nodes: one fundamental sector of an m-fold symmetric sample.
struct ReducedContour {
  int nodes = 0;  // full node count N
  int fold = 1;
  SampledContour sector;
};

ReducedContour fold_reduce(const SampledContour& sc);

/// Rebuilds all N nodes by rotating the sector through multiples of 2 pi/m.
SampledContour reconstruct(const ReducedContour& reduced);

}  // namespace vstates
