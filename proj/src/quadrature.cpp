#include "vstates/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vstates {

namespace {

constexpr double kOffCurveGuard = 1e-10;

// Accumulates conj(w_k)/w_k * dzeta_k, w_k = zeta_k - z, over k in [lo, hi).
// conj(w)/w = conj(w)^2 / |w|^2. Returns the smallest |w_k|^2 seen.
double accumulate(const cplx& z, BoundaryView src, std::size_t lo, std::size_t hi, double& sr,
                  double& si) {
  const double zx = z.real(), zy = z.imag();
  const cplx* pz = src.z.data();
  const cplx* pd = src.dz.data();
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k < hi; ++k) {
    const double wx = pz[k].real() - zx;
    const double wy = pz[k].imag() - zy;
    const double d2 = wx * wx + wy * wy;
    closest = std::min(closest, d2);
    const double inv = 1.0 / d2;
    // conj(w)^2 = (wx^2 - wy^2) - 2 i wx wy
    const double kr = (wx * wx - wy * wy) * inv;
    const double ki = -2.0 * wx * wy * inv;
    const double dr = pd[k].real(), di = pd[k].imag();
    sr += kr * dr - ki * di;
    si += kr * di + ki * dr;
  }
  return closest;
}

// Sum over all source nodes except `self` (pass n for none).
cplx raw_sum(const cplx& z, BoundaryView src, std::size_t self, double* min_dist2 = nullptr) {
  const std::size_t n = src.z.size();
  double sr = 0.0, si = 0.0;
  double closest = accumulate(z, src, 0, std::min(self, n), sr, si);
  if (self < n) closest = std::min(closest, accumulate(z, src, self + 1, n, sr, si));
  if (min_dist2 != nullptr) *min_dist2 = closest;
  return {sr, si};
}

// 1/(2 pi i) * (2 pi / N) * sum = -i/N * sum
cplx scale(const cplx& sum, std::size_t n) {
  return cplx(sum.imag(), -sum.real()) / static_cast<double>(n);
}

}  // namespace

std::vector<cplx> kernel_integral(std::span<const cplx> targets, BoundaryView source,
                                  Diagonal diagonal) {
  const std::size_t n = source.z.size();
  if (source.dz.size() != n) throw QuadratureError("source nodes and tangents differ in length");
  std::vector<cplx> out(targets.size());

  if (diagonal == Diagonal::OnCurve) {
    if (targets.size() > n) throw QuadratureError("more on-curve targets than source nodes");
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (targets[i] != source.z[i]) {
        throw QuadratureError("on-curve target " + std::to_string(i) +
                              " is not aligned with its source node");
      }
      cplx sum = raw_sum(targets[i], source, i);
      sum += std::conj(source.dz[i]);
      out[i] = scale(sum, n);
    }
    return out;
  }

  for (std::size_t i = 0; i < targets.size(); ++i) {
    double closest = 0.0;
    const cplx sum = raw_sum(targets[i], source, n, &closest);
    if (closest < kOffCurveGuard * kOffCurveGuard) {
      throw QuadratureError("off-curve target " + std::to_string(i) +
                            " lies on a source node; use on-curve evaluation");
    }
    out[i] = scale(sum, n);
  }
  return out;
}

PointwiseResidual vstate_residual_leading(const SampledContour& sc, double omega, int count) {
  const auto outer = outer_boundary(sc);
  const auto inner = inner_boundary(sc);
  const std::span<const cplx> t1(sc.z1.data(), static_cast<std::size_t>(count));
  const std::span<const cplx> t2(sc.z2.data(), static_cast<std::size_t>(count));

  const auto i11 = kernel_integral(t1, outer, Diagonal::OnCurve);
  const auto i12 = kernel_integral(t1, inner, Diagonal::OffCurve);
  const auto i21 = kernel_integral(t2, outer, Diagonal::OffCurve);
  const auto i22 = kernel_integral(t2, inner, Diagonal::OnCurve);

  PointwiseResidual r;
  r.outer.resize(count);
  r.inner.resize(count);
  for (int i = 0; i < count; ++i) {
    r.outer[i] = ((2.0 * omega * std::conj(sc.z1[i]) + i11[i] - i12[i]) * sc.dz1[i]).real();
    r.inner[i] = ((2.0 * omega * std::conj(sc.z2[i]) + i21[i] - i22[i]) * sc.dz2[i]).real();
  }
  return r;
}

PointwiseResidual vstate_residual_pointwise(const SampledContour& sc, double omega) {
  return vstate_residual_leading(sc, omega, sc.nodes);
}

}  // namespace vstates
