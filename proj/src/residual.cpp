#include "vstates/residual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vstates {

namespace {

// Real DFT of samples r_0..r_{L-1} taken at angles 2 pi i / L:
//   s_k = (2/L) sum r_i sin(2 pi k i / L),   c_k = (2/L) sum r_i cos(2 pi k i / L)
// (c_0 uses 1/L). Sine coefficients for k = 1..modes go to `sines`; the
// return value is the largest |c_k| over 0 <= k <= L/2.
double real_dft(const std::vector<double>& r, int modes, std::vector<double>& sines) {
  const int len = static_cast<int>(r.size());
  std::vector<double> c(len), s(len);
  for (int j = 0; j < len; ++j) {
    const double t = 2.0 * std::numbers::pi * j / len;
    c[j] = std::cos(t);
    s[j] = std::sin(t);
  }
  sines.assign(modes, 0.0);
  for (int k = 1; k <= modes; ++k) {
    double acc = 0.0;
    for (int i = 0; i < len; ++i) {
      acc += r[i] * s[(static_cast<long long>(k) * i) % len];
    }
    sines[k - 1] = 2.0 * acc / len;
  }
  double cos_max = 0.0;
  for (int k = 0; k <= len / 2; ++k) {
    double acc = 0.0;
    for (int i = 0; i < len; ++i) {
      acc += r[i] * c[(static_cast<long long>(k) * i) % len];
    }
    const double ck = (k == 0 ? 1.0 : 2.0) * acc / len;
    cos_max = std::max(cos_max, std::abs(ck));
  }
  return cos_max;
}

double max_abs_of(const PointwiseResidual& r) {
  double mx = 0.0;
  for (double v : r.outer) mx = std::max(mx, std::abs(v));
  for (double v : r.inner) mx = std::max(mx, std::abs(v));
  return mx;
}

}  // namespace

std::vector<double> DiscreteResidual::flatten() const {
  std::vector<double> flat(b1);
  flat.insert(flat.end(), b2.begin(), b2.end());
  return flat;
}

DiscreteResidual project_full(const PointwiseResidual& r, int fold, int modes) {
  // On all N nodes, sin(m k theta_i) = sin(2 pi (m k) i / N): the fold-m
  // mode k is DFT bin m k. Cosine leakage is checked over every bin.
  const int n = static_cast<int>(r.outer.size());
  DiscreteResidual out;
  std::vector<double> bins;
  const int top = std::min(fold * modes, n / 2);
  double cos1 = real_dft(r.outer, top, bins);
  out.b1.resize(modes);
  for (int k = 1; k <= modes; ++k) out.b1[k - 1] = bins[fold * k - 1];
  double cos2 = real_dft(r.inner, top, bins);
  out.b2.resize(modes);
  for (int k = 1; k <= modes; ++k) out.b2[k - 1] = bins[fold * k - 1];
  out.cosine_content = std::max(cos1, cos2);
  out.max_abs = max_abs_of(r);
  return out;
}

DiscreteResidual assemble(const VortexContourCoeffs& coeffs, double omega, int nodes,
                          Projection projection) {
  const SampledContour sc = sample(coeffs, nodes);
  if (projection == Projection::Full) {
    return project_full(vstate_residual_pointwise(sc, omega), coeffs.fold, coeffs.modes());
  }
  // The residual is 2 pi/m periodic, so the sector nodes carry all of it and
  // the length-N sums collapse to m times length-N/m sums.
  const int sector = nodes / coeffs.fold;
  const PointwiseResidual r = vstate_residual_leading(sc, omega, sector);
  DiscreteResidual out;
  const double cos1 = real_dft(r.outer, coeffs.modes(), out.b1);
  const double cos2 = real_dft(r.inner, coeffs.modes(), out.b2);
  out.cosine_content = std::max(cos1, cos2);
  out.max_abs = max_abs_of(r);
  return out;
}

std::vector<double> synthesize_sines(const std::vector<double>& coeff, int fold, int nodes) {
  std::vector<double> out(nodes, 0.0);
  for (int i = 0; i < nodes; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / nodes;
    double acc = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      acc += coeff[k] * std::sin(fold * static_cast<double>(k + 1) * theta);
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace vstates
