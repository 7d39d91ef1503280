#include "vstates/contour.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace vstates {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos/sin of 2 pi j / N with the table mirrored so that index N - j is the
// exact conjugate of index j.
struct TrigTable {
  std::vector<double> c, s;
  explicit TrigTable(int n) : c(n), s(n) {
    for (int j = 0; j <= n / 2; ++j) {
      const double t = kTwoPi * j / n;
      c[j] = std::cos(t);
      s[j] = std::sin(t);
    }
    if (n % 2 == 0) s[n / 2] = 0.0;  // sin(pi) rounds to 1.2e-16, which would break the mirror
    for (int j = n / 2 + 1; j < n; ++j) {
      c[j] = c[n - j];
      s[j] = -s[n - j];
    }
  }
};

double series(double base, const std::vector<double>& a, int m, double theta) {
  double r = base;
  for (std::size_t k = 0; k < a.size(); ++k) {
    r += a[k] * std::cos(m * static_cast<double>(k + 1) * theta);
  }
  return r;
}

std::string at_theta(double theta) {
  std::ostringstream os;
  os.precision(6);
  os << " at theta = " << theta;
  return os.str();
}

// Golden-section minimum of g on [lo, hi].
template <typename G>
double golden_min(G&& g, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  while (hi - lo > 1e-13) {
    if (g1 < g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - r * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + r * (hi - lo);
      g2 = g(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> VortexContourCoeffs::flatten() const {
  std::vector<double> flat(a1);
  flat.insert(flat.end(), a2.begin(), a2.end());
  return flat;
}

void VortexContourCoeffs::assign(const std::vector<double>& flat) {
  const std::size_t m = flat.size() / 2;
  a1.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(m));
  a2.assign(flat.begin() + static_cast<std::ptrdiff_t>(m), flat.end());
}

double VortexContourCoeffs::rho1(double theta) const { return series(1.0, a1, fold, theta); }
double VortexContourCoeffs::rho2(double theta) const { return series(b, a2, fold, theta); }
cplx VortexContourCoeffs::z1(double theta) const { return std::polar(rho1(theta), theta); }
cplx VortexContourCoeffs::z2(double theta) const { return std::polar(rho2(theta), theta); }

int max_modes(int nodes, int m) { return (nodes - 1) / (2 * m); }

SampledContour sample(const VortexContourCoeffs& coeffs, int nodes) {
  const int m = coeffs.fold;
  const int modes = coeffs.modes();
  if (m < 1) throw ContourError("fold must be positive");
  if (coeffs.a2.size() != coeffs.a1.size()) {
    throw ContourError("outer and inner coefficient arrays differ in length");
  }
  if (nodes < 2 * m * modes + 1) {
    throw ContourError("node count " + std::to_string(nodes) + " below sampling bound 2mM+1 = " +
                       std::to_string(2 * m * modes + 1));
  }
  if (nodes % m != 0) {
    throw ContourError("node count " + std::to_string(nodes) + " is not a multiple of m = " +
                       std::to_string(m));
  }

  const TrigTable tab(nodes);
  SampledContour sc;
  sc.nodes = nodes;
  sc.fold = m;
  sc.theta.resize(nodes);
  sc.z1.resize(nodes);
  sc.z2.resize(nodes);
  sc.dz1.resize(nodes);
  sc.dz2.resize(nodes);

  for (int i = 0; i < nodes; ++i) {
    double r1 = 1.0, r2 = coeffs.b, dr1 = 0.0, dr2 = 0.0;
    for (int k = 1; k <= modes; ++k) {
      const auto idx = static_cast<std::size_t>((static_cast<long long>(m) * k * i) % nodes);
      const double mk = static_cast<double>(m) * k;
      r1 += coeffs.a1[k - 1] * tab.c[idx];
      r2 += coeffs.a2[k - 1] * tab.c[idx];
      dr1 -= coeffs.a1[k - 1] * mk * tab.s[idx];
      dr2 -= coeffs.a2[k - 1] * mk * tab.s[idx];
    }
    const double theta = kTwoPi * i / nodes;
    if (!(r1 > 0.0)) throw ContourError("outer radius non-positive" + at_theta(theta));
    if (!(r2 > 0.0)) throw ContourError("inner radius non-positive" + at_theta(theta));
    if (!(r2 < r1)) throw ContourError("inner boundary not inside outer boundary" + at_theta(theta));

    const cplx e(tab.c[i], tab.s[i]);
    sc.theta[i] = theta;
    sc.z1[i] = e * r1;
    sc.z2[i] = e * r2;
    sc.dz1[i] = e * cplx(dr1, r1);
    sc.dz2[i] = e * cplx(dr2, r2);
  }
  return sc;
}

double boundary_distance(const SampledContour& sc) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& p : sc.z1) {
    for (const cplx& q : sc.z2) {
      best = std::min(best, std::norm(p - q));
    }
  }
  return std::sqrt(best);
}

double boundary_distance_refined(const VortexContourCoeffs& coeffs, const SampledContour& sc) {
  double best = std::numeric_limits<double>::infinity();
  int bi = 0, bj = 0;
  for (int i = 0; i < sc.nodes; ++i) {
    for (int j = 0; j < sc.nodes; ++j) {
      const double d = std::norm(sc.z1[i] - sc.z2[j]);
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  const double h = kTwoPi / sc.nodes;
  double alpha = sc.theta[bi];
  double beta = sc.theta[bj];
  // alternate one-dimensional minimizations until the pair stops moving
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double a_old = alpha, b_old = beta;
    const cplx q = coeffs.z2(beta);
    alpha = golden_min([&](double t) { return std::norm(coeffs.z1(t) - q); }, alpha - h, alpha + h);
    const cplx p = coeffs.z1(alpha);
    beta = golden_min([&](double t) { return std::norm(p - coeffs.z2(t)); }, beta - h, beta + h);
    if (std::abs(alpha - a_old) < 1e-12 && std::abs(beta - b_old) < 1e-12) break;
  }
  const double refined = std::abs(coeffs.z1(alpha) - coeffs.z2(beta));
  return std::min(refined, std::sqrt(best));
}

ReducedContour fold_reduce(const SampledContour& sc) {
  ReducedContour red;
  red.nodes = sc.nodes;
  red.fold = sc.fold;
  const int n = sc.nodes / sc.fold;
  auto head = [n](const auto& v) { return std::vector(v.begin(), v.begin() + n); };
  red.sector.nodes = n;
  red.sector.fold = 1;
  red.sector.theta = head(sc.theta);
  red.sector.z1 = head(sc.z1);
  red.sector.z2 = head(sc.z2);
  red.sector.dz1 = head(sc.dz1);
  red.sector.dz2 = head(sc.dz2);
  return red;
}

SampledContour reconstruct(const ReducedContour& red) {
  SampledContour sc;
  sc.nodes = red.nodes;
  sc.fold = red.fold;
  const int n = red.sector.nodes;
  sc.theta.resize(red.nodes);
  sc.z1.resize(red.nodes);
  sc.z2.resize(red.nodes);
  sc.dz1.resize(red.nodes);
  sc.dz2.resize(red.nodes);
  for (int s = 0; s < red.fold; ++s) {
    const cplx rot = s == 0 ? cplx(1.0, 0.0) : std::polar(1.0, kTwoPi * s / red.fold);
    for (int i = 0; i < n; ++i) {
      const int j = s * n + i;
      sc.theta[j] = kTwoPi * j / red.nodes;
      sc.z1[j] = rot * red.sector.z1[i];
      sc.z2[j] = rot * red.sector.z2[i];
      sc.dz1[j] = rot * red.sector.dz1[i];
      sc.dz2[j] = rot * red.sector.dz2[i];
    }
  }
  return sc;
}

}  // namespace vstates
