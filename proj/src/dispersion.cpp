#include "vstates/dispersion.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace vstates::dispersion {

namespace {

void require_unit_radius(double b) {
  if (!(b > 0.0 && b < 1.0)) {
    throw std::domain_error("inner radius must lie in (0,1), got " + std::to_string(b));
  }
}

// Bracketed Newton: bisection keeps the root inside [lo, hi], Newton steps are
// accepted only when they land strictly inside the current bracket.
double bracketed_root(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo, double hi) {
  constexpr double kFtol = 1e-13;
  constexpr double kXtol = 1e-15;
  double flo = f(lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= kFtol && it > 0) {
      // one more Newton polish; keep it only if it does not increase |f|
      const double d = df(x);
      if (d != 0.0) {
        const double xn = x - fx / d;
        if (xn > lo && xn < hi && std::abs(f(xn)) <= std::abs(fx)) x = xn;
      }
      return x;
    }
    if ((fx < 0) == (flo < 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo <= kXtol) return x;
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

}  // namespace

double ipow(double x, unsigned n) {
  double result = 1.0;
  while (n != 0) {
    if (n & 1U) result *= x;
    x *= x;
    n >>= 1U;
  }
  return result;
}

double delta(unsigned n, double lambda, double b) {
  require_unit_radius(b);
  const double nn = static_cast<double>(n);
  const double first = (1.0 - lambda) + b * b + nn * (b * b - lambda);
  const double second = nn * (1.0 - lambda) - lambda;
  return first * second + ipow(b, 2 * n + 2);
}

double feasibility(int m, double b) {
  return 1.0 + ipow(b, static_cast<unsigned>(m)) - 0.5 * m * (1.0 - b * b);
}

double critical_radius(int m) {
  if (m < 3) throw std::domain_error("critical radius requires m >= 3");
  const auto f = [m](double b) { return feasibility(m, b); };
  const auto df = [m](double b) {
    return m * (ipow(b, static_cast<unsigned>(m - 1)) + b);
  };
  return bracketed_root(f, df, 0.0, 1.0);
}

double double_eigenvalue_locus(int n, double b) {
  return (1.0 - b * b) * n - (1.0 + b * b) - 2.0 * ipow(b, static_cast<unsigned>(n + 1));
}

double double_eigenvalue_radius(int n) {
  if (n < 2) throw std::domain_error("double eigenvalue locus requires n >= 2");
  const auto f = [n](double b) { return double_eigenvalue_locus(n, b); };
  const auto df = [n](double b) {
    return -2.0 * b * n - 2.0 * b - 2.0 * (n + 1) * ipow(b, static_cast<unsigned>(n));
  };
  return bracketed_root(f, df, 0.0, 1.0);
}

FoldEigenvalues eigenvalues_for_fold(int m, double b) {
  require_unit_radius(b);
  const double f = feasibility(m, b);
  if (m < 3 || !(f < 0.0)) return Infeasible{m, b, f};

  // With A = m(1-b^2)/2 - 1 the discriminant A^2 - b^{2m} factors as
  // (A - b^m)(A + b^m) and A - b^m = -f, which avoids cancellation near b_m.
  const double bm = ipow(b, static_cast<unsigned>(m));
  const double a = 0.5 * m * (1.0 - b * b) - 1.0;
  const double disc = (-f) * (a + bm);
  const double center = 0.25 * (1.0 - b * b);
  const double radius = std::sqrt(disc) / (2.0 * m);

  DispersionPoint p;
  p.fold = m;
  p.inner_radius = b;
  p.omega_minus = center - radius;
  p.omega_plus = center + radius;
  p.lambda_plus = lambda_from_omega(p.omega_minus);
  p.lambda_minus = lambda_from_omega(p.omega_plus);
  p.transversal = disc > 0.0;
  return p;
}

double FrequencyMatrix::determinant() const {
  return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
}

std::array<double, 2> FrequencyMatrix::apply(const std::array<double, 2>& v) const {
  return {entries[0][0] * v[0] + entries[0][1] * v[1],
          entries[1][0] * v[0] + entries[1][1] * v[1]};
}

FrequencyMatrix frequency_matrix(unsigned n, double lambda, double b) {
  require_unit_radius(b);
  const double nn = static_cast<double>(n);
  FrequencyMatrix mat;
  mat.n = n;
  mat.lambda = lambda;
  mat.b = b;
  mat.entries[0][0] = (1.0 - lambda) + b * b + nn * (b * b - lambda);
  mat.entries[0][1] = -ipow(b, n + 2);
  mat.entries[1][0] = ipow(b, n + 1);
  mat.entries[1][1] = b * (nn * (1.0 - lambda) - lambda);
  return mat;
}

std::array<double, 2> kernel_vector(unsigned n, double lambda, double b) {
  const double nn = static_cast<double>(n);
  return {nn * (1.0 - lambda) - lambda, -ipow(b, n)};
}

}  // namespace vstates::dispersion
