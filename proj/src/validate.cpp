#include "vstates/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include "vstates/dispersion.hpp"
#include "vstates/quadrature.hpp"
#include "vstates/solver.hpp"

namespace vstates {

namespace {

double smallest_singular_value(const Eigen::MatrixXd& jac) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues().minCoeff();
}

double max_abs(const std::vector<double>& v) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::abs(x));
  return mx;
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

ValidationReport validate_annulus(double b, int nodes) {
  ValidationReport rep{"annulus", {}};
  const VortexContourCoeffs coeffs(b, 1, 1);
  const SampledContour sc = sample(coeffs, nodes);

  const auto i11 = kernel_integral(sc.z1, outer_boundary(sc), Diagonal::OnCurve);
  const auto i12 = kernel_integral(sc.z1, inner_boundary(sc), Diagonal::OffCurve);
  const auto i21 = kernel_integral(sc.z2, outer_boundary(sc), Diagonal::OffCurve);
  const auto i22 = kernel_integral(sc.z2, inner_boundary(sc), Diagonal::OnCurve);

  double outer_err = 0.0, inner_err = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const cplx expected = (b * b - 1.0) / sc.z1[i];
    outer_err = std::max(outer_err, std::abs(i11[i] - i12[i] - expected));
    inner_err = std::max(inner_err, std::abs(i21[i] - i22[i]));
  }
  rep.checks.push_back({"I(z) - (b^2-1)/z on outer circle", outer_err, 1e-12});
  rep.checks.push_back({"I(z) on inner circle", inner_err, 1e-12});

  const PointwiseResidual r = vstate_residual_pointwise(sc, 0.1);
  rep.checks.push_back({"pointwise residual at the annulus",
                        std::max(max_abs(r.outer), max_abs(r.inner)), 1e-13});
  return rep;
}

ValidationReport validate_jacobian(double b, int m, int nodes, int modes) {
  ValidationReport rep{"jacobian", {}};
  const auto eig = dispersion::eigenvalues_for_fold(m, b);
  if (!std::holds_alternative<dispersion::DispersionPoint>(eig)) {
    rep.checks.push_back({"(m, b) admits bifurcation eigenvalues",
                          std::get<dispersion::Infeasible>(eig).feasibility, 0.0, false});
    return rep;
  }
  const auto& p = std::get<dispersion::DispersionPoint>(eig);
  SolverConfig cfg;
  cfg.nodes = nodes;
  cfg.modes = modes;
  const VortexContourCoeffs annulus(b, m, modes);

  auto dip_near = [&](double omega0) {
    double best = std::numeric_limits<double>::infinity();
    for (double off : {-1e-3, -5e-4, 0.0, 5e-4, 1e-3}) {
      best = std::min(best, smallest_singular_value(fd_jacobian(annulus, omega0 + off, cfg)));
    }
    return best;
  };
  rep.checks.push_back({"min singular value near Omega^-", dip_near(p.omega_minus), 1e-4});
  rep.checks.push_back({"min singular value near Omega^+", dip_near(p.omega_plus), 1e-4});
  const double mid = 0.5 * (p.omega_minus + p.omega_plus);
  rep.checks.push_back({"min singular value midway",
                        smallest_singular_value(fd_jacobian(annulus, mid, cfg)), 1e-2, false});
  return rep;
}

ValidationReport validate_convergence(double b, int m, int nodes) {
  ValidationReport rep{"convergence", {}};
  VortexContourCoeffs c(b, m, 2);
  const double gap = 1.0 - b;
  c.a1[0] = 0.05 * gap;
  c.a2[0] = -0.05 * gap;
  c.a1[1] = 0.01 * gap;
  const SampledContour coarse = sample(c, nodes);
  const SampledContour fine = sample(c, 2 * nodes);

  const auto ic = kernel_integral(coarse.z2, outer_boundary(coarse), Diagonal::OffCurve);
  const auto jc = kernel_integral(coarse.z1, outer_boundary(coarse), Diagonal::OnCurve);
  const auto rc = vstate_residual_pointwise(coarse, 0.1);
  const auto jf_all = kernel_integral(fine.z1, outer_boundary(fine), Diagonal::OnCurve);
  const auto if_all = kernel_integral(fine.z2, outer_boundary(fine), Diagonal::OffCurve);
  const auto rf = vstate_residual_pointwise(fine, 0.1);

  double off_err = 0.0, on_err = 0.0, res_err = 0.0;
  for (int i = 0; i < nodes; ++i) {
    off_err = std::max(off_err, std::abs(ic[i] - if_all[2 * i]));
    on_err = std::max(on_err, std::abs(jc[i] - jf_all[2 * i]));
    res_err = std::max({res_err, std::abs(rc.outer[i] - rf.outer[2 * i]),
                        std::abs(rc.inner[i] - rf.inner[2 * i])});
  }
  rep.checks.push_back({"on-curve integral, N vs 2N", on_err, 1e-12});
  rep.checks.push_back({"cross-boundary integral, N vs 2N", off_err, 1e-12});
  rep.checks.push_back({"pointwise residual, N vs 2N", res_err, 1e-12});
  return rep;
}

ValidationReport run_validation(const std::string& suite, double b, int m) {
  if (suite == "annulus") return validate_annulus(b);
  if (suite == "jacobian") return validate_jacobian(b, m);
  if (suite == "convergence") return validate_convergence(b, m);
  throw std::invalid_argument("unknown validation suite '" + suite + "'");
}

}  // namespace vstates
