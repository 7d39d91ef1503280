#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vstates/contour.hpp"
#include "vstates/residual.hpp"

namespace vstates {

struct SolverConfig {
  double fd_step = 1e-9;
  double tol = 1e-12;
  int max_iter = 50;
  int modes = 0;  // 0: largest M the node count resolves
  int nodes = 512;
  int threads = 0;  // 0: VSTATES_THREADS or hardware concurrency

  /// Throws std::invalid_argument when a field is out of range for fold m.
  void validate(int m) const;
  int resolved_modes(int m) const { return modes > 0 ? modes : max_modes(nodes, m); }
};

enum class SolveStatus {
  Converged,
  NonConvergence,     // max_iter exhausted
  GeometryBreakdown,  // radii non-positive or boundaries crossing
  SingularJacobian,   // LU pivot below 1e-14
};

std::string to_string(SolveStatus s);

struct SolveReport {
  VortexContourCoeffs coeffs;
  double omega = 0.0;
  int iterations = 0;
  double residual_max = 0.0;
  bool converged = false;
  bool trivial = false;
  SolveStatus status = SolveStatus::NonConvergence;
  int failed_at_iteration = -1;
  std::string message;
  std::vector<double> residual_history;  // residual_max before each update and at exit
};

/// Forward-difference Jacobian of assemble(): column j is
/// (F(x + h e_j) - F(x)) / h in the order (a1_1..a1_M, a2_1..a2_M).
Eigen::MatrixXd fd_jacobian(const VortexContourCoeffs& coeffs, double omega,
                            const SolverConfig& config);
Eigen::MatrixXd fd_jacobian(const VortexContourCoeffs& coeffs, double omega,
                            const SolverConfig& config, const std::vector<double>& f0);

/// Newton iteration x <- x - J(x)^{-1} F(x) with a fresh Jacobian each step.
/// The seed's mode count is padded or truncated to the configured M.
SolveReport newton_solve(double b, double omega, int m, const VortexContourCoeffs& seed,
                         const SolverConfig& config);

/// Rotation by pi/m: a_{j,k} -> (-1)^k a_{j,k}. Maps V-states to V-states.
VortexContourCoeffs rotate_half_sector(const VortexContourCoeffs& coeffs);

/// Applies rotate_half_sector when needed so that a_{1,1} > 0 (or, if
/// a_{1,1} = 0, a_{2,1} <= 0).
VortexContourCoeffs normalize_sign(const VortexContourCoeffs& coeffs);

bool is_trivial(const VortexContourCoeffs& coeffs, double threshold = 1e-10);

}  // namespace vstates
