#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vstates/solver.hpp"

namespace vstates {

enum class BranchOrigin { OmegaMinus, OmegaPlus, Manual };

std::string to_string(BranchOrigin o);
BranchOrigin branch_origin_from_string(const std::string& s);

/// Initial perturbation of the annulus: one coefficient a_{boundary,1}.
struct LadderSeed {
  int boundary = 1;  // 1 = outer (a1), 2 = inner (a2)
  double value = 0.0;
};

using SeedLadder = std::vector<LadderSeed>;

/// a_{1,1} in {0.02, 0.04, 0.06}: used when descending from Omega^+.
SeedLadder outer_ladder();
/// a_{2,1} in {-0.02, -0.04, -0.06}: used when ascending from Omega^-.
SeedLadder inner_ladder();

struct BranchRecord {
  double omega = 0.0;
  SolveReport report;
  double distance = 0.0;
};

struct Branch {
  double b = 0.0;
  int m = 0;
  BranchOrigin origin = BranchOrigin::Manual;
  double step = 0.0;
  std::vector<BranchRecord> records;
  std::optional<double> terminated_at;
  std::string termination_reason;
  int termination_iterations = 0;  // Newton iterations spent in the failed attempt
};

class EmptyBranch : public std::runtime_error {
 public:
  explicit EmptyBranch(const std::string& what) : std::runtime_error(what) {}
};

struct SweepOptions {
  bool require_nontrivial = true;  // a warm start collapsing onto the annulus ends the branch
  bool refine_distance = true;
  bool secant_predictor = true;  // extrapolate the last two records for the next seed
  // A converged state whose last retained mode exceeds this fraction of its
  // leading mode is under-resolved and ends the branch (0 disables the check).
  double max_tail_ratio = 1e-4;
};

/// max_j |a_{j,M}| / max_j |a_{j,1}|: how far the cosine spectrum has decayed
/// at the last retained mode. 0 for the annulus and for M < 2.
double tail_ratio(const VortexContourCoeffs& coeffs);

/// Continues a branch over Omega = start, start + step, ... and finishes exactly at `end`.
/// The first point is solved from the ladder seeds in order, each later
/// point is warm-started from the previous records (secant predictor). A warm
/// start that collapses onto the annulus is retried from the ladder. On a failure one retry at
/// half the step is made; if that fails too the branch ends and
/// terminated_at is the Omega of the failed attempt closest to the last
/// converged state. Throws EmptyBranch if no seed converges at `start`.
Branch sweep(double b, int m, double omega_start, double omega_end, double omega_step,
             const SeedLadder& ladder, const SolverConfig& config,
             const SweepOptions& options = {});

/// Sweeps away from Omega_m^-(b) (ascending) or Omega_m^+(b) (descending),
/// starting one step inside the interval, with the default ladder for that
/// side. `step` is taken by magnitude.
Branch sweep_from_eigenvalue(double b, int m, BranchOrigin origin, double omega_end, double step,
                             const SolverConfig& config, const SweepOptions& options = {});

struct DistanceProfile {
  std::vector<std::pair<double, double>> points;  // (omega, distance)
  double min_distance = 0.0;
  double argmin_omega = 0.0;
};

DistanceProfile distance_profile(const Branch& branch);

}  // namespace vstates
