#include "vstates/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <variant>

#include "vstates/dispersion.hpp"

namespace vstates {

namespace {

double distance_of(const VortexContourCoeffs& c, int nodes, bool refine) {
  const SampledContour sc = sample(c, nodes);
  return refine ? boundary_distance_refined(c, sc) : boundary_distance(sc);
}

bool resolved(const SolveReport& r, const SweepOptions& opt) {
  return opt.max_tail_ratio <= 0.0 || tail_ratio(r.coeffs) <= opt.max_tail_ratio;
}

bool acceptable(const SolveReport& r, const SweepOptions& opt) {
  return r.converged && !(opt.require_nontrivial && r.trivial) && resolved(r, opt);
}

std::string describe_failure(const SolveReport& r, const SweepOptions& opt) {
  if (r.converged && r.trivial) return "collapsed onto the annulus";
  if (r.converged && !resolved(r, opt)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "under-resolved: trailing mode ratio %.2e", tail_ratio(r.coeffs));
    return buf;
  }
  return to_string(r.status) + (r.message.empty() ? "" : ": " + r.message);
}

}  // namespace

double tail_ratio(const VortexContourCoeffs& c) {
  if (c.modes() < 2) return 0.0;
  const double lead = std::max(std::abs(c.a1.front()), std::abs(c.a2.front()));
  const double last = std::max(std::abs(c.a1.back()), std::abs(c.a2.back()));
  if (lead == 0.0) return last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return last / lead;
}

std::string to_string(BranchOrigin o) {
  switch (o) {
    case BranchOrigin::OmegaMinus: return "omega_minus";
    case BranchOrigin::OmegaPlus: return "omega_plus";
    case BranchOrigin::Manual: return "manual";
  }
  return "manual";
}

BranchOrigin branch_origin_from_string(const std::string& s) {
  if (s == "omega_minus") return BranchOrigin::OmegaMinus;
  if (s == "omega_plus") return BranchOrigin::OmegaPlus;
  if (s == "manual") return BranchOrigin::Manual;
  throw std::invalid_argument("unknown branch origin '" + s + "'");
}

SeedLadder outer_ladder() { return {{1, 0.02}, {1, 0.04}, {1, 0.06}}; }
SeedLadder inner_ladder() { return {{2, -0.02}, {2, -0.04}, {2, -0.06}}; }

Branch sweep(double b, int m, double omega_start, double omega_end, double omega_step,
             const SeedLadder& ladder, const SolverConfig& config, const SweepOptions& options) {
  if (m < 3) throw std::invalid_argument("sweep requires m >= 3");
  if (omega_step == 0.0) throw std::invalid_argument("omega step must be nonzero");
  if (omega_end != omega_start && (omega_end - omega_start) * omega_step < 0.0) {
    throw std::invalid_argument("omega step points away from the sweep end");
  }
  config.validate(m);
  const int modes = config.resolved_modes(m);

  Branch br;
  br.b = b;
  br.m = m;
  br.step = omega_step;

  // Grid points are start + i*step so rounding does not accumulate.
  // A grid that does not land on `end` gets `end` appended as a final, shorter step.
  const long full = static_cast<long>(std::floor((omega_end - omega_start) / omega_step + 1e-7));
  const bool ragged =
      std::abs(omega_start + static_cast<double>(full) * omega_step - omega_end) > 1e-9 * std::abs(omega_step);
  const long count = full + 1 + (ragged ? 1 : 0);

  auto record = [&](double omega, const SolveReport& rep) {
    br.records.push_back({omega, rep, distance_of(rep.coeffs, config.nodes, options.refine_distance)});
  };

  SeedLadder seeds = ladder;
  if (seeds.empty() && !options.require_nontrivial) seeds.push_back({1, 0.0});
  auto solve_from_ladder = [&](double omega) {
    SolveReport rep;
    rep.message = "empty seed ladder";
    for (const LadderSeed& s : seeds) {
      VortexContourCoeffs seed(b, m, modes);
      (s.boundary == 1 ? seed.a1 : seed.a2)[0] = s.value;
      rep = newton_solve(b, omega, m, seed, config);
      if (acceptable(rep, options)) break;
    }
    return rep;
  };

  // linear extrapolation through the last two records, else the last record
  auto predict = [&](double omega) {
    const BranchRecord& last = br.records.back();
    if (!options.secant_predictor || br.records.size() < 2) return last.report.coeffs;
    const BranchRecord& before = br.records[br.records.size() - 2];
    const double t = (omega - last.omega) / (last.omega - before.omega);
    VortexContourCoeffs c = last.report.coeffs;
    for (std::size_t k = 0; k < c.a1.size(); ++k) {
      c.a1[k] += t * (last.report.coeffs.a1[k] - before.report.coeffs.a1[k]);
      c.a2[k] += t * (last.report.coeffs.a2[k] - before.report.coeffs.a2[k]);
    }
    return c;
  };

  {
    const SolveReport first = solve_from_ladder(omega_start);
    if (!acceptable(first, options)) {
      throw EmptyBranch("no ladder seed converged to a nontrivial state at omega = " +
                        std::to_string(omega_start) + " (" + describe_failure(first, options) + ")");
    }
    record(omega_start, first);
  }

  for (long i = 1; i < count; ++i) {
    const double omega =
        (ragged && i == count - 1) ? omega_end : omega_start + static_cast<double>(i) * omega_step;
    const double prev_omega = br.records.back().omega;
    SolveReport rep = newton_solve(b, omega, m, predict(omega), config);
    if (!acceptable(rep, options) && rep.converged && rep.trivial) {
      // near the bifurcation point the amplitude grows like a square root, so a
      // warm start can undershoot into the annulus basin; reseed from the ladder
      rep = solve_from_ladder(omega);
    }
    if (acceptable(rep, options)) {
      record(omega, rep);
      continue;
    }
    // retry through the midpoint
    const double mid = 0.5 * (prev_omega + omega);
    const SolveReport half = newton_solve(b, mid, m, predict(mid), config);
    if (!acceptable(half, options)) {
      br.terminated_at = mid;
      br.termination_reason = describe_failure(half, options);
      br.termination_iterations = half.iterations;
      break;
    }
    record(mid, half);
    rep = newton_solve(b, omega, m, predict(omega), config);
    if (!acceptable(rep, options)) {
      br.terminated_at = omega;
      br.termination_reason = describe_failure(rep, options);
      br.termination_iterations = rep.iterations;
      break;
    }
    record(omega, rep);
  }
  return br;
}

Branch sweep_from_eigenvalue(double b, int m, BranchOrigin origin, double omega_end, double step,
                             const SolverConfig& config, const SweepOptions& options) {
  const auto eig = dispersion::eigenvalues_for_fold(m, b);
  if (!std::holds_alternative<dispersion::DispersionPoint>(eig)) {
    throw std::invalid_argument("no bifurcation eigenvalues for this (m, b)");
  }
  const auto& p = std::get<dispersion::DispersionPoint>(eig);
  step = std::abs(step);
  Branch br;
  if (origin == BranchOrigin::OmegaMinus) {
    br = sweep(b, m, p.omega_minus + step, omega_end, step, inner_ladder(), config, options);
  } else if (origin == BranchOrigin::OmegaPlus) {
    br = sweep(b, m, p.omega_plus - step, omega_end, -step, outer_ladder(), config, options);
  } else {
    throw std::invalid_argument("sweep_from_eigenvalue needs omega_minus or omega_plus");
  }
  br.origin = origin;
  return br;
}

DistanceProfile distance_profile(const Branch& branch) {
  if (branch.records.empty()) throw std::invalid_argument("distance profile of an empty branch");
  DistanceProfile prof;
  prof.min_distance = branch.records.front().distance;
  prof.argmin_omega = branch.records.front().omega;
  for (const BranchRecord& r : branch.records) {
    prof.points.emplace_back(r.omega, r.distance);
    if (r.distance < prof.min_distance) {
      prof.min_distance = r.distance;
      prof.argmin_omega = r.omega;
    }
  }
  return prof;
}

}  // namespace vstates
