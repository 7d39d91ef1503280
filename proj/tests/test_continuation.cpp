#include <cmath>
#include <variant>

#include "doctest.h"
#include "vstates/continuation.hpp"
#include "vstates/dispersion.hpp"

using namespace vstates;

namespace {

SolverConfig small_config() {
  SolverConfig cfg;
  cfg.nodes = 256;
  return cfg;
}

double norm(const VortexContourCoeffs& c) {
  double s = 0.0;
  for (double x : c.flatten()) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("short sweep along the b = 0.63 branch") {
  const Branch br = sweep(0.63, 4, 0.1500, 0.1505, 1e-4, inner_ladder(), small_config());
  REQUIRE(br.records.size() == 6);
  CHECK_FALSE(br.terminated_at);
  for (std::size_t i = 0; i < br.records.size(); ++i) {
    const auto& r = br.records[i];
    CHECK(r.report.converged);
    CHECK_FALSE(r.report.trivial);
    CHECK(r.omega == doctest::Approx(0.1500 + 1e-4 * i).epsilon(1e-12));
    if (i > 0) CHECK(r.omega > br.records[i - 1].omega);
    CHECK(r.distance > 0.2);
    CHECK(r.distance < 0.37);
  }
  // warm-start consistency
  const auto& mid = br.records[3];
  const auto again = newton_solve(0.63, mid.omega, 4, mid.report.coeffs, small_config());
  CHECK(again.iterations <= 2);

  const auto prof = distance_profile(br);
  CHECK(prof.points.size() == 6);
  // distance decreases toward the minimum near 0.1564
  CHECK(prof.argmin_omega == doctest::Approx(0.1505));
}

TEST_CASE("sweep grids end exactly at the requested end") {
  const Branch one = sweep(0.63, 4, 0.15, 0.15, 1e-3, inner_ladder(), small_config());
  CHECK(one.records.size() == 1);
  const Branch ragged = sweep(0.63, 4, 0.1500, 0.1515, 1e-3, inner_ladder(), small_config());
  REQUIRE(ragged.records.size() == 3);
  CHECK(ragged.records.back().omega == 0.1515);
}

TEST_CASE("amplitude grows away from the seeding eigenvalue") {
  const auto p = std::get<dispersion::DispersionPoint>(dispersion::eigenvalues_for_fold(4, 0.63));
  const Branch br = sweep_from_eigenvalue(0.63, 4, BranchOrigin::OmegaMinus, p.omega_minus + 6e-4,
                                          1e-4, small_config());
  REQUIRE(br.records.size() >= 5);
  CHECK(br.origin == BranchOrigin::OmegaMinus);
  CHECK(br.records.front().omega == doctest::Approx(p.omega_minus + 1e-4));
  for (std::size_t i = 1; i < br.records.size(); ++i) {
    CHECK(norm(br.records[i].report.coeffs) > norm(br.records[i - 1].report.coeffs));
  }
}

TEST_CASE("small-b branches: Omega^+ deforms the outer boundary, Omega^- the inner one") {
  const double b = 0.3;
  const auto p = std::get<dispersion::DispersionPoint>(dispersion::eigenvalues_for_fold(4, b));
  const double off = 4e-3;
  const Branch lo = sweep_from_eigenvalue(b, 4, BranchOrigin::OmegaMinus, p.omega_minus + off, 2e-3,
                                          small_config());
  const Branch hi = sweep_from_eigenvalue(b, 4, BranchOrigin::OmegaPlus, p.omega_plus - off, 2e-3,
                                          small_config());
  REQUIRE(!lo.records.empty());
  REQUIRE(!hi.records.empty());
  const auto& cl = lo.records.back().report.coeffs;
  const auto& ch = hi.records.back().report.coeffs;
  CHECK(std::abs(ch.a1[0]) > std::abs(cl.a1[0]));
  CHECK(std::abs(cl.a2[0]) > std::abs(cl.a1[0]));
  CHECK(std::abs(ch.a1[0]) > std::abs(ch.a2[0]));
}

TEST_CASE("annulus-only branch has constant distance 1 - b") {
  SweepOptions opt;
  opt.require_nontrivial = false;
  const Branch br = sweep(0.63, 4, 0.10, 0.12, 0.005, {}, small_config(), opt);
  REQUIRE(br.records.size() == 5);
  for (const auto& r : br.records) {
    CHECK(r.report.trivial);
    CHECK(r.distance == doctest::Approx(0.37).epsilon(1e-13));
  }
}

TEST_CASE("sweep preconditions and empty branches") {
  const auto cfg = small_config();
  CHECK_THROWS_AS(sweep(0.63, 4, 0.15, 0.16, 0.0, inner_ladder(), cfg), std::invalid_argument);
  CHECK_THROWS_AS(sweep(0.63, 4, 0.15, 0.16, -1e-3, inner_ladder(), cfg), std::invalid_argument);
  CHECK_THROWS_AS(sweep(0.4, 2, 0.15, 0.16, 1e-3, inner_ladder(), cfg), std::invalid_argument);
  CHECK_THROWS_AS(sweep(0.63, 4, 0.15, 0.16, 1e-3, {}, cfg), EmptyBranch);
  CHECK_THROWS_AS(sweep_from_eigenvalue(0.7, 4, BranchOrigin::OmegaMinus, 0.2, 1e-3, cfg),
                  std::invalid_argument);
  CHECK(branch_origin_from_string(to_string(BranchOrigin::OmegaPlus)) == BranchOrigin::OmegaPlus);
  CHECK_THROWS_AS(branch_origin_from_string("sideways"), std::invalid_argument);
}

TEST_CASE("tail ratio") {
  VortexContourCoeffs c(0.5, 4, 4);
  CHECK(tail_ratio(c) == 0.0);
  c.a1[0] = 0.1;
  c.a2[3] = 1e-6;
  CHECK(tail_ratio(c) == doctest::Approx(1e-5));
  CHECK(tail_ratio(VortexContourCoeffs(0.5, 4, 1)) == 0.0);
}
