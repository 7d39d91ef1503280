// Command-line front end: dispersion, solve, sweep, render, validate.
//
// Exit codes: 0 ok, 1 usage or input error, 2 infeasible (m, b), 3 numerical
// failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "vstates/continuation.hpp"
#include "vstates/dispersion.hpp"
#include "vstates/render.hpp"
#include "vstates/solver.hpp"
#include "vstates/state_io.hpp"
#include "vstates/validate.hpp"

namespace fs = std::filesystem;
using namespace vstates;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNumerical = 3;

struct SolverFlags {
  double tol = 1e-12;
  int max_iter = 50;
  double fd_step = 1e-9;
  int nodes = 512;
  int modes = 0;
  int threads = 0;

  SolverConfig config() const {
    SolverConfig c;
    c.tol = tol;
    c.max_iter = max_iter;
    c.fd_step = fd_step;
    c.nodes = nodes;
    c.modes = modes;
    c.threads = threads;
    return c;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--nodes", f.nodes, "quadrature nodes N (multiple of m)");
  cmd->add_option("--modes", f.modes, "cosine modes M per boundary (0: floor((N-1)/2m))");
  cmd->add_option("--tol", f.tol, "stopping tolerance on the nodal residual");
  cmd->add_option("--max-iter", f.max_iter, "Newton iteration cap");
  cmd->add_option("--fd-step", f.fd_step, "forward-difference step h");
  cmd->add_option("--threads", f.threads, "worker threads for the Jacobian (0: auto)");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int run_dispersion(int m, double b, bool as_json) {
  if (m < 1 || !(b > 0.0 && b < 1.0)) {
    std::cerr << "dispersion: need m >= 1 and 0 < b < 1\n";
    return kExitUsage;
  }
  const double f = dispersion::feasibility(m, b);
  const auto eig = dispersion::eigenvalues_for_fold(m, b);
  const auto* p = std::get_if<dispersion::DispersionPoint>(&eig);
  std::optional<double> bm;
  if (m >= 3) bm = dispersion::critical_radius(m);

  if (as_json) {
    nlohmann::json j;
    j["m"] = m;
    j["b"] = b;
    j["feasibility"] = f;
    j["feasible"] = p != nullptr;
    if (bm) j["critical_radius"] = *bm;
    if (p) {
      j["omega_minus"] = p->omega_minus;
      j["omega_plus"] = p->omega_plus;
      j["lambda_minus"] = p->lambda_minus;
      j["lambda_plus"] = p->lambda_plus;
      j["transversal"] = p->transversal;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "m " << m << "\nb " << num(b) << "\nfeasibility " << num(f) << "\n";
    if (bm) std::cout << "critical_radius " << num(*bm) << "\n";
    if (p) {
      std::cout << "verdict feasible\n"
                << "omega_minus " << num(p->omega_minus) << "\n"
                << "omega_plus " << num(p->omega_plus) << "\n"
                << "lambda_minus " << num(p->lambda_minus) << "\n"
                << "lambda_plus " << num(p->lambda_plus) << "\n"
                << "transversal " << (p->transversal ? "true" : "false") << "\n";
    } else {
      std::cout << "verdict infeasible\n"
                << (m < 3 ? "reason m < 3: f_m(b) > 0 for every b\n"
                          : "reason b >= b_m: no real pair of distinct eigenvalues\n");
    }
  }
  return p ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doubly connected rotating vortex patches (V-states): linear theory, "
               "Newton solver and branch continuation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp, "omit creation timestamps from output files");

  // dispersion
  int d_m = 0;
  double d_b = 0.0;
  bool d_json = false;
  auto* cmd_disp = app.add_subcommand("dispersion", "bifurcation eigenvalues of fold m at inner radius b");
  cmd_disp->add_option("--m", d_m, "fold number")->required();
  cmd_disp->add_option("--b", d_b, "inner radius")->required();
  cmd_disp->add_flag("--json", d_json, "emit JSON");

  // solve
  std::optional<double> s_b, s_omega;
  std::optional<int> s_m;
  double seed_a1 = 0.0, seed_a2 = 0.0;
  std::string seed_file, s_out;
  SolverFlags s_flags;
  auto* cmd_solve = app.add_subcommand("solve", "Newton solve for one V-state");
  cmd_solve->add_option("--b", s_b, "inner radius");
  cmd_solve->add_option("--m", s_m, "fold number");
  cmd_solve->add_option("--omega", s_omega, "angular velocity");
  cmd_solve->add_option("--seed-a1", seed_a1, "initial a_{1,1}");
  cmd_solve->add_option("--seed-a2", seed_a2, "initial a_{2,1}");
  cmd_solve->add_option("--seed-file", seed_file, "state file whose coefficients seed Newton")
      ->check(CLI::ExistingFile);
  cmd_solve->add_option("--out", s_out, "state file to write");
  add_solver_flags(cmd_solve, s_flags);

  // sweep
  double w_b = 0.0, w_step = 1e-4;
  int w_m = 0;
  std::optional<double> w_start, w_end;
  std::string w_origin = "manual", w_ladder, w_out, w_states_dir;
  SolverFlags w_flags;
  bool w_coarse_distance = false;
  auto* cmd_sweep = app.add_subcommand("sweep", "continue a branch in Omega");
  cmd_sweep->add_option("--b", w_b, "inner radius")->required();
  cmd_sweep->add_option("--m", w_m, "fold number")->required();
  cmd_sweep->add_option("--start", w_start, "first Omega (omitted: one step inside the eigenvalue)");
  cmd_sweep->add_option("--end", w_end, "last Omega")->required();
  cmd_sweep->add_option("--step", w_step, "Omega increment magnitude");
  cmd_sweep->add_option("--origin", w_origin, "omega_minus, omega_plus or manual")
      ->check(CLI::IsMember({"omega_minus", "omega_plus", "manual"}));
  cmd_sweep->add_option("--ladder", w_ladder, "seed ladder: outer or inner")
      ->check(CLI::IsMember({"outer", "inner"}));
  cmd_sweep->add_option("--out", w_out, "branch CSV to write")->required();
  cmd_sweep->add_option("--states-dir", w_states_dir, "also write one state file per record");
  cmd_sweep->add_flag("--node-distance", w_coarse_distance, "skip the continuous distance refinement");
  add_solver_flags(cmd_sweep, w_flags);

  // render
  std::vector<std::string> r_in;
  std::string r_out;
  RenderOptions r_opt;
  auto* cmd_render = app.add_subcommand("render", "SVG drawing of one or more states");
  cmd_render->add_option("--in", r_in, "state files")->required();
  cmd_render->add_option("--out", r_out, "SVG file")->required();
  cmd_render->add_option("--samples", r_opt.samples, "points per curve")->check(CLI::PositiveNumber);

  // validate
  std::string v_suite;
  double v_b = 0.63;
  int v_m = 4;
  auto* cmd_validate = app.add_subcommand("validate", "built-in numerical oracles");
  cmd_validate->add_option("--suite", v_suite, "annulus, jacobian or convergence")->required();
  cmd_validate->add_option("--b", v_b, "inner radius");
  cmd_validate->add_option("--m", v_m, "fold number");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto stamp = [&]() -> std::optional<std::string> {
    if (no_timestamp) return std::nullopt;
    return timestamp_now();
  };

  try {
    if (*cmd_disp) return run_dispersion(d_m, d_b, d_json);

    if (*cmd_solve) {
      VortexContourCoeffs seed;
      std::optional<StateFile> from;
      if (!seed_file.empty()) from = read_state(seed_file);
      const double b = s_b ? *s_b : (from ? from->b : -1.0);
      const int m = s_m ? *s_m : (from ? from->m : 0);
      const double omega = s_omega ? *s_omega : (from ? from->omega : 0.0);
      if (!(b > 0.0 && b < 1.0) || m < 1 || (!s_omega && !from)) {
        std::cerr << "solve: need --b in (0,1), --m >= 1 and --omega (or --seed-file)\n";
        return kExitUsage;
      }
      if (from) {
        seed = from->coeffs();
        seed.b = b;
        seed.fold = m;
      } else {
        seed = VortexContourCoeffs(b, m, 1);
        seed.a1[0] = seed_a1;
        seed.a2[0] = seed_a2;
      }
      const SolverConfig cfg = s_flags.config();
      try {
        cfg.validate(m);
      } catch (const std::invalid_argument& e) {
        std::cerr << "solve: " << e.what() << "\n";
        return kExitUsage;
      }
      const SolveReport rep = newton_solve(b, omega, m, seed, cfg);
      StateFile sf = make_state_file(rep, cfg.nodes);
      sf.created = stamp();
      if (!s_out.empty()) write_state(s_out, sf);
      std::cout << "status " << to_string(rep.status) << "\niterations " << rep.iterations
                << "\nresidual_max " << num(rep.residual_max) << "\ntrivial "
                << (rep.trivial ? "true" : "false") << "\na1_1 " << num(rep.coeffs.a1[0])
                << "\na2_1 " << num(rep.coeffs.a2[0]) << "\n";
      if (!rep.converged) {
        std::cerr << "solve: " << to_string(rep.status) << " at iteration "
                  << rep.failed_at_iteration << (rep.message.empty() ? "" : ": " + rep.message)
                  << "\n";
        return kExitNumerical;
      }
      return kExitOk;
    }

    if (*cmd_sweep) {
      const SolverConfig cfg = w_flags.config();
      SweepOptions opt;
      opt.refine_distance = !w_coarse_distance;
      const BranchOrigin origin = branch_origin_from_string(w_origin);
      Branch br;
      try {
        if (!w_start) {
          if (origin == BranchOrigin::Manual) {
            std::cerr << "sweep: --start is required with --origin manual\n";
            return kExitUsage;
          }
          br = sweep_from_eigenvalue(w_b, w_m, origin, *w_end, w_step, cfg, opt);
        } else {
          const double step = (*w_end >= *w_start ? 1.0 : -1.0) * std::abs(w_step);
          std::string ladder = w_ladder;
          if (ladder.empty()) ladder = step > 0 ? "inner" : "outer";
          br = sweep(w_b, w_m, *w_start, *w_end, step,
                     ladder == "inner" ? inner_ladder() : outer_ladder(), cfg, opt);
          br.origin = origin;
        }
      } catch (const EmptyBranch& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return kExitNumerical;
      } catch (const std::invalid_argument& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return kExitUsage;
      }
      BranchFile bf = make_branch_file(br, cfg.nodes);
      bf.created = stamp();
      write_text(w_out, serialize_branch(bf));
      if (!w_states_dir.empty()) {
        fs::create_directories(w_states_dir);
        for (std::size_t i = 0; i < br.records.size(); ++i) {
          StateFile sf = make_state_file(br.records[i].report, cfg.nodes);
          sf.created = stamp();
          char name[32];
          std::snprintf(name, sizeof name, "state_%04zu.json", i);
          write_state(fs::path(w_states_dir) / name, sf);
        }
      }
      std::cout << "records " << br.records.size() << "\n";
      if (br.terminated_at) {
        std::cout << "terminated_at " << num(*br.terminated_at) << " (" << br.termination_reason
                  << ")\n";
      }
      return kExitOk;
    }

    if (*cmd_render) {
      std::vector<StateFile> states;
      for (const auto& p : r_in) states.push_back(read_state(p));
      write_text(r_out, render_svg(states, r_opt));
      return kExitOk;
    }

    if (*cmd_validate) {
      ValidationReport rep;
      try {
        rep = run_validation(v_suite, v_b, v_m);
      } catch (const std::invalid_argument& e) {
        std::cerr << "validate: " << e.what() << "\n";
        return kExitUsage;
      }
      for (const auto& c : rep.checks) {
        std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << num(c.value)
                  << (c.upper_bound ? " <= " : " >= ") << num(c.threshold) << "\n";
      }
      std::cout << (rep.passed() ? "suite passed\n" : "suite failed\n");
      return rep.passed() ? kExitOk : kExitNumerical;
    }
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
