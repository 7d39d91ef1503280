#include "vstates/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

namespace vstates {

namespace {

constexpr double kPivotFloor = 1e-14;

int thread_count(const SolverConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("VSTATES_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs body(j) for j in [0, count) on up to `workers` threads. The first
// exception thrown by any worker is rethrown on the calling thread.
template <typename Body>
void parallel_for(int count, int workers, Body&& body) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int j = 0; j < count; ++j) body(j);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int j = w; j < count; j += workers) body(j);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

VortexContourCoeffs resize_modes(const VortexContourCoeffs& seed, double b, int m, int modes) {
  VortexContourCoeffs c(b, m, modes);
  for (int k = 0; k < std::min(modes, seed.modes()); ++k) {
    c.a1[k] = seed.a1[k];
    c.a2[k] = seed.a2[k];
  }
  return c;
}

}  // namespace

void SolverConfig::validate(int m) const {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");
  if (m < 1) throw std::invalid_argument("fold must be positive");
  const int mm = resolved_modes(m);
  if (mm < 1) throw std::invalid_argument("node count too small for a single mode");
  if (nodes < 2 * m * mm + 1) {
    throw std::invalid_argument("nodes must satisfy N >= 2mM+1");
  }
  if (nodes % m != 0) throw std::invalid_argument("nodes must be a multiple of m");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NonConvergence: return "non-convergence";
    case SolveStatus::GeometryBreakdown: return "geometry-breakdown";
    case SolveStatus::SingularJacobian: return "singular-jacobian";
  }
  return "unknown";
}

Eigen::MatrixXd fd_jacobian(const VortexContourCoeffs& coeffs, double omega,
                            const SolverConfig& config) {
  return fd_jacobian(coeffs, omega, config, assemble(coeffs, omega, config.nodes).flatten());
}

Eigen::MatrixXd fd_jacobian(const VortexContourCoeffs& coeffs, double omega,
                            const SolverConfig& config, const std::vector<double>& f0) {
  const std::vector<double> x = coeffs.flatten();
  const int dim = static_cast<int>(x.size());
  Eigen::MatrixXd jac(dim, dim);
  parallel_for(dim, thread_count(config), [&](int j) {
    std::vector<double> xp = x;
    xp[j] += config.fd_step;
    VortexContourCoeffs shifted = coeffs;
    shifted.assign(xp);
    const std::vector<double> fp = assemble(shifted, omega, config.nodes).flatten();
    for (int i = 0; i < dim; ++i) jac(i, j) = (fp[i] - f0[i]) / config.fd_step;
  });
  return jac;
}

VortexContourCoeffs rotate_half_sector(const VortexContourCoeffs& coeffs) {
  VortexContourCoeffs out = coeffs;
  for (int k = 1; k <= out.modes(); k += 2) {
    out.a1[k - 1] = -out.a1[k - 1];
    out.a2[k - 1] = -out.a2[k - 1];
  }
  return out;
}

VortexContourCoeffs normalize_sign(const VortexContourCoeffs& coeffs) {
  if (coeffs.modes() == 0) return coeffs;
  const double a11 = coeffs.a1[0];
  const double a21 = coeffs.a2[0];
  const bool flip = a11 < 0.0 || (a11 == 0.0 && a21 > 0.0);
  return flip ? rotate_half_sector(coeffs) : coeffs;
}

bool is_trivial(const VortexContourCoeffs& coeffs, double threshold) {
  for (double v : coeffs.a1) {
    if (std::abs(v) > threshold) return false;
  }
  for (double v : coeffs.a2) {
    if (std::abs(v) > threshold) return false;
  }
  return true;
}

SolveReport newton_solve(double b, double omega, int m, const VortexContourCoeffs& seed,
                         const SolverConfig& config) {
  config.validate(m);
  const int modes = config.resolved_modes(m);

  SolveReport rep;
  rep.omega = omega;
  rep.coeffs = resize_modes(seed, b, m, modes);

  auto finish = [&rep](SolveStatus status, std::string msg) {
    rep.status = status;
    rep.converged = status == SolveStatus::Converged;
    rep.message = std::move(msg);
    if (rep.converged) {
      rep.trivial = is_trivial(rep.coeffs);
      if (!rep.trivial) rep.coeffs = normalize_sign(rep.coeffs);
    }
    return rep;
  };

  for (int iter = 0;; ++iter) {
    DiscreteResidual f;
    try {
      f = assemble(rep.coeffs, omega, config.nodes);
    } catch (const ContourError& e) {
      rep.iterations = iter;
      rep.failed_at_iteration = iter;
      return finish(SolveStatus::GeometryBreakdown, e.what());
    }
    rep.residual_max = f.max_abs;
    rep.residual_history.push_back(f.max_abs);
    rep.iterations = iter;
    if (f.max_abs < config.tol) return finish(SolveStatus::Converged, {});
    if (!std::isfinite(f.max_abs) || iter >= config.max_iter) {
      rep.failed_at_iteration = iter;
      return finish(SolveStatus::NonConvergence,
                    "residual " + std::to_string(f.max_abs) + " after " + std::to_string(iter) +
                        " iterations");
    }

    const std::vector<double> f0 = f.flatten();
    Eigen::MatrixXd jac;
    try {
      jac = fd_jacobian(rep.coeffs, omega, config, f0);
    } catch (const ContourError& e) {
      rep.failed_at_iteration = iter;
      return finish(SolveStatus::GeometryBreakdown, e.what());
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < kPivotFloor) {
      rep.failed_at_iteration = iter;
      return finish(SolveStatus::SingularJacobian,
                    "pivot " + std::to_string(min_pivot) + " below threshold");
    }
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(f0.data(), static_cast<Eigen::Index>(f0.size()));
    const Eigen::VectorXd step = lu.solve(rhs);

    std::vector<double> x = rep.coeffs.flatten();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step(static_cast<Eigen::Index>(i));
    rep.coeffs.assign(x);
  }
}

}  // namespace vstates
