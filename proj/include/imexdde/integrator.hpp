#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "imexdde/coefficients.hpp"
#include "imexdde/problem.hpp"

namespace imexdde {

enum class StartupRule {
  automatic,  // exact solution when available, bootstrap otherwise
  exact,
  bootstrap,
};

struct IntegrateOptions {
  double h = 0.01;
  double t_end = 1.0;
  // Stop as soon as ||y||_inf exceeds this (or turns non-finite).
  double blowup_threshold = std::numeric_limits<double>::infinity();
  // Record every k-th step; the final step is always recorded.
  std::size_t store_every = 1;
  bool refactor_each_step = false;
  StartupRule startup = StartupRule::automatic;
};

struct Trajectory {
  double h = 0.0;
  std::size_t delay_steps = 0;  // m = tau / h
  std::vector<double> times;
  std::vector<Vector> states;
  bool blew_up = false;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();

  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
  [[nodiscard]] double final_time() const { return times.back(); }
  [[nodiscard]] const Vector& final_state() const { return states.back(); }
};

/// m = tau / h, which must be a positive integer to within 1e-9 relative.
[[nodiscard]] std::size_t delay_steps(double tau, double h);

/// Fixed-step IMEX multistep integration of an affine-implicit delay system.
/// The matrix alpha_s I + h beta_s A is LU-factored once per run.
[[nodiscard]] Trajectory integrate(const DelayProblem& problem, const ImexCoefficients& method,
                                   const IntegrateOptions& options);

enum class ErrorNorm { l2, max };

/// Componentwise |y_N - exact(t_N)| at the last recorded point.
[[nodiscard]] Vector final_error(const Trajectory& trajectory, const DelayProblem& problem);
/// max over recorded points of ||y_n - exact(t_n)||_inf.
[[nodiscard]] double max_trajectory_error(const Trajectory& trajectory, const DelayProblem& problem);
[[nodiscard]] double error_norm(const Vector& error, ErrorNorm norm);

/// log(err_h1 / err_h2) / log(h1 / h2).
[[nodiscard]] double convergence_rate(double err_h1, double err_h2, double h1, double h2);

}  // namespace imexdde
