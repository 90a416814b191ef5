#include "imexdde/integrator.hpp"

#include <cmath>
#include <string>

#include "imexdde/error.hpp"
#include "imexdde/history_buffer.hpp"

namespace imexdde {

std::size_t delay_steps(double tau, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorCode::step_size, "step size must be positive");
  const double ratio = tau / h;
  const double m = std::round(ratio);
  if (m < 1.0 || std::abs(ratio - m) > 1e-9 * m) {
    fail(ErrorCode::step_size, "tau / h = " + std::to_string(ratio) + " is not a positive integer");
  }
  return static_cast<std::size_t>(m);
}

namespace {

using LU = Eigen::PartialPivLU<Matrix>;

LU factor(const Matrix& M) {
  LU lu(M);
  if (!(lu.rcond() > 1e-14)) {
    fail(ErrorCode::factorization,
         "implicit matrix alpha_s I + h beta_s A is singular to working precision (rcond " +
             std::to_string(lu.rcond()) + ")");
  }
  return lu;
}

// IMEX Euler from t0 over (s-1) coarse steps on a grid of h/substeps.
// Returns the states at the coarse points t0 + h, ..., t0 + (s-1) h.
std::vector<Vector> imex_euler_startup(const DelayProblem& p, double h, std::size_t m, std::size_t s,
                                       std::size_t substeps) {
  const auto d = static_cast<Eigen::Index>(p.dimension);
  const double delta = h / static_cast<double>(substeps);
  const std::size_t total = (s - 1) * substeps;
  const long lag = static_cast<long>(m * substeps);

  const LU lu = factor(Matrix::Identity(d, d) + delta * p.A);
  std::vector<Vector> fine;
  fine.reserve(total + 1);
  fine.push_back(p.history(p.t0));
  for (std::size_t k = 0; k < total; ++k) {
    const double tk = p.t0 + static_cast<double>(k) * delta;
    const long back = static_cast<long>(k) - lag;
    const Vector delayed = back <= 0 ? p.history(p.t0 + static_cast<double>(back) * delta)
                                     : fine[static_cast<std::size_t>(back)];
    const Vector rhs =
        fine[k] + delta * p.forcing_at(p.t0 + static_cast<double>(k + 1) * delta) + delta * p.delayed_map(tk, delayed);
    fine.push_back(lu.solve(rhs));
  }
  std::vector<Vector> coarse;
  for (std::size_t j = 1; j < s; ++j) coarse.push_back(fine[j * substeps]);
  return coarse;
}

std::vector<Vector> startup_values(const DelayProblem& p, const ImexCoefficients& c, double h, std::size_t m,
                                   StartupRule rule) {
  const auto s = static_cast<std::size_t>(c.steps);
  std::vector<Vector> values;
  if (s < 2) return values;
  const bool use_exact = rule == StartupRule::exact || (rule == StartupRule::automatic && p.has_exact());
  if (use_exact) {
    if (!p.has_exact()) fail(ErrorCode::missing_exact, "exact startup requested but problem has no exact solution");
    for (std::size_t j = 1; j < s; ++j) values.push_back(p.exact(p.t0 + static_cast<double>(j) * h));
    return values;
  }
  // Two Richardson levels over IMEX Euler runs with N, N/2, N/4 substeps, N = 4 * 2^(p-1).
  // The Euler error expands in powers of h/N, so the result is O(h^4) at the startup points.
  const std::size_t n_fine = std::size_t{4} << static_cast<unsigned>(c.order - 1);
  const auto y1 = imex_euler_startup(p, h, m, s, n_fine);
  const auto y2 = imex_euler_startup(p, h, m, s, n_fine / 2);
  const auto y3 = imex_euler_startup(p, h, m, s, n_fine / 4);
  for (std::size_t j = 0; j + 1 < s; ++j) {
    const Vector r1 = 2.0 * y1[j] - y2[j];
    const Vector r2 = 2.0 * y2[j] - y3[j];
    values.push_back((4.0 * r1 - r2) / 3.0);
  }
  return values;
}

bool exceeds(const Vector& y, double threshold) {
  if (!y.allFinite()) return true;
  return y.lpNorm<Eigen::Infinity>() > threshold;
}

}  // namespace

Trajectory integrate(const DelayProblem& p, const ImexCoefficients& c, const IntegrateOptions& opt) {
  if (c.steps < 1 || c.alpha.size() != static_cast<std::size_t>(c.steps + 1) ||
      c.beta.size() != c.alpha.size() || c.beta_star.size() != static_cast<std::size_t>(c.steps)) {
    fail(ErrorCode::invalid_argument, "malformed IMEX coefficients");
  }
  if (!(opt.t_end > p.t0)) fail(ErrorCode::invalid_argument, "t_end must exceed t0");
  if (opt.store_every == 0) fail(ErrorCode::invalid_argument, "store_every must be at least 1");

  const double h = opt.h;
  const std::size_t m = delay_steps(p.tau, h);
  const auto s = static_cast<std::size_t>(c.steps);
  const auto d = static_cast<Eigen::Index>(p.dimension);

  const double span = (opt.t_end - p.t0) / h;
  const double rounded = std::round(span);
  const auto n_end = static_cast<long>(std::abs(span - rounded) <= 1e-9 * rounded ? rounded : std::floor(span));
  if (n_end < static_cast<long>(s)) fail(ErrorCode::step_size, "t_end leaves fewer grid points than method steps");

  Trajectory traj;
  traj.h = h;
  traj.delay_steps = m;

  const double alpha_s = c.alpha[s];
  const double beta_s = c.beta[s];
  const Matrix implicit_matrix = alpha_s * Matrix::Identity(d, d) + h * beta_s * p.A;
  LU lu = factor(implicit_matrix);

  HistoryBuffer buffer(m, s, p.t0, h, p.history);
  auto record = [&](long index, const Vector& y) {
    traj.times.push_back(buffer.time(index));
    traj.states.push_back(y);
  };
  record(0, buffer.state(0));

  long index = 0;
  for (Vector& y : startup_values(p, c, h, m, opt.startup)) {
    ++index;
    buffer.push(std::move(y));
    record(index, buffer.state(index));
  }

  for (long n = 0; n + static_cast<long>(s) <= n_end; ++n) {
    const long next = n + static_cast<long>(s);
    Vector rhs = h * beta_s * p.forcing_at(buffer.time(next));
    for (std::size_t j = 0; j < s; ++j) {
      const long k = n + static_cast<long>(j);
      const Vector& yk = buffer.state(k);
      rhs.noalias() -= c.alpha[j] * yk;
      if (c.beta[j] != 0.0) rhs += h * c.beta[j] * (p.forcing_at(buffer.time(k)) - p.A * yk);
      rhs += h * c.beta_star[j] * buffer.delayed_value(k - static_cast<long>(m), p.delayed_map);
    }
    if (opt.refactor_each_step) lu = factor(implicit_matrix);
    Vector y = lu.solve(rhs);

    const bool blown = exceeds(y, opt.blowup_threshold);
    const bool keep = blown || next == n_end || (static_cast<std::size_t>(next) % opt.store_every) == 0;
    buffer.push(std::move(y));
    if (keep) record(next, buffer.state(next));
    if (blown) {
      traj.blew_up = true;
      traj.blowup_time = buffer.time(next);
      break;
    }
  }
  return traj;
}

Vector final_error(const Trajectory& traj, const DelayProblem& p) {
  if (!p.has_exact()) fail(ErrorCode::missing_exact, "problem '" + p.name + "' has no exact solution");
  if (traj.size() == 0) fail(ErrorCode::invalid_argument, "empty trajectory");
  return (traj.final_state() - p.exact(traj.final_time())).cwiseAbs();
}

double max_trajectory_error(const Trajectory& traj, const DelayProblem& p) {
  if (!p.has_exact()) fail(ErrorCode::missing_exact, "problem '" + p.name + "' has no exact solution");
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    worst = std::max(worst, (traj.states[i] - p.exact(traj.times[i])).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

double error_norm(const Vector& e, ErrorNorm norm) {
  return norm == ErrorNorm::l2 ? e.norm() : e.lpNorm<Eigen::Infinity>();
}

double convergence_rate(double err_h1, double err_h2, double h1, double h2) {
  if (!(err_h1 > 0.0) || !(err_h2 > 0.0) || !std::isfinite(err_h1) || !std::isfinite(err_h2)) {
    fail(ErrorCode::domain, "convergence rate needs positive finite error norms");
  }
  if (!(h1 > h2) || !(h2 > 0.0)) fail(ErrorCode::domain, "convergence rate needs h1 > h2 > 0");
  return std::log(err_h1 / err_h2) / std::log(h1 / h2);
}

}  // namespace imexdde
