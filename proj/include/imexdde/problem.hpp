#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace imexdde {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

using TimeMap = std::function<Vector(double)>;
using DelayedMap = std::function<Vector(double, const Vector&)>;

/// Constant-delay system
///   y'(t) = -A y(t) + forcing(t) + delayed_map(t, y(t - tau)),  t >= t0,
///   y(t)  = history(t),                                          t <= t0.
/// A is stored in the positive-definite convention, so the implicit part is -A y.
struct DelayProblem {
  std::string name;
  std::size_t dimension = 0;
  double tau = 1.0;
  double t0 = 0.0;
  Matrix A;
  TimeMap forcing;  // empty means zero forcing
  DelayedMap delayed_map;
  std::optional<Matrix> delayed_matrix;  // set when delayed_map(t, v) == B v
  // For nonlinear delayed terms: the delayed coefficient matrix frozen at the
  // initial history state, used only for stability analysis.
  std::optional<Matrix> frozen_delayed_matrix;
  TimeMap history;
  TimeMap exact;  // empty when no closed-form solution is known
  std::map<std::string, double> parameters;

  [[nodiscard]] bool has_exact() const noexcept { return static_cast<bool>(exact); }
  [[nodiscard]] Vector forcing_at(double t) const;
};

/// Checks the structural invariants (tau > 0, map dimensions, and
/// delayed_map == delayed_matrix on random samples). Throws on violation.
void validate(const DelayProblem& problem, std::uint64_t seed = 2024);

/// The matrix standing in for B in the stability analysis: delayed_matrix for
/// linear problems, frozen_delayed_matrix otherwise.
[[nodiscard]] const Matrix& stability_delayed_matrix(const DelayProblem& problem);

/// Builds a problem y' = -A y + B y(t - tau) + f(t) with f chosen so that
/// `solution` is exact, given its derivative. History is the solution itself.
[[nodiscard]] DelayProblem manufactured_linear_problem(std::string name, Matrix A, Matrix B, double tau,
                                                       TimeMap solution, TimeMap derivative);

}  // namespace imexdde
