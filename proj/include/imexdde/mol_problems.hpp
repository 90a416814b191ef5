#pragma once

#include <map>
#include <string>
#include <vector>

#include "imexdde/problem.hpp"

namespace imexdde {

struct MolGrid {
  int n = 0;
  double x0 = 0.0;
  double xn = 1.0;
  double dx = 0.0;

  [[nodiscard]] static MolGrid make(int n, double x0, double xn);
  [[nodiscard]] double node(int j) const noexcept { return x0 + j * dx; }
  [[nodiscard]] int node_count() const noexcept { return n + 1; }
};

/// Tridiagonal (1, -2, 1) / dx^2 on the n-1 interior nodes.
[[nodiscard]] Matrix second_difference(int interior, double dx);

/// lambda_r = alpha - 2 sqrt(beta gamma) cos(r pi / (N + 1)), r = 1..N.
[[nodiscard]] std::vector<double> toeplitz_eigenvalues(double alpha, double beta, double gamma, int N);

/// 4x4 commuting pair, tau = 1, exact solution (e^{-t}, sin t, 2t^2, 1+t).
[[nodiscard]] DelayProblem example1();
/// 3x3 non-commuting pair, tau = 1, exact solution (cos t, e^{-t/10}, 1+t).
[[nodiscard]] DelayProblem example2();

/// Coupled reaction-diffusion PDDE on [-1, 1] discretized on n intervals (dimension 2(n-1)).
/// The closed-form solution is exact only for tau = pi/2.
[[nodiscard]] DelayProblem linear_pdde_mol(double a1, double a2, double l, int n, double tau);

/// Burgers equation with delayed convection on [0, 1], n intervals (dimension n-1).
[[nodiscard]] DelayProblem burgers_mol(double epsilon, int n, double tau, double forcing_amp = 10.0);
/// B(u) with g(u) = B(u) u: zero diagonal, row j = (u_j, 0, -u_j) / (2 dx).
[[nodiscard]] Matrix burgers_delayed_coefficients(const Vector& u, double dx);

using ProblemParameters = std::map<std::string, double>;

[[nodiscard]] std::vector<std::string> problem_names();
/// Default parameters of a named problem.
[[nodiscard]] ProblemParameters problem_defaults(const std::string& name);
/// Builds a registered problem; unknown keys or names throw.
[[nodiscard]] DelayProblem make_problem(const std::string& name, const ProblemParameters& overrides = {});

}  // namespace imexdde
