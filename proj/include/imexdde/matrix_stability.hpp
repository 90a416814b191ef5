#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imexdde/coefficients.hpp"
#include "imexdde/polynomial.hpp"
#include "imexdde/problem.hpp"

namespace imexdde {

struct FovEstimate {
  std::vector<double> thetas;
  std::vector<Complex> boundary;  // v* X v for the top eigenvector of H(theta)
  int n_angles = 0;
  double numerical_radius = 0.0;
};

/// Johnson's angular sweep: theta_k = 2 pi k / n_angles, n_angles >= 32.
[[nodiscard]] FovEstimate fov(const ComplexMatrix& X, int n_angles = 512);
[[nodiscard]] FovEstimate fov(const Matrix& X, int n_angles = 512);

/// A^{p/2-1} B A^{-p/2} for Hermitian positive definite A.
[[nodiscard]] Matrix fp_matrix(const Matrix& A, const Matrix& B, double p);

/// ||AB - BA||_F <= tol ||A||_F ||B||_F.
[[nodiscard]] bool commutes(const Matrix& A, const Matrix& B, double tol = 1e-12);

struct PairedEigenvalue {
  double lambda;
  Complex gamma;
  Complex mu;  // gamma / lambda
};

/// Pairs eigenvalues of A and B through the eigenvectors of A.
[[nodiscard]] std::vector<PairedEigenvalue> paired_generalized_eigenvalues(const Matrix& A, const Matrix& B);

enum class Regime { unconditional, conditional, no_guarantee };
enum class BoundRule { prop41, thm43, thm51 };

[[nodiscard]] std::string_view regime_name(Regime regime) noexcept;
[[nodiscard]] std::string_view rule_name(BoundRule rule) noexcept;
[[nodiscard]] BoundRule parse_rule(std::string_view name);

struct StepSizeReport {
  Method method = Method::bdf2;
  BoundRule rule = BoundRule::thm51;
  Regime regime = Regime::conditional;
  double r_used = 0.0;    // numerical radius, or max |mu_i|
  double lambda_d = 0.0;  // largest eigenvalue of A
  std::optional<double> h_star;
};

/// Simultaneously diagonalizable pair; rule is prop41 or thm43.
[[nodiscard]] StepSizeReport step_bound_simdiag(const Matrix& A, const Matrix& B, Method method, BoundRule rule);
/// Field-of-values bound with r = r(A^{p/2-1} B A^{-p/2}).
[[nodiscard]] StepSizeReport step_bound_fov(const Matrix& A, const Matrix& B, Method method, double p = 0.0,
                                            int n_angles = 512);

struct AsymptoticDiagnostics {
  bool eigenvalues_negative = false;  // all Re(eig L) < 0
  double max_real_eigenvalue = 0.0;
  bool resolvent_contractive = false;  // rho((iy - L)^{-1} G) < 1 on the grid
  double max_resolvent_radius = 0.0;
  double worst_y = 0.0;
  bool minus_one_excluded = false;  // -1 not in sigma(L^{-1} G)
  double distance_to_minus_one = 0.0;
  int skipped_samples = 0;
};

struct AsymptoticCheck {
  bool stable = false;
  AsymptoticDiagnostics diagnostics;
};

/// Sampled check of the delay-independent stability conditions for y' = L y + G y(t - tau).
[[nodiscard]] AsymptoticCheck asymptotic_stability_check(const Matrix& L, const Matrix& G, int n_grid = 10000,
                                                         double y_max = 1e3);

}  // namespace imexdde
