#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imexdde/coefficients.hpp"
#include "imexdde/polynomial.hpp"

namespace imexdde {

/// rho, sigma and sigma* of an IMEX method, lowest degree first.
struct CharPolynomials {
  std::vector<double> rho;         // alpha_j, degree s
  std::vector<double> sigma_poly;  // beta_j, degree s
  std::vector<double> sigma_star;  // beta*_j, degree s-1
};

[[nodiscard]] CharPolynomials char_polynomials(const ImexCoefficients& method);

/// A point on the closed negative real axis, or its -infinity limit.
struct ZValue {
  double value = 0.0;
  bool minus_infinity = false;

  [[nodiscard]] static ZValue finite(double z) noexcept { return ZValue{z, false}; }
  [[nodiscard]] static ZValue neg_inf() noexcept { return ZValue{0.0, true}; }
};

enum class RootClass { stable, marginal, unstable };

inline constexpr double kRootTolerance = 1e-9;

struct CharRootReport {
  std::vector<Complex> roots;
  double max_modulus = 0.0;
  RootClass classification = RootClass::stable;
};

/// Roots of zeta^m (rho - z sigma) + z mu sigma*, or zeta^m sigma - mu sigma* in the
/// z = -infinity limit. |zeta| within kRootTolerance of 1 counts as marginal.
[[nodiscard]] CharRootReport characteristic_roots(const ImexCoefficients& method, ZValue z, Complex mu, int m);
[[nodiscard]] bool char_equation_stable(const ImexCoefficients& method, ZValue z, Complex mu, int m);
[[nodiscard]] bool char_equation_stable(Method method, ZValue z, Complex mu, int m);

struct CurveSample {
  double theta;
  Complex mu;
};

struct StabilityCurve {
  std::string method;
  double z = 0.0;
  int m = 0;
  std::vector<CurveSample> samples;
};

/// mu(theta) = -zeta^m (rho(zeta) - z sigma(zeta)) / (z sigma*(zeta)), zeta = e^{i theta},
/// at n_samples points theta_k = 2 pi k / (n_samples - 1) covering [0, 2 pi].
[[nodiscard]] Complex boundary_point(const ImexCoefficients& method, double z, int m, double theta);
[[nodiscard]] StabilityCurve gamma_curve(const ImexCoefficients& method, double z, int m, int n_samples);
[[nodiscard]] StabilityCurve gamma_curve(Method method, double z, int m, int n_samples);

/// min_theta |mu_{0,z}(theta)| by dense grid plus golden-section refinement.
[[nodiscard]] double sigma_z_numeric(const ImexCoefficients& method, double z, int grid_points = 8192);
[[nodiscard]] double sigma_z_numeric(Method method, double z, int grid_points = 8192);

inline constexpr double kBdf2LeftBreak = -5.0 - 4.5 * 1.4142135623730951;  // (-10 - 9 sqrt 2) / 2
inline constexpr double kBdf2RightBreak = -0.70710678118654752;             // -1/sqrt 2
inline constexpr double kBdf3LeftBreak = -12.655874;
inline constexpr double kBdf3RightBreak = -0.722965;
inline constexpr double kBdf3BreakValue = 0.218109;

/// sigma_z as a piecewise function of z: psi for BDF2, psi-tilde for BDF3.
[[nodiscard]] double psi(Method method, ZValue z);
/// The middle branches, evaluated without the branch selection.
[[nodiscard]] double psi2_bdf2(double z);
[[nodiscard]] double psi2_bdf3(double z);

/// Smallest z with psi(z) = r.
/// Throws domain_unconditional for r at or below 1/3 (1/7) and domain_no_guarantee for r > 1.
[[nodiscard]] double chi(Method method, double r);

/// |mu_BDF2(z, theta)|^2 in closed form.
[[nodiscard]] double phi_bdf2(double z, double theta);
/// The interior stationary point of phi_bdf2 in (0, pi), when it exists.
[[nodiscard]] std::optional<double> bdf2_interior_critical_theta(double z);

/// min_theta |mu_{0,z}(theta)| through the stationary points in cos(theta) of
/// |rho - z sigma|^2 / |z sigma*|^2; empty if the critical-point search breaks down.
[[nodiscard]] std::optional<double> sigma_z_critical(const ImexCoefficients& method, double z);

}  // namespace imexdde
