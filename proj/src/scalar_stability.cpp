#include "imexdde/scalar_stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "imexdde/error.hpp"

namespace imexdde {

namespace {

std::string label_of(const ImexCoefficients& c) {
  if (c.steps == 2 && c.order == 2) return "bdf2";
  if (c.steps == 3 && c.order == 3) return "bdf3";
  return "imex-s" + std::to_string(c.steps) + "p" + std::to_string(c.order);
}

void require_negative(double z, const char* what) {
  if (!(z < 0.0) || !std::isfinite(z)) {
    fail(ErrorCode::domain, std::string(what) + " requires finite z < 0, got " + std::to_string(z));
  }
}

const ImexCoefficients& coefficients_of(Method method) {
  static const ImexCoefficients bdf2 = imex_bdf_coefficients(2);
  static const ImexCoefficients bdf3 = imex_bdf_coefficients(3);
  return method == Method::bdf2 ? bdf2 : bdf3;
}

}  // namespace

CharPolynomials char_polynomials(const ImexCoefficients& c) { return {c.alpha, c.beta, c.beta_star}; }

CharRootReport characteristic_roots(const ImexCoefficients& c, ZValue z, Complex mu, int m) {
  if (m < 0) fail(ErrorCode::invalid_argument, "delay steps m must be non-negative");
  if (!z.minus_infinity && (!(z.value <= 0.0) || !std::isfinite(z.value))) {
    fail(ErrorCode::domain, "characteristic equation is studied for z <= 0");
  }
  const auto s = static_cast<std::size_t>(c.steps);
  const auto shift = static_cast<std::size_t>(m);
  std::vector<Complex> coeffs(shift + s + 1, Complex{0.0, 0.0});
  for (std::size_t k = 0; k <= s; ++k) {
    coeffs[shift + k] += z.minus_infinity ? c.beta[k] : c.alpha[k] - z.value * c.beta[k];
  }
  for (std::size_t k = 0; k < s; ++k) {
    coeffs[k] += z.minus_infinity ? -mu * c.beta_star[k] : z.value * mu * c.beta_star[k];
  }

  CharRootReport report;
  report.roots = polynomial_roots(coeffs);
  for (const Complex& r : report.roots) report.max_modulus = std::max(report.max_modulus, std::abs(r));
  if (report.max_modulus < 1.0 - kRootTolerance) {
    report.classification = RootClass::stable;
  } else if (report.max_modulus <= 1.0 + kRootTolerance) {
    report.classification = RootClass::marginal;
  } else {
    report.classification = RootClass::unstable;
  }
  return report;
}

bool char_equation_stable(const ImexCoefficients& c, ZValue z, Complex mu, int m) {
  return characteristic_roots(c, z, mu, m).classification == RootClass::stable;
}

bool char_equation_stable(Method method, ZValue z, Complex mu, int m) {
  return char_equation_stable(coefficients_of(method), z, mu, m);
}

Complex boundary_point(const ImexCoefficients& c, double z, int m, double theta) {
  const Complex zeta = std::polar(1.0, theta);
  const Complex den = z * evaluate(std::span<const double>(c.beta_star), zeta);
  if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(z))) {
    fail(ErrorCode::pole, "sigma*(e^{i theta}) vanishes at theta = " + std::to_string(theta));
  }
  const Complex num = evaluate(std::span<const double>(c.alpha), zeta) - z * evaluate(std::span<const double>(c.beta), zeta);
  return -std::pow(zeta, m) * num / den;
}

StabilityCurve gamma_curve(const ImexCoefficients& c, double z, int m, int n_samples) {
  require_negative(z, "gamma_curve");
  if (n_samples < 16) fail(ErrorCode::invalid_argument, "gamma_curve needs at least 16 samples");
  if (m < 0) fail(ErrorCode::invalid_argument, "delay steps m must be non-negative");
  StabilityCurve curve{label_of(c), z, m, {}};
  curve.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    // Endpoint exactly 2 pi so the curve closes.
    const double theta = k == n_samples - 1 ? 2.0 * std::numbers::pi : 2.0 * std::numbers::pi * k / (n_samples - 1);
    curve.samples.push_back({theta, boundary_point(c, z, m, theta)});
  }
  return curve;
}

StabilityCurve gamma_curve(Method method, double z, int m, int n_samples) {
  return gamma_curve(coefficients_of(method), z, m, n_samples);
}

double sigma_z_numeric(const ImexCoefficients& c, double z, int grid_points) {
  require_negative(z, "sigma_z_numeric");
  if (grid_points < 4096) fail(ErrorCode::invalid_argument, "sigma_z grid needs at least 4096 points");
  // Real coefficients: |mu(2 pi - theta)| = |mu(theta)|, so [0, pi] suffices.
  auto modulus = [&](double theta) { return std::abs(boundary_point(c, z, 0, theta)); };
  const double step = std::numbers::pi / (grid_points - 1);
  int best = 0;
  double best_value = modulus(0.0);
  for (int k = 1; k < grid_points; ++k) {
    const double v = modulus(k * step);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  double a = std::max(0, best - 1) * step;
  double b = std::min(grid_points - 1, best + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = modulus(x1);
  double f2 = modulus(x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = modulus(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = modulus(x2);
    }
  }
  return std::min({best_value, f1, f2, modulus(0.5 * (a + b))});
}

double sigma_z_numeric(Method method, double z, int grid_points) {
  return sigma_z_numeric(coefficients_of(method), z, grid_points);
}

std::optional<double> sigma_z_critical(const ImexCoefficients& c, double z) {
  require_negative(z, "sigma_z_critical");
  // phi(x) = P(x) / Q(x) with x = cos theta; stationary points solve R = P'Q - PQ' = 0.
  std::vector<double> num = c.alpha;
  for (std::size_t k = 0; k < num.size(); ++k) num[k] -= z * c.beta[k];
  std::vector<double> den = c.beta_star;
  for (double& v : den) v *= z;
  const std::vector<double> P = unit_circle_modulus_squared(num);
  const std::vector<double> Q = unit_circle_modulus_squared(den);
  const std::vector<double> R = subtract(multiply(derivative(P), Q), multiply(P, derivative(Q)));
  const std::vector<double> dR = derivative(R);

  auto value_at = [&](double x) { return std::abs(boundary_point(c, z, 0, std::acos(std::clamp(x, -1.0, 1.0)))); };
  double best = std::min(value_at(1.0), value_at(-1.0));

  constexpr int kScan = 2048;
  double x_prev = -1.0;
  double r_prev = evaluate(std::span<const double>(R), x_prev);
  for (int k = 1; k <= kScan; ++k) {
    const double x_next = -1.0 + 2.0 * k / kScan;
    const double r_next = evaluate(std::span<const double>(R), x_next);
    if (!std::isfinite(r_next) || evaluate(std::span<const double>(Q), x_next) <= 0.0) return std::nullopt;
    if (r_prev == 0.0) best = std::min(best, value_at(x_prev));
    if ((r_prev < 0.0) != (r_next < 0.0) && r_next != 0.0 && r_prev != 0.0) {
      // Safeguarded Newton inside the sign-change bracket.
      double lo = x_prev;
      double hi = x_next;
      const bool lo_negative = r_prev < 0.0;
      double x = 0.5 * (lo + hi);
      bool converged = false;
      for (int it = 0; it < 100; ++it) {
        const double rx = evaluate(std::span<const double>(R), x);
        if (rx == 0.0) {
          converged = true;
          break;
        }
        if ((rx < 0.0) == lo_negative) {
          lo = x;
        } else {
          hi = x;
        }
        const double slope = evaluate(std::span<const double>(dR), x);
        double next = slope != 0.0 ? x - rx / slope : 0.5 * (lo + hi);
        if (!(next > std::min(lo, hi) && next < std::max(lo, hi))) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 || std::abs(hi - lo) <= 1e-15) {
          x = next;
          converged = true;
          break;
        }
        x = next;
      }
      if (!converged) return std::nullopt;
      best = std::min(best, value_at(x));
    }
    x_prev = x_next;
    r_prev = r_next;
  }
  return best;
}

double phi_bdf2(double z, double theta) {
  // (13 - 6z + 2z^2 + 8(z-2)cos t + (3-2z)cos 2t) / (2z^2 (5 - 4cos t)), regrouped in
  // u = 1 - cos t = 2 sin^2(t/2): the constant terms cancel to O(u) near t = 0.
  const double s = std::sin(0.5 * theta);
  const double u = 2.0 * s * s;
  return (2.0 * z * z - 4.0 * z * u * u + 2.0 * u * (2.0 + 3.0 * u)) / (2.0 * z * z * (1.0 + 4.0 * u));
}

std::optional<double> bdf2_interior_critical_theta(double z) {
  const double disc = -15.0 + 4.0 * z + 52.0 * z * z - 32.0 * z * z * z;
  if (disc < 0.0) return std::nullopt;
  const double ratio = (4.0 - 2.0 * z - 2.0 * z * z - std::sqrt(disc)) / (-31.0 + 20.0 * z + 2.0 * z * z);
  if (!(ratio > 0.0) || !std::isfinite(ratio)) return std::nullopt;
  return 2.0 * std::atan(std::sqrt(ratio));
}

double psi2_bdf2(double z) {
  const double inner = -(-3.0 + 2.0 * z) * (1.0 + 2.0 * z) * (-5.0 + 8.0 * z);
  return -std::sqrt(1.0 + 2.0 * z + std::sqrt(inner)) / (2.0 * std::numbers::sqrt2 * z);
}

double psi2_bdf3(double z) {
  const ImexCoefficients& c = coefficients_of(Method::bdf3);
  if (auto v = sigma_z_critical(c, z)) return *v;
  return sigma_z_numeric(c, z);
}

double psi(Method method, ZValue z) {
  if (z.minus_infinity) return method == Method::bdf2 ? 1.0 / 3.0 : 1.0 / 7.0;
  require_negative(z.value, "psi");
  const double x = z.value;
  if (method == Method::bdf2) {
    if (x >= kBdf2RightBreak) return 1.0;
    if (x >= kBdf2LeftBreak) return psi2_bdf2(x);
    return (x - 4.0) / (3.0 * x);
  }
  if (x >= kBdf3RightBreak) return 1.0;
  if (x >= kBdf3LeftBreak) return psi2_bdf3(x);
  return (3.0 - 20.0 / x) / 21.0;
}

namespace {

// Solves branch(z) = r on [lo, hi] with Newton steps kept inside a shrinking bracket.
double invert_increasing(double (*branch)(double), double r, double lo, double hi, double guess) {
  auto f = [&](double z) { return branch(z) - r; };
  // Breakpoints are only known to a few digits; widen until the bracket is valid.
  for (int k = 0; k < 60 && f(lo) > 0.0; ++k) lo *= 1.01;
  for (int k = 0; k < 60 && f(hi) < 0.0; ++k) hi *= 0.99;
  double z = std::clamp(guess, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const double fz = f(z);
    if (fz > 0.0) {
      hi = z;
    } else {
      lo = z;
    }
    const double dz = 1e-6 * std::max(1.0, std::abs(z));
    const double slope = (f(z + dz) - f(z - dz)) / (2.0 * dz);
    double next = slope > 0.0 ? z - fz / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool small_step = std::abs(next - z) <= 1e-13 * std::abs(z);
    z = next;
    if (std::abs(fz) < 1e-10 && small_step) break;
    if (hi - lo <= 1e-15 * std::abs(z)) break;
  }
  return z;
}

}  // namespace

double chi(Method method, double r) {
  if (!std::isfinite(r)) fail(ErrorCode::domain, "chi requires a finite radius");
  const bool bdf2 = method == Method::bdf2;
  const double floor = bdf2 ? 1.0 / 3.0 : 1.0 / 7.0;
  if (r <= floor) {
    fail(ErrorCode::domain_unconditional,
         "r = " + std::to_string(r) + " is in the unconditional regime (r <= " + (bdf2 ? "1/3" : "1/7") + ")");
  }
  if (r > 1.0) fail(ErrorCode::domain_no_guarantee, "r = " + std::to_string(r) + " > 1: no stability guarantee");
  if (bdf2) {
    if (r == 1.0) return kBdf2RightBreak;
    const double mid = 3.0 / 31.0 * (-1.0 + 4.0 * std::numbers::sqrt2);
    if (r <= mid) return 4.0 / (1.0 - 3.0 * r);
    return invert_increasing(&psi2_bdf2, r, kBdf2LeftBreak, kBdf2RightBreak, 4.0 / (1.0 - 3.0 * r));
  }
  if (r == 1.0) return kBdf3RightBreak;
  if (r <= kBdf3BreakValue) return -20.0 / (3.0 * (7.0 * r - 1.0));
  return invert_increasing(&psi2_bdf3, r, kBdf3LeftBreak, kBdf3RightBreak, -20.0 / (3.0 * (7.0 * r - 1.0)));
}

}  // namespace imexdde
