#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "imexdde/error.hpp"
#include "imexdde/polynomial.hpp"
#include "imexdde/scalar_stability.hpp"
#include "oracles.hpp"

using namespace imexdde;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an imexdde::Error");
  return ErrorCode::io;
}

std::vector<double> log_spaced(double a, double b, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(-std::exp(std::log(-a) + (std::log(-b) - std::log(-a)) * k / (n - 1)));
  return out;
}

}  // namespace

TEST_CASE("characteristic polynomial identities") {
  for (Method m : {Method::bdf2, Method::bdf3}) {
    const auto cp = char_polynomials(imex_bdf_coefficients(m));
    const auto drho = derivative(cp.rho);
    CHECK(std::abs(evaluate(cp.rho, 1.0)) < 1e-14);
    CHECK(evaluate(drho, 1.0) == doctest::Approx(evaluate(cp.sigma_poly, 1.0)).epsilon(1e-14));
    CHECK(evaluate(cp.sigma_star, 1.0) == doctest::Approx(evaluate(cp.sigma_poly, 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("implicit BDF2 is stable on the negative axis with no delay coupling") {
  CHECK(char_equation_stable(Method::bdf2, ZValue::finite(-1.0), 0.0, 0));
  CHECK(char_equation_stable(Method::bdf3, ZValue::finite(-1.0), 0.0, 0));
}

TEST_CASE("a point on the boundary locus is not strictly stable") {
  const auto c = imex_bdf_coefficients(2);
  const Complex mu = boundary_point(c, -1.0, 0, kPi / 3);
  CHECK_FALSE(char_equation_stable(c, ZValue::finite(-1.0), mu, 0));
  CHECK(characteristic_roots(c, ZValue::finite(-1.0), mu, 0).classification == RootClass::marginal);
}

TEST_CASE("mu inside the sigma disk is stable for every delay") {
  const auto c = imex_bdf_coefficients(2);
  const double s = oracle::sigma_z(c, -1.0);
  for (int m : {0, 1, 5}) {
    for (double arg : {0.0, 1.0, 2.5, kPi}) CHECK(char_equation_stable(c, ZValue::finite(-1.0), std::polar(0.99 * s, arg), m));
  }
}

TEST_CASE("characteristic equation errors") {
  const auto c = imex_bdf_coefficients(2);
  CHECK(code_of([&] { (void)characteristic_roots(c, ZValue::finite(0.5), 0.1, 0); }) == ErrorCode::domain);
  ImexCoefficients flat = c;
  flat.beta = {0.0, 0.0, 0.0};
  CHECK(code_of([&] { (void)characteristic_roots(flat, ZValue::neg_inf(), 0.1, 2); }) ==
        ErrorCode::degenerate_polynomial);
}

TEST_CASE("minus infinity limit uses zeta^m sigma - mu sigma*") {
  const auto c = imex_bdf_coefficients(2);
  // For BDF2 the limit disk is |mu| < 1/3.
  CHECK(char_equation_stable(c, ZValue::neg_inf(), 0.3, 0));
  CHECK_FALSE(char_equation_stable(c, ZValue::neg_inf(), -0.34, 0));
}

TEST_CASE("BDF2 boundary locus at theta = pi") {
  // rho(-1) = 4, sigma(-1) = 1, sigma*(-1) = -3, so mu = -(4 + 1) / 3 at z = -1.
  const auto curve = gamma_curve(Method::bdf2, -1.0, 0, 101);
  const auto& mid = curve.samples[50];
  CHECK(mid.theta == doctest::Approx(kPi));
  CHECK(mid.mu.real() == doctest::Approx(-5.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(mid.mu.imag()) < 1e-12);
}

TEST_CASE("boundary locus symmetry, closure, and delay independence of the modulus") {
  for (Method method : {Method::bdf2, Method::bdf3}) {
    for (double z : {-0.3, -1.0, -7.0, -200.0}) {
      const auto base = gamma_curve(method, z, 0, 257);
      CHECK(std::abs(base.samples.front().mu - base.samples.back().mu) < 1e-12 * (1 + std::abs(base.samples[0].mu)));
      CHECK(std::abs(base.samples.front().mu.imag()) < 1e-12);
      CHECK(std::abs(base.samples[128].mu.imag()) < 1e-10);
      for (std::size_t k = 0; k < base.samples.size(); ++k) {
        const auto& a = base.samples[k];
        const auto& b = base.samples[base.samples.size() - 1 - k];
        CHECK(std::abs(a.mu - std::conj(b.mu)) < 1e-10 * (1 + std::abs(a.mu)));
      }
      for (int m : {1, 3, 20}) {
        const auto shifted = gamma_curve(method, z, m, 257);
        double worst = 0.0;
        for (std::size_t k = 0; k < base.samples.size(); ++k) {
          worst = std::max(worst, std::abs(std::abs(shifted.samples[k].mu) - std::abs(base.samples[k].mu)));
        }
        CHECK(worst < 1e-12);
      }
    }
  }
  CHECK(code_of([] { (void)gamma_curve(Method::bdf2, -1.0, 0, 8); }) == ErrorCode::invalid_argument);
}

TEST_CASE("sigma_z numeric matches the brute-force oracle and known branch values") {
  CHECK(sigma_z_numeric(Method::bdf2, -0.5) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sigma_z_numeric(Method::bdf2, -20.0) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(std::abs(sigma_z_numeric(Method::bdf3, -12.655874) - 0.218109) < 1e-5);
  for (Method method : {Method::bdf2, Method::bdf3}) {
    const auto c = imex_bdf_coefficients(method);
    for (double z : {-0.1, -0.9, -3.0, -40.0}) CHECK(sigma_z_numeric(c, z) == doctest::Approx(oracle::sigma_z(c, z)).epsilon(1e-10));
  }
}

TEST_CASE("psi closed forms and limits") {
  CHECK(psi(Method::bdf2, ZValue::neg_inf()) == doctest::Approx(1.0 / 3.0));
  CHECK(psi(Method::bdf3, ZValue::neg_inf()) == doctest::Approx(1.0 / 7.0));
  CHECK(psi(Method::bdf2, ZValue::finite(-0.5)) == 1.0);
  CHECK(psi(Method::bdf2, ZValue::finite(-1.0 / std::sqrt(2.0))) == doctest::Approx(1.0).epsilon(1e-12));
  const double left = kBdf2LeftBreak;
  const double expected = 3.0 / 31.0 * (-1.0 + 4.0 * std::sqrt(2.0));
  CHECK(psi2_bdf2(left) == doctest::Approx(expected).epsilon(1e-9));
  CHECK((left - 4.0) / (3.0 * left) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::abs(psi(Method::bdf3, ZValue::finite(kBdf3LeftBreak)) - kBdf3BreakValue) < 1e-5);
  CHECK(std::abs(psi2_bdf3(kBdf3RightBreak) - 1.0) < 1e-5);
  CHECK(code_of([] { (void)psi(Method::bdf2, ZValue::finite(0.1)); }) == ErrorCode::domain);
}

TEST_CASE("psi agrees with the grid oracle on log-spaced z") {
  for (Method method : {Method::bdf2, Method::bdf3}) {
    const auto c = imex_bdf_coefficients(method);
    double worst = 0.0;
    for (double z : log_spaced(-1e4, -1e-2, 50)) worst = std::max(worst, std::abs(psi(method, ZValue::finite(z)) - oracle::sigma_z(c, z)));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("psi is non-decreasing in z") {
  for (Method method : {Method::bdf2, Method::bdf3}) {
    const auto zs = log_spaced(-1e4, -1e-2, 400);
    for (std::size_t k = 1; k < zs.size(); ++k) {
      CHECK(psi(method, ZValue::finite(zs[k - 1])) <= psi(method, ZValue::finite(zs[k])) + 1e-12);
    }
  }
}

TEST_CASE("chi branch values, domain errors, and round trip") {
  CHECK(chi(Method::bdf2, 1.0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(chi(Method::bdf2, 0.4) == doctest::Approx(-20.0).epsilon(1e-12));
  CHECK(chi(Method::bdf3, 1.0) == doctest::Approx(-0.722965).epsilon(1e-12));
  CHECK(code_of([] { (void)chi(Method::bdf2, 1.0 / 3.0); }) == ErrorCode::domain_unconditional);
  CHECK(code_of([] { (void)chi(Method::bdf3, 0.1); }) == ErrorCode::domain_unconditional);
  CHECK(code_of([] { (void)chi(Method::bdf2, 1.01); }) == ErrorCode::domain_no_guarantee);
  CHECK(code_of([] { (void)chi(Method::bdf3, std::nan("")); }) == ErrorCode::domain);

  std::mt19937_64 rng(7);
  for (Method method : {Method::bdf2, Method::bdf3}) {
    const double right = method == Method::bdf2 ? kBdf2RightBreak : kBdf3RightBreak;
    std::uniform_real_distribution<double> u(std::log(-right), std::log(1e3));
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double z = -std::exp(u(rng));
      worst = std::max(worst, std::abs(chi(method, psi(method, ZValue::finite(z))) - z));
    }
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("phi closed form matches the boundary locus") {
  const auto c = imex_bdf_coefficients(2);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = -std::exp(-4.0 + 10.0 * i / 99.0);
    for (int k = 0; k < 100; ++k) {
      const double theta = 0.01 + (2 * kPi - 0.02) * k / 99.0;
      const double direct = std::norm(boundary_point(c, z, 0, theta));
      worst = std::max(worst, std::abs(phi_bdf2(z, theta) - direct) / std::max(1.0, direct));
    }
  }
  CHECK(worst < 1e-12);
  CHECK(std::isfinite(phi_bdf2(-3.0, 0.0)));
  CHECK(phi_bdf2(-3.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("interior critical angle is stationary") {
  const auto theta = bdf2_interior_critical_theta(-5.0);
  REQUIRE(theta.has_value());
  CHECK(*theta > 0.0);
  CHECK(*theta < kPi);
  const double eps = 1e-6;
  const double dphi = (phi_bdf2(-5.0, *theta + eps) - phi_bdf2(-5.0, *theta - eps)) / (2 * eps);
  CHECK(std::abs(dphi) < 1e-8);
}

TEST_CASE("disks of radius psi lie in the stability region") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Method method : {Method::bdf2, Method::bdf3}) {
    const auto c = imex_bdf_coefficients(method);
    for (double z : {-0.5, -1.0, -5.0, -50.0}) {
      const double radius = 0.999 * psi(method, ZValue::finite(z));
      for (int m : {0, 1, 3, 20}) {
        int failures = 0;
        for (int k = 0; k < 200; ++k) {
          const Complex mu = std::polar(radius * std::sqrt(unit(rng)), 2 * kPi * unit(rng));
          if (!char_equation_stable(c, ZValue::finite(z), mu, m)) ++failures;
          if (k % 20 == 0) CHECK(oracle::max_root_modulus(c, z, mu, m) < 1.0);
        }
        CHECK(failures == 0);
      }
    }
  }
}

TEST_CASE("pushing past the closest boundary point breaks stability") {
  for (Method method : {Method::bdf2, Method::bdf3}) {
    const auto c = imex_bdf_coefficients(method);
    for (double z : {-0.5, -1.0, -5.0, -50.0}) {
      const auto curve = gamma_curve(c, z, 0, 8193);
      const auto closest = std::min_element(curve.samples.begin(), curve.samples.end(),
                                            [](const auto& a, const auto& b) { return std::abs(a.mu) < std::abs(b.mu); });
      const Complex mu = 1.05 * closest->mu;
      bool any_unstable = false;
      for (int m : {0, 1, 3, 20}) any_unstable = any_unstable || !char_equation_stable(c, ZValue::finite(z), mu, m);
      CHECK(any_unstable);
    }
  }
}

TEST_CASE("boundary locus for z = -50 sits inside the one for z = -1") {
  const auto inner = gamma_curve(Method::bdf2, -50.0, 0, 2049);
  const auto outer = gamma_curve(Method::bdf2, -1.0, 0, 4097);
  std::vector<std::pair<double, double>> polar;  // (arg, modulus) of the outer curve
  for (const auto& s : outer.samples) polar.emplace_back(std::arg(s.mu), std::abs(s.mu));
  std::sort(polar.begin(), polar.end());
  auto outer_radius = [&](double a) {
    auto it = std::lower_bound(polar.begin(), polar.end(), std::make_pair(a, -1.0));
    if (it == polar.end()) return polar.back().second;
    if (it == polar.begin()) return it->second;
    const auto prev = std::prev(it);
    const double w = (a - prev->first) / (it->first - prev->first);
    return (1 - w) * prev->second + w * it->second;
  };
  for (const auto& s : inner.samples) CHECK(std::abs(s.mu) <= outer_radius(std::arg(s.mu)) + 1e-6);
}

TEST_CASE("polynomial helpers") {
  const std::vector<double> a{-2.0, 0.0, 1.0};  // x^2 - 2
  CHECK(evaluate(a, std::sqrt(2.0)) == doctest::Approx(0.0));
  const std::vector<Complex> ca{-2.0, 0.0, 1.0};
  auto roots = polynomial_roots(ca);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
  CHECK(roots[0].real() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(roots[1].real() == doctest::Approx(std::sqrt(2.0)));
  const std::vector<Complex> flat{1.0, 1e-16};
  CHECK(code_of([&] { (void)polynomial_roots(flat); }) == ErrorCode::degenerate_polynomial);
  const auto q = unit_circle_modulus_squared(std::vector<double>{0.5, -2.0, 1.5});
  for (double theta : {0.0, 0.7, 2.0, kPi}) {
    const Complex zeta = std::polar(1.0, theta);
    const double direct = std::norm(0.5 - 2.0 * zeta + 1.5 * zeta * zeta);
    CHECK(evaluate(q, std::cos(theta)) == doctest::Approx(direct).epsilon(1e-12));
  }
}
