#include "imexdde/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <string>

#include "imexdde/error.hpp"

namespace imexdde {

Complex evaluate(std::span<const double> c, Complex x) noexcept {
  Complex acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex evaluate(std::span<const Complex> c, Complex x) noexcept {
  Complex acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double evaluate(std::span<const double> c, double x) noexcept {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

std::vector<double> subtract(std::span<const double> a, std::span<const double> b) {
  std::vector<double> r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> c) {
  if (c.size() < 2) return {};
  const std::size_t n = c.size() - 1;
  const Complex lead = c[n];
  if (std::abs(lead) < 1e-14) {
    fail(ErrorCode::degenerate_polynomial,
         "leading coefficient " + std::to_string(std::abs(lead)) + " is below 1e-14");
  }
  if (n == 1) return {-c[0] / lead};

  // Frobenius companion matrix: ones on the subdiagonal, -c_k / c_n in the last column.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) fail(ErrorCode::degenerate_polynomial, "companion eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> unit_circle_modulus_squared(std::span<const double> a) {
  // |a(e^{it})|^2 = r_0 + 2 sum_{d>=1} r_d cos(d t), r_d = sum_k a_k a_{k+d};
  // cos(d t) = T_d(cos t) with Chebyshev recursion T_{d+1} = 2x T_d - T_{d-1}.
  const std::size_t n = a.size();
  std::vector<double> out(std::max<std::size_t>(n, 1), 0.0);
  std::vector<double> t_prev{1.0};
  std::vector<double> t_curr{0.0, 1.0};
  for (std::size_t d = 0; d < n; ++d) {
    double r = 0.0;
    for (std::size_t k = 0; k + d < n; ++k) r += a[k] * a[k + d];
    const double weight = d == 0 ? r : 2.0 * r;
    const std::vector<double>& t_d = d == 0 ? t_prev : t_curr;
    for (std::size_t i = 0; i < t_d.size(); ++i) out[i] += weight * t_d[i];
    if (d >= 1) {
      std::vector<double> next(t_curr.size() + 1, 0.0);
      for (std::size_t i = 0; i < t_curr.size(); ++i) next[i + 1] += 2.0 * t_curr[i];
      for (std::size_t i = 0; i < t_prev.size(); ++i) next[i] -= t_prev[i];
      t_prev = std::move(t_curr);
      t_curr = std::move(next);
    }
  }
  return out;
}

}  // namespace imexdde
