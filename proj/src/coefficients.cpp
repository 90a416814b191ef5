#include "imexdde/coefficients.hpp"

#include <string>

#include "imexdde/error.hpp"

namespace imexdde {

std::string_view method_name(Method method) noexcept {
  return method == Method::bdf2 ? "bdf2" : "bdf3";
}

Method parse_method(std::string_view name) {
  if (name == "bdf2") return Method::bdf2;
  if (name == "bdf3") return Method::bdf3;
  fail(ErrorCode::invalid_argument, "unknown method '" + std::string(name) + "' (expected bdf2 or bdf3)");
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<double> extrapolation_weights(int steps, int order) {
  if (steps < 1 || order != steps) {
    fail(ErrorCode::unsupported_order, "extrapolation weights need order == steps >= 1");
  }
  // Lagrange weights for extrapolating nodes 0..s-1 to the point s; this is
  // the unique solution of the Vandermonde moment system.
  std::vector<double> sigma(static_cast<std::size_t>(steps));
  for (int j = 0; j < steps; ++j) {
    double num = 1.0;
    double den = 1.0;
    for (int k = 0; k < steps; ++k) {
      if (k == j) continue;
      num *= static_cast<double>(steps - k);
      den *= static_cast<double>(j - k);
    }
    sigma[static_cast<std::size_t>(j)] = num / den;
  }
  return sigma;
}

ImexCoefficients imex_bdf_coefficients(int order) {
  if (order != 2 && order != 3) {
    fail(ErrorCode::unsupported_order,
         "unsupported IMEX-BDF order " + std::to_string(order) + " (supported: 2, 3)");
  }
  const int s = order;
  ImexCoefficients c;
  c.steps = s;
  c.order = order;
  c.alpha.assign(static_cast<std::size_t>(s + 1), 0.0);
  c.beta.assign(static_cast<std::size_t>(s + 1), 0.0);
  c.beta[static_cast<std::size_t>(s)] = 1.0;

  // sum_{j=1}^{s} (1/j) nabla^j y_{n+1} = h f_{n+1}; y_{n+1-i} maps to alpha_{s-i}.
  for (int i = 0; i <= s; ++i) {
    double a = 0.0;
    for (int j = (i == 0 ? 1 : i); j <= s; ++j) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      a += sign * binomial(j, i) / j;
    }
    c.alpha[static_cast<std::size_t>(s - i)] = a;
  }

  c.sigma = extrapolation_weights(s, order);
  c.beta_star.resize(static_cast<std::size_t>(s));
  const double beta_s = c.beta[static_cast<std::size_t>(s)];
  for (std::size_t j = 0; j < static_cast<std::size_t>(s); ++j) {
    c.beta_star[j] = c.beta[j] + beta_s * c.sigma[j];
  }
  return c;
}

ImexCoefficients imex_bdf_coefficients(Method method) { return imex_bdf_coefficients(static_cast<int>(method)); }

}  // namespace imexdde
