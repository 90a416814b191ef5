#pragma once

#include <string_view>
#include <vector>

namespace imexdde {

enum class Method { bdf2 = 2, bdf3 = 3 };

[[nodiscard]] std::string_view method_name(Method method) noexcept;
/// Parses "bdf2" / "bdf3"; throws ErrorCode::invalid_argument otherwise.
[[nodiscard]] Method parse_method(std::string_view name);

/// Coefficients of an s-step IMEX linear multistep method
///   sum_j alpha_j y_{n+j} = h (sum_j beta_j f_{n+j} + sum_{j<s} beta_star_j g_{n+j-m}),
/// with beta_star_j = beta_j + beta_s sigma_j and sigma the extrapolation weights.
struct ImexCoefficients {
  int steps = 0;  // s
  int order = 0;  // p
  std::vector<double> alpha;      // s+1 entries
  std::vector<double> beta;       // s+1 entries
  std::vector<double> sigma;      // s entries
  std::vector<double> beta_star;  // s entries
};

/// IMEX-BDF2 (order 2) or IMEX-BDF3 (order 3). Other orders throw ErrorCode::unsupported_order.
[[nodiscard]] ImexCoefficients imex_bdf_coefficients(int order);
[[nodiscard]] ImexCoefficients imex_bdf_coefficients(Method method);

/// Extrapolation weights sigma_0..sigma_{s-1} solving sum_j j^q sigma_j = s^q, q = 0..p-1.
/// Requires p == s (square Vandermonde system).
[[nodiscard]] std::vector<double> extrapolation_weights(int steps, int order);

}  // namespace imexdde
