#pragma once

#include <complex>
#include <span>
#include <vector>

namespace imexdde {

using Complex = std::complex<double>;

/// Coefficients are stored lowest degree first: c[0] + c[1] x + ... + c[n] x^n.
[[nodiscard]] Complex evaluate(std::span<const double> coeffs, Complex x) noexcept;
[[nodiscard]] Complex evaluate(std::span<const Complex> coeffs, Complex x) noexcept;
[[nodiscard]] double evaluate(std::span<const double> coeffs, double x) noexcept;

[[nodiscard]] std::vector<double> derivative(std::span<const double> coeffs);
[[nodiscard]] std::vector<double> multiply(std::span<const double> a, std::span<const double> b);
[[nodiscard]] std::vector<double> subtract(std::span<const double> a, std::span<const double> b);

/// All roots of the polynomial, from the eigenvalues of its companion matrix.
/// Throws ErrorCode::degenerate_polynomial when |leading coefficient| < 1e-14.
[[nodiscard]] std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// |a(e^{i theta})|^2 for real a, rewritten as a polynomial in x = cos(theta).
[[nodiscard]] std::vector<double> unit_circle_modulus_squared(std::span<const double> coeffs);

}  // namespace imexdde
