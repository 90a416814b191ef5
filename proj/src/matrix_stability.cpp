#include "imexdde/matrix_stability.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "imexdde/error.hpp"
#include "imexdde/scalar_stability.hpp"

namespace imexdde {

namespace {

void require_square(Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (rows != cols || rows == 0) {
    fail(ErrorCode::shape, std::string(what) + ": expected a non-empty square matrix, got " + std::to_string(rows) +
                               "x" + std::to_string(cols));
  }
}

// Eigendecomposition of a Hermitian positive definite A, rejecting anything else.
Eigen::SelfAdjointEigenSolver<Matrix> spd_eigen(const Matrix& A) {
  require_square(A.rows(), A.cols(), "positive definite matrix");
  const double scale = std::max(A.norm(), 1e-300);
  if ((A - A.transpose()).norm() > 1e-10 * scale) fail(ErrorCode::definiteness, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
  if (eig.info() != Eigen::Success) fail(ErrorCode::definiteness, "Hermitian eigensolver failed");
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    fail(ErrorCode::definiteness,
         "matrix is not positive definite (min eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }
  return eig;
}

double unconditional_radius(Method method) { return method == Method::bdf2 ? 1.0 / 3.0 : 1.0 / 7.0; }

}  // namespace

FovEstimate fov(const ComplexMatrix& X, int n_angles) {
  require_square(X.rows(), X.cols(), "fov");
  if (n_angles < 32) fail(ErrorCode::invalid_argument, "fov needs at least 32 angles");
  FovEstimate out;
  out.n_angles = n_angles;
  out.thetas.resize(static_cast<std::size_t>(n_angles));
  out.boundary.resize(static_cast<std::size_t>(n_angles));
  std::vector<bool> done(static_cast<std::size_t>(n_angles), false);

  const ComplexMatrix Xh = X.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig;
  const Eigen::Index last = X.rows() - 1;
  auto point = [&](const Eigen::VectorXcd& v) { return v.dot(X * v); };  // dot conjugates v

  for (int k = 0; k < n_angles; ++k) {
    if (done[static_cast<std::size_t>(k)]) continue;
    const double theta = 2.0 * std::numbers::pi * k / n_angles;
    const Complex w = std::polar(1.0, theta);
    const ComplexMatrix H = 0.5 * (w * X + std::conj(w) * Xh);
    eig.compute(H, Eigen::ComputeEigenvectors);
    out.thetas[static_cast<std::size_t>(k)] = theta;
    out.boundary[static_cast<std::size_t>(k)] = point(eig.eigenvectors().col(last));
    done[static_cast<std::size_t>(k)] = true;
    // H(theta + pi) = -H(theta): its top eigenvector is the bottom one of H(theta).
    if (n_angles % 2 == 0) {
      const auto opposite = static_cast<std::size_t>(k + n_angles / 2);
      if (opposite < done.size() && !done[opposite]) {
        out.thetas[opposite] = 2.0 * std::numbers::pi * static_cast<double>(opposite) / n_angles;
        out.boundary[opposite] = point(eig.eigenvectors().col(0));
        done[opposite] = true;
      }
    }
  }
  for (const Complex& b : out.boundary) out.numerical_radius = std::max(out.numerical_radius, std::abs(b));
  return out;
}

FovEstimate fov(const Matrix& X, int n_angles) { return fov(ComplexMatrix(X.cast<Complex>()), n_angles); }

Matrix fp_matrix(const Matrix& A, const Matrix& B, double p) {
  const auto eig = spd_eigen(A);
  if (B.rows() != A.rows() || B.cols() != A.cols()) fail(ErrorCode::shape, "fp_matrix: A and B differ in shape");
  const Matrix& V = eig.eigenvectors();
  const Vector& lambda = eig.eigenvalues();
  auto power = [&](double e) -> Matrix {
    if (e == 0.0) return Matrix::Identity(A.rows(), A.cols());
    return V * lambda.array().pow(e).matrix().asDiagonal() * V.transpose();
  };
  return power(p / 2.0 - 1.0) * B * power(-p / 2.0);
}

bool commutes(const Matrix& A, const Matrix& B, double tol) {
  require_square(A.rows(), A.cols(), "commutes");
  if (B.rows() != A.rows() || B.cols() != A.cols()) fail(ErrorCode::shape, "commutes: A and B differ in shape");
  return (A * B - B * A).norm() <= tol * A.norm() * B.norm();
}

std::vector<PairedEigenvalue> paired_generalized_eigenvalues(const Matrix& A, const Matrix& B) {
  require_square(A.rows(), A.cols(), "paired_generalized_eigenvalues");
  if (B.rows() != A.rows() || B.cols() != A.cols()) fail(ErrorCode::shape, "A and B differ in shape");
  Eigen::EigenSolver<Matrix> eig(A);
  if (eig.info() != Eigen::Success) fail(ErrorCode::not_simultaneously_diagonalizable, "eigensolver failed on A");

  const Eigen::VectorXcd lambdas = eig.eigenvalues();
  const Eigen::MatrixXcd vectors = eig.eigenvectors();
  const Eigen::Index d = A.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::abs(lambdas(i).imag()) > 1e-10 * std::max(1.0, std::abs(lambdas(i)))) {
      fail(ErrorCode::definiteness, "A has a non-real eigenvalue");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(lambdas(i).real() - lambdas(j).real()) <= 1e-10 * std::max(1.0, std::abs(lambdas(i)))) {
        fail(ErrorCode::degenerate_pairing, "A has a repeated eigenvalue " + std::to_string(lambdas(i).real()));
      }
    }
  }

  const double b_norm = B.norm();
  const ComplexMatrix Bc = B.cast<Complex>();
  std::vector<PairedEigenvalue> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::VectorXcd v = vectors.col(i);
    const Eigen::VectorXcd Bv = Bc * v;
    const Complex gamma = v.dot(Bv) / v.squaredNorm();
    if ((Bv - gamma * v).norm() > 1e-8 * b_norm * v.norm()) {
      fail(ErrorCode::not_simultaneously_diagonalizable,
           "eigenvector of A for lambda = " + std::to_string(lambdas(i).real()) + " is not an eigenvector of B");
    }
    const double lambda = lambdas(i).real();
    out.push_back({lambda, gamma, gamma / lambda});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  return out;
}

std::string_view regime_name(Regime regime) noexcept {
  switch (regime) {
    case Regime::unconditional:
      return "unconditional";
    case Regime::conditional:
      return "conditional";
    case Regime::no_guarantee:
      return "no_guarantee";
  }
  return "?";
}

std::string_view rule_name(BoundRule rule) noexcept {
  switch (rule) {
    case BoundRule::prop41:
      return "prop41";
    case BoundRule::thm43:
      return "thm43";
    case BoundRule::thm51:
      return "thm51";
  }
  return "?";
}

BoundRule parse_rule(std::string_view name) {
  if (name == "prop41") return BoundRule::prop41;
  if (name == "thm43") return BoundRule::thm43;
  if (name == "thm51" || name == "fov") return BoundRule::thm51;
  fail(ErrorCode::invalid_argument, "unknown step-bound rule '" + std::string(name) + "'");
}

StepSizeReport step_bound_simdiag(const Matrix& A, const Matrix& B, Method method, BoundRule rule) {
  if (rule == BoundRule::thm51) fail(ErrorCode::invalid_argument, "simultaneous-diagonalization bound needs prop41 or thm43");
  const auto pairs = paired_generalized_eigenvalues(A, B);
  StepSizeReport report;
  report.method = method;
  report.rule = rule;
  for (const auto& p : pairs) {
    if (!(p.lambda > 0.0)) fail(ErrorCode::definiteness, "eigenvalue " + std::to_string(p.lambda) + " of A is not positive");
    report.lambda_d = std::max(report.lambda_d, p.lambda);
    report.r_used = std::max(report.r_used, std::abs(p.mu));
  }
  const double floor = unconditional_radius(method);
  if (report.r_used <= floor) {
    report.regime = Regime::unconditional;
    return report;
  }
  if (report.r_used >= 1.0) {
    report.regime = Regime::no_guarantee;
    return report;
  }
  report.regime = Regime::conditional;
  double h = std::numeric_limits<double>::infinity();
  for (const auto& p : pairs) {
    const double r = std::abs(p.mu);
    if (r <= floor) continue;  // this mode is stable for every h
    const double divisor = rule == BoundRule::prop41 ? p.lambda : report.lambda_d;
    h = std::min(h, std::abs(chi(method, r)) / divisor);
  }
  report.h_star = h;
  return report;
}

StepSizeReport step_bound_fov(const Matrix& A, const Matrix& B, Method method, double p, int n_angles) {
  const auto eig = spd_eigen(A);
  StepSizeReport report;
  report.method = method;
  report.rule = BoundRule::thm51;
  report.lambda_d = eig.eigenvalues().maxCoeff();
  report.r_used = fov(fp_matrix(A, B, p), n_angles).numerical_radius;
  if (report.r_used <= unconditional_radius(method)) {
    report.regime = Regime::unconditional;
  } else if (report.r_used <= 1.0) {
    // chi(1) is the normal-matrix boundary value.
    report.regime = Regime::conditional;
    report.h_star = std::abs(chi(method, report.r_used)) / report.lambda_d;
  } else {
    report.regime = Regime::no_guarantee;
  }
  return report;
}

AsymptoticCheck asymptotic_stability_check(const Matrix& L, const Matrix& G, int n_grid, double y_max) {
  require_square(L.rows(), L.cols(), "asymptotic_stability_check");
  if (G.rows() != L.rows() || G.cols() != L.cols()) fail(ErrorCode::shape, "L and G differ in shape");
  if (n_grid < 2 || !(y_max > 0.0)) fail(ErrorCode::invalid_argument, "need n_grid >= 2 and y_max > 0");

  AsymptoticCheck out;
  AsymptoticDiagnostics& diag = out.diagnostics;
  const Eigen::Index d = L.rows();

  Eigen::EigenSolver<Matrix> eig_l(L, false);
  diag.max_real_eigenvalue = eig_l.eigenvalues().real().maxCoeff();
  diag.eigenvalues_negative = diag.max_real_eigenvalue < 0.0;

  const ComplexMatrix Lc = L.cast<Complex>();
  const ComplexMatrix Gc = G.cast<Complex>();
  Eigen::ComplexEigenSolver<ComplexMatrix> ceig;
  for (int k = 0; k < n_grid; ++k) {
    const double y = -y_max + 2.0 * y_max * k / (n_grid - 1);
    if (y == 0.0) continue;
    const ComplexMatrix M = Complex{0.0, y} * ComplexMatrix::Identity(d, d) - Lc;
    Eigen::PartialPivLU<ComplexMatrix> lu(M);
    if (!(lu.rcond() > 1e-14)) {
      ++diag.skipped_samples;
      continue;
    }
    ceig.compute(lu.solve(Gc), false);
    const double radius = ceig.eigenvalues().cwiseAbs().maxCoeff();
    if (radius > diag.max_resolvent_radius) {
      diag.max_resolvent_radius = radius;
      diag.worst_y = y;
    }
  }
  diag.resolvent_contractive = diag.max_resolvent_radius < 1.0;

  Eigen::PartialPivLU<Matrix> lu_l(L);
  if (lu_l.rcond() > 1e-14) {
    Eigen::EigenSolver<Matrix> eig_lg(lu_l.solve(G), false);
    diag.distance_to_minus_one = (eig_lg.eigenvalues().array() + 1.0).abs().minCoeff();
    diag.minus_one_excluded = diag.distance_to_minus_one > 1e-8;
  }
  out.stable = diag.eigenvalues_negative && diag.resolvent_contractive && diag.minus_one_excluded;
  return out;
}

}  // namespace imexdde
