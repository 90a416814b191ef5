#include "imexdde/problem.hpp"

#include <cmath>
#include <random>

#include "imexdde/error.hpp"

namespace imexdde {

Vector DelayProblem::forcing_at(double t) const {
  if (!forcing) return Vector::Zero(static_cast<Eigen::Index>(dimension));
  return forcing(t);
}

namespace {

void check_length(const Vector& v, std::size_t d, const char* what) {
  if (static_cast<std::size_t>(v.size()) != d) {
    fail(ErrorCode::shape, std::string(what) + " returned a vector of length " + std::to_string(v.size()) +
                               ", expected " + std::to_string(d));
  }
}

}  // namespace

void validate(const DelayProblem& p, std::uint64_t seed) {
  if (!(p.tau > 0.0) || !std::isfinite(p.tau)) fail(ErrorCode::invalid_argument, "delay tau must be positive");
  const auto d = p.dimension;
  if (d == 0) fail(ErrorCode::shape, "problem dimension must be positive");
  if (static_cast<std::size_t>(p.A.rows()) != d || static_cast<std::size_t>(p.A.cols()) != d) {
    fail(ErrorCode::shape, "implicit matrix A must be d x d");
  }
  if (!p.delayed_map || !p.history) fail(ErrorCode::invalid_argument, "delayed_map and history are required");

  check_length(p.history(p.t0), d, "history");
  check_length(p.history(p.t0 - p.tau), d, "history");
  check_length(p.forcing_at(p.t0), d, "forcing");
  if (p.has_exact()) check_length(p.exact(p.t0), d, "exact");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int sample = 0; sample < 4; ++sample) {
    Vector v(static_cast<Eigen::Index>(d));
    for (auto& x : v) x = unif(rng);
    const double t = p.t0 + 3.0 * unif(rng);
    const Vector g = p.delayed_map(t, v);
    check_length(g, d, "delayed_map");
    if (p.delayed_matrix) {
      const Vector bv = *p.delayed_matrix * v;
      const double scale = 1.0 + bv.lpNorm<Eigen::Infinity>();
      if ((g - bv).lpNorm<Eigen::Infinity>() > 1e-12 * scale) {
        fail(ErrorCode::invalid_argument, "delayed_map disagrees with delayed_matrix");
      }
    }
  }
}

const Matrix& stability_delayed_matrix(const DelayProblem& p) {
  if (p.delayed_matrix) return *p.delayed_matrix;
  if (p.frozen_delayed_matrix) return *p.frozen_delayed_matrix;
  fail(ErrorCode::invalid_argument, "problem '" + p.name + "' has no delayed matrix for stability analysis");
}

DelayProblem manufactured_linear_problem(std::string name, Matrix A, Matrix B, double tau, TimeMap solution,
                                         TimeMap derivative) {
  DelayProblem p;
  p.name = std::move(name);
  p.dimension = static_cast<std::size_t>(A.rows());
  p.tau = tau;
  p.A = A;
  p.delayed_matrix = B;
  p.delayed_map = [B](double, const Vector& v) -> Vector { return B * v; };
  p.forcing = [A, B, tau, solution, derivative](double t) -> Vector {
    return derivative(t) + A * solution(t) - B * solution(t - tau);
  };
  p.history = solution;
  p.exact = solution;
  return p;
}

}  // namespace imexdde
