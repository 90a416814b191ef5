#include "imexdde/mol_problems.hpp"

#include <cmath>
#include <numbers>

#include "imexdde/error.hpp"

namespace imexdde {

MolGrid MolGrid::make(int n, double x0, double xn) {
  if (n < 3) fail(ErrorCode::invalid_argument, "grid needs n >= 3");
  if (!(xn > x0)) fail(ErrorCode::invalid_argument, "grid endpoints must satisfy x0 < xn");
  return MolGrid{n, x0, xn, (xn - x0) / n};
}

Matrix second_difference(int interior, double dx) {
  const Eigen::Index N = interior;
  Matrix T = Matrix::Zero(N, N);
  const double w = 1.0 / (dx * dx);
  for (Eigen::Index i = 0; i < N; ++i) {
    T(i, i) = -2.0 * w;
    if (i > 0) T(i, i - 1) = w;
    if (i + 1 < N) T(i, i + 1) = w;
  }
  return T;
}

std::vector<double> toeplitz_eigenvalues(double alpha, double beta, double gamma, int N) {
  if (beta * gamma < 0.0) fail(ErrorCode::domain, "toeplitz_eigenvalues needs beta * gamma >= 0");
  if (N < 1) fail(ErrorCode::invalid_argument, "toeplitz_eigenvalues needs N >= 1");
  const double root = std::sqrt(beta * gamma);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int r = 1; r <= N; ++r) out.push_back(alpha - 2.0 * root * std::cos(r * std::numbers::pi / (N + 1)));
  return out;
}

namespace {

DelayProblem linear_problem(std::string name, Matrix A, Matrix B, double tau, TimeMap forcing, TimeMap solution) {
  DelayProblem p;
  p.name = std::move(name);
  p.dimension = static_cast<std::size_t>(A.rows());
  p.tau = tau;
  p.A = std::move(A);
  p.delayed_map = [B](double, const Vector& v) -> Vector { return B * v; };
  p.delayed_matrix = std::move(B);
  p.forcing = std::move(forcing);
  p.history = solution;
  p.exact = std::move(solution);
  return p;
}

}  // namespace

DelayProblem example1() {
  Matrix A(4, 4);
  A << 39, -27, -9, 5,  //
      9, 3, -9, 5,      //
      22, -27, 8, 5,    //
      9, 0, -9, 8;
  Matrix B(4, 4);
  B << 8, -2, -4, 5,  //
      4, 2, -4, 5,    //
      -3, -2, 7, 5,   //
      4, 0, -4, 7;
  const double e = std::numbers::e;
  TimeMap forcing = [e](double t) -> Vector {
    const double et = std::exp(t);
    const double emt = std::exp(-t);
    Vector f(4);
    f << emt * (-et * (2 * t * (5 * t + 8) + 2 * std::sin(1 - t) + 27 * std::sin(t) - 13) - 8 * e + 38),
        emt * (et * (-2 * t * (5 * t + 8) + 2 * std::sin(1 - t) + 3 * std::sin(t) + std::cos(t) + 13) - 4 * e + 9),
        (22 + 3 * e) * emt + 2 * t * (t + 16) - 2 * std::sin(1 - t) - 27 * std::sin(t) - 9,
        emt * (et * (17 - 5 * t * (2 * t + 3)) - 4 * e + 9);
    return f;
  };
  TimeMap solution = [](double t) -> Vector {
    Vector y(4);
    y << std::exp(-t), std::sin(t), 2 * t * t, 1 + t;
    return y;
  };
  return linear_problem("example1", A, B, 1.0, std::move(forcing), std::move(solution));
}

DelayProblem example2() {
  Matrix A(3, 3);
  A << 20, -4, 0,  //
      -4, 20, 0,   //
      0, 0, 10;
  Matrix B(3, 3);
  B << -2, 1, 0,  //
      -1, -2, 0,  //
      0, 1, 6;
  TimeMap forcing = [](double t) -> Vector {
    const double lag = std::exp(-0.1 * (t - 1));
    const double decay = std::exp(-0.1 * t);
    Vector f(3);
    f << -lag - 4 * decay - std::sin(t) + 2 * std::cos(1 - t) + 20 * std::cos(t),
        2 * lag + 19.9 * decay + std::cos(1 - t) - 4 * std::cos(t),  //
        1 - 6 * t - lag + 10 * (t + 1);
    return f;
  };
  TimeMap solution = [](double t) -> Vector {
    Vector y(3);
    y << std::cos(t), std::exp(-0.1 * t), 1 + t;
    return y;
  };
  return linear_problem("example2", A, B, 1.0, std::move(forcing), std::move(solution));
}

DelayProblem linear_pdde_mol(double a1, double a2, double l, int n, double tau) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) fail(ErrorCode::definiteness, "diffusion coefficients a1, a2 must be positive");
  if (n < 4) fail(ErrorCode::invalid_argument, "linear PDDE needs n >= 4");
  if (!(tau > 0.0)) fail(ErrorCode::invalid_argument, "delay tau must be positive");
  const MolGrid grid = MolGrid::make(n, -1.0, 1.0);
  const int N = n - 1;
  const Eigen::Index d = 2 * N;

  const Matrix T = second_difference(N, grid.dx);
  Matrix A = Matrix::Zero(d, d);
  A.topLeftCorner(N, N) = -a1 * T;
  A.bottomRightCorner(N, N) = -a2 * T;

  const double scale = std::exp(l * std::numbers::pi / 2.0);
  const double c = l + std::numbers::pi * std::numbers::pi / 4.0;
  Matrix B = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < N; ++j) {
    B(j, j) = -scale;
    B(j, N + j) = scale * c;
    B(N + j, j) = -scale * c;
    B(N + j, N + j) = -scale;
  }

  Vector profile(N);
  for (int j = 0; j < N; ++j) profile(j) = std::cos(std::numbers::pi * grid.node(j + 1) / 2.0);
  TimeMap solution = [profile, l, N](double t) -> Vector {
    Vector z(2 * N);
    z.head(N) = std::exp(l * t) * std::sin(t) * profile;
    z.tail(N) = std::exp(l * t) * std::cos(t) * profile;
    return z;
  };

  DelayProblem p = linear_problem("pdde_linear", std::move(A), std::move(B), tau, {}, solution);
  // The closed form solves the continuous problem only when the delay is pi/2.
  if (std::abs(tau - std::numbers::pi / 2.0) > 1e-12) p.exact = {};
  p.parameters = {{"a1", a1}, {"a2", a2}, {"l", l}, {"n", static_cast<double>(n)}, {"tau", tau}};
  return p;
}

Matrix burgers_delayed_coefficients(const Vector& u, double dx) {
  const Eigen::Index N = u.size();
  Matrix B = Matrix::Zero(N, N);
  const double w = 1.0 / (2.0 * dx);
  for (Eigen::Index j = 0; j < N; ++j) {
    if (j > 0) B(j, j - 1) = w * u(j);
    if (j + 1 < N) B(j, j + 1) = -w * u(j);
  }
  return B;
}

DelayProblem burgers_mol(double epsilon, int n, double tau, double forcing_amp) {
  if (!(epsilon > 0.0)) fail(ErrorCode::definiteness, "viscosity epsilon must be positive");
  if (n < 4) fail(ErrorCode::invalid_argument, "Burgers problem needs n >= 4");
  if (!(tau > 0.0)) fail(ErrorCode::invalid_argument, "delay tau must be positive");
  const MolGrid grid = MolGrid::make(n, 0.0, 1.0);
  const int N = n - 1;
  const double dx = grid.dx;

  Vector x(N);
  for (int j = 0; j < N; ++j) x(j) = grid.node(j + 1);

  DelayProblem p;
  p.name = "burgers";
  p.dimension = static_cast<std::size_t>(N);
  p.tau = tau;
  p.A = -epsilon * second_difference(N, dx);
  // -u_j (u_{j+1} - u_{j-1}) / (2 dx) with u_0 = u_n = 0.
  p.delayed_map = [dx, N](double, const Vector& u) -> Vector {
    Vector g(N);
    for (int j = 0; j < N; ++j) {
      const double left = j > 0 ? u(j - 1) : 0.0;
      const double right = j + 1 < N ? u(j + 1) : 0.0;
      g(j) = -u(j) * (right - left) / (2.0 * dx);
    }
    return g;
  };
  p.forcing = [x, forcing_amp](double t) -> Vector {
    return (forcing_amp * x.array() * (1.0 - x.array()) * (1.0 + x.array() * (t * x.array()).sin())).matrix();
  };
  const Vector initial = (std::numbers::pi * x.array()).sin().matrix();
  p.history = [initial](double) -> Vector { return initial; };
  p.frozen_delayed_matrix = burgers_delayed_coefficients(initial, dx);
  p.parameters = {{"epsilon", epsilon}, {"n", static_cast<double>(n)}, {"tau", tau}, {"amp", forcing_amp}};
  return p;
}

std::vector<std::string> problem_names() { return {"example1", "example2", "pdde_linear", "burgers"}; }

ProblemParameters problem_defaults(const std::string& name) {
  if (name == "example1" || name == "example2") return {};
  if (name == "pdde_linear") return {{"a1", 1.0}, {"a2", 1.0}, {"l", -0.75}, {"n", 100.0}, {"tau", 1.0}};
  if (name == "burgers") return {{"epsilon", 1.0}, {"n", 100.0}, {"tau", 1.0}, {"amp", 10.0}};
  fail(ErrorCode::unknown_problem, "unknown problem '" + name + "'");
}

namespace {

int as_int(double v, const char* key) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-12 || r < 0) {
    fail(ErrorCode::invalid_argument, std::string("parameter '") + key + "' must be a non-negative integer");
  }
  return static_cast<int>(r);
}

}  // namespace

DelayProblem make_problem(const std::string& name, const ProblemParameters& overrides) {
  ProblemParameters params = problem_defaults(name);
  for (const auto& [key, value] : overrides) {
    if (!params.contains(key)) fail(ErrorCode::invalid_argument, "problem '" + name + "' has no parameter '" + key + "'");
    params[key] = value;
  }
  DelayProblem p;
  if (name == "example1") {
    p = example1();
  } else if (name == "example2") {
    p = example2();
  } else if (name == "pdde_linear") {
    p = linear_pdde_mol(params["a1"], params["a2"], params["l"], as_int(params["n"], "n"), params["tau"]);
  } else {
    p = burgers_mol(params["epsilon"], as_int(params["n"], "n"), params["tau"], params["amp"]);
  }
  validate(p);
  return p;
}

}  // namespace imexdde
