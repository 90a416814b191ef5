#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "imexdde/error.hpp"
#include "imexdde/integrator.hpp"
#include "imexdde/matrix_stability.hpp"
#include "imexdde/mol_problems.hpp"

using namespace imexdde;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an imexdde::Error");
  return ErrorCode::io;
}

// y'(t) + A y(t) - B y(t - tau) - f(t) for an exact solution with known derivative.
double residual(const DelayProblem& p, const TimeMap& dy, double t) {
  const Vector r = dy(t) + p.A * p.exact(t) - *p.delayed_matrix * p.exact(t - p.tau) - p.forcing_at(t);
  return r.lpNorm<Eigen::Infinity>();
}

double max_abs(const Trajectory& traj, double t_from, double t_to) {
  double out = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.times[i] >= t_from - 1e-9 && traj.times[i] <= t_to + 1e-9) out = std::max(out, traj.states[i].lpNorm<Eigen::Infinity>());
  }
  return out;
}

}  // namespace

TEST_CASE("first example: commuting pair and manufactured forcing") {
  const auto p = example1();
  CHECK(p.dimension == 4);
  CHECK(p.tau == 1.0);
  CHECK((p.A * *p.delayed_matrix - *p.delayed_matrix * p.A).norm() == 0.0);
  const Vector phi0 = p.history(0.0);
  CHECK(phi0(0) == 1.0);
  CHECK(phi0(1) == 0.0);
  CHECK(phi0(2) == 0.0);
  CHECK(phi0(3) == 1.0);
  TimeMap dy = [](double t) -> Vector {
    Vector v(4);
    v << -std::exp(-t), std::cos(t), 4 * t, 1.0;
    return v;
  };
  for (double t : {0.0, 1.7, 10.0}) CHECK(residual(p, dy, t) <= 1e-10 * std::max(1.0, p.exact(t).norm()));
}

TEST_CASE("second example: symmetric A and manufactured forcing") {
  const auto p = example2();
  CHECK((p.A - p.A.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.A);
  CHECK(es.eigenvalues()(0) == doctest::Approx(10.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(16.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(24.0));
  CHECK((p.A * *p.delayed_matrix - *p.delayed_matrix * p.A).norm() > 1.0);
  TimeMap dy = [](double t) -> Vector {
    Vector v(3);
    v << -std::sin(t), -0.1 * std::exp(-0.1 * t), 1.0;
    return v;
  };
  for (double t : {0.0, 2.3, 50.0}) CHECK(residual(p, dy, t) <= 1e-10 * std::max(1.0, p.exact(t).norm()));
}

TEST_CASE("Toeplitz eigenvalue formula") {
  const auto one = toeplitz_eigenvalues(-2.0, 1.0, 1.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(-2.0));
  auto two = toeplitz_eigenvalues(-2.0, 1.0, 1.0, 2);
  std::sort(two.begin(), two.end());
  CHECK(two[0] == doctest::Approx(-3.0));
  CHECK(two[1] == doctest::Approx(-1.0));
  for (int N : {3, 10, 99, 500}) {
    const double dx = 2.0 / (N + 1);
    const auto lam = toeplitz_eigenvalues(-2.0 / (dx * dx), 1.0 / (dx * dx), 1.0 / (dx * dx), N);
    CHECK(*std::max_element(lam.begin(), lam.end()) < 0.0);
  }
  CHECK(code_of([] { (void)toeplitz_eigenvalues(-2.0, 1.0, -1.0, 4); }) == ErrorCode::domain);
}

TEST_CASE("second difference is exact on quadratics") {
  const auto grid = MolGrid::make(40, -1.0, 1.0);
  CHECK(grid.node_count() == 41);
  CHECK(grid.dx == doctest::Approx(0.05));
  const int N = grid.n - 1;
  Vector x2(N);
  for (int j = 0; j < N; ++j) x2(j) = std::pow(grid.node(j + 1), 2);
  const Vector d2 = second_difference(N, grid.dx) * x2;
  // Rows 0 and N-1 see the dropped boundary values, so only the rest are checked.
  for (int j = 1; j + 1 < N; ++j) CHECK(std::abs(d2(j) - 2.0) <= 1e-8);
  CHECK(code_of([] { (void)MolGrid::make(2, 0.0, 1.0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("linear PDDE assembly") {
  const auto p = linear_pdde_mol(1.0, 2.0, -0.75, 40, 1.0);
  CHECK(p.dimension == 78);
  CHECK((p.A - p.A.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.A);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  const double dx = 2.0 / 40;
  const auto lam = toeplitz_eigenvalues(-2.0 / (dx * dx), 1.0 / (dx * dx), 1.0 / (dx * dx), 39);
  const double most_negative = *std::min_element(lam.begin(), lam.end());
  CHECK(std::abs(es.eigenvalues().maxCoeff() - (-2.0 * most_negative)) <= 1e-8 * es.eigenvalues().maxCoeff());
  CHECK_FALSE(p.has_exact());
  CHECK(linear_pdde_mol(1.0, 1.0, -0.75, 40, std::numbers::pi / 2).has_exact());
  CHECK(code_of([] { (void)linear_pdde_mol(0.0, 1.0, -0.75, 40, 1.0); }) == ErrorCode::definiteness);
  CHECK(code_of([] { (void)linear_pdde_mol(1.0, -1.0, -0.75, 40, 1.0); }) == ErrorCode::definiteness);
}

TEST_CASE("linear PDDE spatial error is second order") {
  const double tau = std::numbers::pi / 2;
  std::vector<double> errs;
  for (int n : {8, 16, 32}) {
    const auto p = linear_pdde_mol(1.0, 1.0, -0.75, n, tau);
    IntegrateOptions opt;
    opt.h = tau / 400;
    opt.t_end = 2 * tau;
    errs.push_back(final_error(integrate(p, imex_bdf_coefficients(3), opt), p).maxCoeff());
  }
  for (std::size_t k = 1; k < errs.size(); ++k) {
    const double ratio = errs[k - 1] / errs[k];
    CAPTURE(ratio);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("linear PDDE decays for negative l and grows for positive l") {
  for (int order : {2, 3}) {
    for (double h : {0.1, 0.05}) {
      CAPTURE(order);
      CAPTURE(h);
      IntegrateOptions opt;
      opt.h = h;
      opt.t_end = 60.0;
      opt.store_every = 1;
      const auto decay = integrate(make_problem("pdde_linear", {{"l", -0.75}}), imex_bdf_coefficients(order), opt);
      CHECK(max_abs(decay, 59.0, 60.0) < max_abs(decay, 4.0, 5.0));
      const auto growth = integrate(make_problem("pdde_linear", {{"l", 0.75}}), imex_bdf_coefficients(order), opt);
      CHECK(growth.final_state().lpNorm<Eigen::Infinity>() > 1e3);
    }
  }
}

TEST_CASE("Burgers delayed convection") {
  const auto p = burgers_mol(1.0, 20, 1.0);
  CHECK(p.dimension == 19);
  CHECK((p.A - p.A.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.A);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  const double dx = 1.0 / 20;
  const double c = 0.7;
  const Vector g = p.delayed_map(0.0, Vector::Constant(19, c));
  CHECK(g(0) == doctest::Approx(-c * c / (2 * dx)));
  CHECK(g(18) == doctest::Approx(c * c / (2 * dx)));
  for (int j = 1; j < 18; ++j) CHECK(g(j) == 0.0);

  // g(u) = B(u) u with the zero-diagonal coefficient matrix.
  Vector u(19);
  for (int j = 0; j < 19; ++j) u(j) = std::sin(0.3 * j) + 0.1 * j;
  const Matrix Bu = burgers_delayed_coefficients(u, dx);
  CHECK((Bu * u - p.delayed_map(0.0, u)).norm() < 1e-12);
  CHECK(Bu.diagonal().norm() == 0.0);
  REQUIRE(p.frozen_delayed_matrix);
  CHECK((stability_delayed_matrix(p) - burgers_delayed_coefficients(p.history(0.0), dx)).norm() == 0.0);
  CHECK(code_of([] { (void)burgers_mol(0.0, 20, 1.0); }) == ErrorCode::definiteness);
}

TEST_CASE("Burgers numerical radius") {
  const auto p = make_problem("burgers");
  const auto f = fov(fp_matrix(p.A, stability_delayed_matrix(p), 0.0), 512);
  CHECK(std::abs(f.numerical_radius - 0.196) <= 2e-3);
}

TEST_CASE("Burgers stays bounded with h = 0.1") {
  const auto p = make_problem("burgers");
  for (int order : {2, 3}) {
    IntegrateOptions opt;
    opt.h = 0.1;
    opt.t_end = 20.0;
    const auto traj = integrate(p, imex_bdf_coefficients(order), opt);
    CHECK_FALSE(traj.blew_up);
    CHECK(max_abs(traj, 0.0, 20.0) < 10.0);
  }
}

TEST_CASE("problem registry") {
  const auto names = problem_names();
  CHECK(names.size() == 4);
  for (const auto& name : names) CHECK(make_problem(name).name == name);
  CHECK(make_problem("pdde_linear", {{"n", 20}}).dimension == 38);
  CHECK(problem_defaults("burgers").at("amp") == 10.0);
  CHECK(code_of([] { (void)make_problem("nope"); }) == ErrorCode::unknown_problem);
  CHECK(code_of([] { (void)make_problem("example1", {{"n", 3}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { (void)make_problem("burgers", {{"n", 10.5}}); }) == ErrorCode::invalid_argument);
}
