#include "imexdde/imexdde.h"

#include <exception>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "imexdde/csv.hpp"
#include "imexdde/error.hpp"
#include "imexdde/integrator.hpp"
#include "imexdde/matrix_stability.hpp"
#include "imexdde/mol_problems.hpp"
#include "imexdde/scalar_stability.hpp"
#include "imexdde/version.hpp"

struct imexdde_problem {
  imexdde::DelayProblem problem;
  std::vector<std::pair<std::string, double>> parameters;
};

struct imexdde_trajectory {
  imexdde::Trajectory trajectory;
  std::size_t dimension = 0;
};

struct imexdde_fov {
  imexdde::FovEstimate estimate;
};

namespace {

thread_local std::string g_last_error;

imexdde_status to_status(imexdde::ErrorCode code) { return static_cast<imexdde_status>(static_cast<int>(code)); }

template <class F>
imexdde_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return IMEXDDE_OK;
  } catch (const imexdde::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IMEXDDE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return IMEXDDE_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) imexdde::fail(imexdde::ErrorCode::invalid_argument, what);
}

imexdde::Method method_of(int order) {
  if (order == 2) return imexdde::Method::bdf2;
  if (order == 3) return imexdde::Method::bdf3;
  imexdde::fail(imexdde::ErrorCode::unsupported_order, "order must be 2 or 3, got " + std::to_string(order));
}

std::vector<std::string> split_lines(const char* text) {
  std::vector<std::string> lines;
  if (text == nullptr) return lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_commas(const char* text) {
  std::vector<std::string> cells;
  if (text == nullptr) return cells;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

imexdde::Matrix read_matrix(const double* data, std::size_t d) {
  imexdde::Matrix M(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i * d + j];
  }
  return M;
}

void fill_report(const imexdde::StepSizeReport& r, imexdde_step_report* out) {
  out->order = static_cast<int>(r.method);
  switch (r.rule) {
    case imexdde::BoundRule::prop41:
      out->rule = IMEXDDE_RULE_PROP41;
      break;
    case imexdde::BoundRule::thm43:
      out->rule = IMEXDDE_RULE_THM43;
      break;
    case imexdde::BoundRule::thm51:
      out->rule = IMEXDDE_RULE_THM51;
      break;
  }
  out->regime = static_cast<int>(r.regime);
  out->r_used = r.r_used;
  out->lambda_d = r.lambda_d;
  out->has_h_star = r.h_star.has_value() ? 1 : 0;
  out->h_star = r.h_star.value_or(0.0);
}

imexdde::StepSizeReport bound(const imexdde::Matrix& A, const imexdde::Matrix& B, int order, int rule, double p,
                              int n_angles) {
  const imexdde::Method method = method_of(order);
  if (rule == IMEXDDE_RULE_AUTO) rule = imexdde::commutes(A, B) ? IMEXDDE_RULE_PROP41 : IMEXDDE_RULE_THM51;
  switch (rule) {
    case IMEXDDE_RULE_PROP41:
      return imexdde::step_bound_simdiag(A, B, method, imexdde::BoundRule::prop41);
    case IMEXDDE_RULE_THM43:
      return imexdde::step_bound_simdiag(A, B, method, imexdde::BoundRule::thm43);
    case IMEXDDE_RULE_THM51:
      return imexdde::step_bound_fov(A, B, method, p, n_angles);
    default:
      imexdde::fail(imexdde::ErrorCode::invalid_argument, "unknown rule " + std::to_string(rule));
  }
}

}  // namespace

extern "C" {

const char* imexdde_version(void) { return IMEXDDE_VERSION_STRING; }

const char* imexdde_status_name(imexdde_status status) {
  switch (status) {
    case IMEXDDE_OK:
      return "ok";
    case IMEXDDE_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case IMEXDDE_ERR_UNSUPPORTED_ORDER:
      return "unsupported_order";
    case IMEXDDE_ERR_STEP_SIZE:
      return "step_size";
    case IMEXDDE_ERR_FACTORIZATION:
      return "factorization";
    case IMEXDDE_ERR_DOMAIN:
      return "domain";
    case IMEXDDE_ERR_DOMAIN_UNCONDITIONAL:
      return "domain_unconditional";
    case IMEXDDE_ERR_DOMAIN_NO_GUARANTEE:
      return "domain_no_guarantee";
    case IMEXDDE_ERR_DEGENERATE_POLYNOMIAL:
      return "degenerate_polynomial";
    case IMEXDDE_ERR_POLE:
      return "pole";
    case IMEXDDE_ERR_SHAPE:
      return "shape";
    case IMEXDDE_ERR_DEFINITENESS:
      return "definiteness";
    case IMEXDDE_ERR_NOT_SIMULTANEOUSLY_DIAGONALIZABLE:
      return "not_simultaneously_diagonalizable";
    case IMEXDDE_ERR_DEGENERATE_PAIRING:
      return "degenerate_pairing";
    case IMEXDDE_ERR_UNKNOWN_PROBLEM:
      return "unknown_problem";
    case IMEXDDE_ERR_MISSING_EXACT:
      return "missing_exact";
    case IMEXDDE_ERR_IO:
      return "io";
    case IMEXDDE_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* imexdde_last_error(void) { return g_last_error.c_str(); }

size_t imexdde_problem_count(void) { return imexdde::problem_names().size(); }

const char* imexdde_problem_name(size_t index) {
  static const std::vector<std::string> names = imexdde::problem_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

imexdde_status imexdde_problem_create(const char* name, const char* const* keys, const double* values,
                                      size_t n_params, imexdde_problem** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "name and out must be non-null");
    require(n_params == 0 || (keys != nullptr && values != nullptr), "parameter arrays must be non-null");
    imexdde::ProblemParameters overrides;
    for (size_t i = 0; i < n_params; ++i) {
      require(keys[i] != nullptr, "parameter key must be non-null");
      overrides[keys[i]] = values[i];
    }
    auto handle = std::make_unique<imexdde_problem>();
    handle->problem = imexdde::make_problem(name, overrides);
    for (const auto& kv : handle->problem.parameters) handle->parameters.emplace_back(kv.first, kv.second);
    *out = handle.release();
  });
}

void imexdde_problem_destroy(imexdde_problem* problem) { delete problem; }

size_t imexdde_problem_dimension(const imexdde_problem* problem) {
  return problem ? problem->problem.dimension : 0;
}

double imexdde_problem_tau(const imexdde_problem* problem) { return problem ? problem->problem.tau : 0.0; }

int imexdde_problem_has_exact(const imexdde_problem* problem) {
  return problem && problem->problem.has_exact() ? 1 : 0;
}

size_t imexdde_problem_parameter_count(const imexdde_problem* problem) {
  return problem ? problem->parameters.size() : 0;
}

imexdde_status imexdde_problem_parameter(const imexdde_problem* problem, size_t index, const char** key,
                                         double* value) {
  return guarded([&] {
    require(problem != nullptr && key != nullptr && value != nullptr, "null argument");
    require(index < problem->parameters.size(), "parameter index out of range");
    *key = problem->parameters[index].first.c_str();
    *value = problem->parameters[index].second;
  });
}

imexdde_status imexdde_problem_matrix(const imexdde_problem* problem, char which, double* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    require(which == 'A' || which == 'B', "which must be 'A' or 'B'");
    const imexdde::Matrix& M =
        which == 'A' ? problem->problem.A : imexdde::stability_delayed_matrix(problem->problem);
    const auto d = static_cast<Eigen::Index>(problem->problem.dimension);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) out[i * d + j] = M(i, j);
    }
  });
}

imexdde_status imexdde_problem_exact(const imexdde_problem* problem, double t, double* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    if (!problem->problem.has_exact()) {
      imexdde::fail(imexdde::ErrorCode::missing_exact, "problem '" + problem->problem.name + "' has no exact solution");
    }
    const imexdde::Vector y = problem->problem.exact(t);
    for (Eigen::Index i = 0; i < y.size(); ++i) out[i] = y(i);
  });
}

imexdde_status imexdde_problem_commutes(const imexdde_problem* problem, double tol, int* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    *out = imexdde::commutes(problem->problem.A, imexdde::stability_delayed_matrix(problem->problem), tol) ? 1 : 0;
  });
}

void imexdde_integrate_options_init(imexdde_integrate_options* options) {
  if (options == nullptr) return;
  const imexdde::IntegrateOptions defaults;
  options->h = defaults.h;
  options->t_end = defaults.t_end;
  options->blowup_threshold = defaults.blowup_threshold;
  options->store_every = defaults.store_every;
  options->refactor_each_step = defaults.refactor_each_step ? 1 : 0;
  options->startup = IMEXDDE_STARTUP_AUTO;
}

imexdde_status imexdde_integrate(const imexdde_problem* problem, int order, const imexdde_integrate_options* options,
                                 imexdde_trajectory** out) {
  return guarded([&] {
    require(problem != nullptr && options != nullptr && out != nullptr, "null argument");
    imexdde::IntegrateOptions opt;
    opt.h = options->h;
    opt.t_end = options->t_end;
    opt.blowup_threshold = options->blowup_threshold;
    opt.store_every = options->store_every;
    opt.refactor_each_step = options->refactor_each_step != 0;
    switch (options->startup) {
      case IMEXDDE_STARTUP_AUTO:
        opt.startup = imexdde::StartupRule::automatic;
        break;
      case IMEXDDE_STARTUP_EXACT:
        opt.startup = imexdde::StartupRule::exact;
        break;
      case IMEXDDE_STARTUP_BOOTSTRAP:
        opt.startup = imexdde::StartupRule::bootstrap;
        break;
      default:
        imexdde::fail(imexdde::ErrorCode::invalid_argument, "unknown startup rule");
    }
    auto handle = std::make_unique<imexdde_trajectory>();
    handle->trajectory =
        imexdde::integrate(problem->problem, imexdde::imex_bdf_coefficients(method_of(order)), opt);
    handle->dimension = problem->problem.dimension;
    *out = handle.release();
  });
}

void imexdde_trajectory_destroy(imexdde_trajectory* trajectory) { delete trajectory; }

size_t imexdde_trajectory_size(const imexdde_trajectory* trajectory) {
  return trajectory ? trajectory->trajectory.size() : 0;
}

size_t imexdde_trajectory_dimension(const imexdde_trajectory* trajectory) {
  return trajectory ? trajectory->dimension : 0;
}

imexdde_status imexdde_trajectory_point(const imexdde_trajectory* trajectory, size_t index, double* t, double* y) {
  return guarded([&] {
    require(trajectory != nullptr, "null trajectory");
    require(index < trajectory->trajectory.size(), "trajectory index out of range");
    if (t) *t = trajectory->trajectory.times[index];
    if (y) {
      const imexdde::Vector& v = trajectory->trajectory.states[index];
      for (Eigen::Index i = 0; i < v.size(); ++i) y[i] = v(i);
    }
  });
}

int imexdde_trajectory_blew_up(const imexdde_trajectory* trajectory, double* time) {
  if (trajectory == nullptr || !trajectory->trajectory.blew_up) return 0;
  if (time) *time = trajectory->trajectory.blowup_time;
  return 1;
}

imexdde_status imexdde_trajectory_final_error(const imexdde_trajectory* trajectory, const imexdde_problem* problem,
                                              double* out) {
  return guarded([&] {
    require(trajectory != nullptr && problem != nullptr && out != nullptr, "null argument");
    const imexdde::Vector e = imexdde::final_error(trajectory->trajectory, problem->problem);
    for (Eigen::Index i = 0; i < e.size(); ++i) out[i] = e(i);
  });
}

imexdde_status imexdde_trajectory_write_csv(const imexdde_trajectory* trajectory, const char* path,
                                            const char* metadata) {
  return guarded([&] {
    require(trajectory != nullptr && path != nullptr, "null argument");
    imexdde::CsvTable table;
    table.metadata = split_lines(metadata);
    table.header.push_back("t");
    for (std::size_t i = 0; i < trajectory->dimension; ++i) table.header.push_back("y_" + std::to_string(i));
    const auto& traj = trajectory->trajectory;
    table.rows.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
      std::vector<double> row;
      row.reserve(trajectory->dimension + 1);
      row.push_back(traj.times[k]);
      for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) row.push_back(traj.states[k](i));
      table.rows.push_back(std::move(row));
    }
    imexdde::write_csv(path, table);
  });
}

imexdde_status imexdde_convergence_rate(double err_h1, double err_h2, double h1, double h2, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = imexdde::convergence_rate(err_h1, err_h2, h1, h2);
  });
}

imexdde_status imexdde_char_equation_stable(int order, double z, int z_minus_infinity, double mu_re, double mu_im,
                                            int m, int* stable) {
  return guarded([&] {
    require(stable != nullptr, "null argument");
    const imexdde::ZValue zv = z_minus_infinity ? imexdde::ZValue::neg_inf() : imexdde::ZValue::finite(z);
    *stable = imexdde::char_equation_stable(method_of(order), zv, {mu_re, mu_im}, m) ? 1 : 0;
  });
}

imexdde_status imexdde_gamma_curve(int order, double z, int m, int n_samples, double* theta, double* re,
                                   double* im) {
  return guarded([&] {
    require(theta != nullptr && re != nullptr && im != nullptr, "null argument");
    const auto curve = imexdde::gamma_curve(method_of(order), z, m, n_samples);
    for (std::size_t k = 0; k < curve.samples.size(); ++k) {
      theta[k] = curve.samples[k].theta;
      re[k] = curve.samples[k].mu.real();
      im[k] = curve.samples[k].mu.imag();
    }
  });
}

imexdde_status imexdde_sigma_z(int order, double z, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = imexdde::sigma_z_numeric(method_of(order), z);
  });
}

imexdde_status imexdde_psi(int order, double z, int z_minus_infinity, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = imexdde::psi(method_of(order), z_minus_infinity ? imexdde::ZValue::neg_inf() : imexdde::ZValue::finite(z));
  });
}

imexdde_status imexdde_chi(int order, double r, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = imexdde::chi(method_of(order), r);
  });
}

imexdde_status imexdde_fov_create(const double* re, const double* im, size_t d, int n_angles, imexdde_fov** out) {
  return guarded([&] {
    require(re != nullptr && out != nullptr, "null argument");
    require(d > 0, "matrix dimension must be positive");
    imexdde::ComplexMatrix X(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {re[i * d + j], im ? im[i * d + j] : 0.0};
      }
    }
    auto handle = std::make_unique<imexdde_fov>();
    handle->estimate = imexdde::fov(X, n_angles);
    *out = handle.release();
  });
}

imexdde_status imexdde_problem_fov(const imexdde_problem* problem, double p, int n_angles, imexdde_fov** out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const imexdde::Matrix X =
        imexdde::fp_matrix(problem->problem.A, imexdde::stability_delayed_matrix(problem->problem), p);
    auto handle = std::make_unique<imexdde_fov>();
    handle->estimate = imexdde::fov(X, n_angles);
    *out = handle.release();
  });
}

void imexdde_fov_destroy(imexdde_fov* fov) { delete fov; }

size_t imexdde_fov_size(const imexdde_fov* fov) { return fov ? fov->estimate.boundary.size() : 0; }

double imexdde_fov_radius(const imexdde_fov* fov) { return fov ? fov->estimate.numerical_radius : 0.0; }

imexdde_status imexdde_fov_point(const imexdde_fov* fov, size_t index, double* theta, double* re, double* im) {
  return guarded([&] {
    require(fov != nullptr, "null fov");
    require(index < fov->estimate.boundary.size(), "fov index out of range");
    if (theta) *theta = fov->estimate.thetas[index];
    if (re) *re = fov->estimate.boundary[index].real();
    if (im) *im = fov->estimate.boundary[index].imag();
  });
}

imexdde_status imexdde_step_bound(const imexdde_problem* problem, int order, int rule, double p, int n_angles,
                                  imexdde_step_report* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    fill_report(bound(problem->problem.A, imexdde::stability_delayed_matrix(problem->problem), order, rule, p, n_angles),
                out);
  });
}

imexdde_status imexdde_step_bound_matrices(const double* A, const double* B, size_t d, int order, int rule, double p,
                                           int n_angles, imexdde_step_report* out) {
  return guarded([&] {
    require(A != nullptr && B != nullptr && out != nullptr, "null argument");
    require(d > 0, "matrix dimension must be positive");
    fill_report(bound(read_matrix(A, d), read_matrix(B, d), order, rule, p, n_angles), out);
  });
}

const char* imexdde_rule_name(int rule) {
  switch (rule) {
    case IMEXDDE_RULE_AUTO:
      return "auto";
    case IMEXDDE_RULE_PROP41:
      return "prop41";
    case IMEXDDE_RULE_THM43:
      return "thm43";
    case IMEXDDE_RULE_THM51:
      return "thm51";
  }
  return "unknown";
}

const char* imexdde_regime_name(int regime) {
  switch (regime) {
    case IMEXDDE_REGIME_UNCONDITIONAL:
      return "unconditional";
    case IMEXDDE_REGIME_CONDITIONAL:
      return "conditional";
    case IMEXDDE_REGIME_NO_GUARANTEE:
      return "no_guarantee";
  }
  return "unknown";
}

imexdde_status imexdde_write_table_csv(const char* path, const char* metadata, const char* header, const double* data,
                                       size_t rows, size_t cols, const char* footer) {
  return guarded([&] {
    require(path != nullptr, "null path");
    require(rows == 0 || data != nullptr, "null data");
    imexdde::CsvTable table;
    table.metadata = split_lines(metadata);
    table.header = split_commas(header);
    require(table.header.empty() || table.header.size() == cols, "header width does not match column count");
    table.rows.reserve(rows);
    for (size_t r = 0; r < rows; ++r) table.rows.emplace_back(data + r * cols, data + (r + 1) * cols);
    table.footer = split_lines(footer);
    imexdde::write_csv(path, table);
  });
}

}  // extern "C"
