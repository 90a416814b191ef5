// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "imexdde/imexdde.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBlowup = 2;
constexpr double kBlowupNorm = 1e12;

// Failure that maps to exit code 1 after printing its message.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(imexdde_status status) {
  if (status != IMEXDDE_OK) {
    throw UsageError(std::string(imexdde_status_name(status)) + ": " + imexdde_last_error());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ProblemDeleter {
  void operator()(imexdde_problem* p) const { imexdde_problem_destroy(p); }
};
struct TrajectoryDeleter {
  void operator()(imexdde_trajectory* t) const { imexdde_trajectory_destroy(t); }
};
struct FovDeleter {
  void operator()(imexdde_fov* f) const { imexdde_fov_destroy(f); }
};
using ProblemPtr = std::unique_ptr<imexdde_problem, ProblemDeleter>;
using TrajectoryPtr = std::unique_ptr<imexdde_trajectory, TrajectoryDeleter>;
using FovPtr = std::unique_ptr<imexdde_fov, FovDeleter>;

struct RunConfig {
  std::string subcommand;
  std::string problem = "example1";
  std::vector<std::string> params;  // key=value
  std::map<std::string, double> shortcut_params;
  std::string method = "bdf2";
  double h = 0.01;
  std::vector<double> h_list;
  double h1 = 0.05;
  double h2 = 0.005;
  double t_end = 500.0;
  std::string output;
  unsigned seed = 2024;
  std::size_t store_every = 1;
  std::string startup = "auto";
  std::string norm = "l2";
  int jobs = 1;

  // stability
  bool curve = false;
  bool psi = false;
  bool chi = false;
  bool sweep = false;
  std::string z = "-1";
  int m = 0;
  int samples = 512;
  double r = 1.0;
  double z_min = -1e4;
  double z_max = -1e-2;
  int points = 200;

  // fov / stepbound
  double p = 0.0;
  int angles = 512;
  std::string rule = "auto";
};

int order_of(const std::string& method) {
  if (method == "bdf2") return 2;
  if (method == "bdf3") return 3;
  throw UsageError("unknown method '" + method + "' (expected bdf2 or bdf3)");
}

std::string output_path(const RunConfig& cfg, const std::string& fallback) {
  std::string name = cfg.output.empty() ? fallback : cfg.output;
  const char* dir = std::getenv("IMEXDDE_OUTPUT_DIR");
  if (dir != nullptr && *dir != '\0' && !name.empty() && name[0] != '/') name = std::string(dir) + "/" + name;
  return name;
}

ProblemPtr open_problem(const RunConfig& cfg) {
  std::map<std::string, double> values = cfg.shortcut_params;
  for (const auto& kv : cfg.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("parameter '" + kv + "' is not key=value");
    try {
      values[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("parameter '" + kv + "' has a non-numeric value");
    }
  }
  std::vector<std::string> keys;
  std::vector<const char*> key_ptrs;
  std::vector<double> vals;
  for (const auto& [k, v] : values) {
    keys.push_back(k);
    vals.push_back(v);
  }
  for (const auto& k : keys) key_ptrs.push_back(k.c_str());
  imexdde_problem* raw = nullptr;
  check(imexdde_problem_create(cfg.problem.c_str(), key_ptrs.data(), vals.data(), vals.size(), &raw));
  return ProblemPtr(raw);
}

std::string problem_params(const imexdde_problem* p) {
  std::string out;
  for (size_t i = 0; i < imexdde_problem_parameter_count(p); ++i) {
    const char* key = nullptr;
    double value = 0.0;
    check(imexdde_problem_parameter(p, i, &key, &value));
    if (!out.empty()) out += ";";
    out += std::string(key) + "=" + fmt(value);
  }
  return out.empty() ? "none" : out;
}

std::string metadata(const RunConfig& cfg, const imexdde_problem* p, const std::string& extra) {
  std::string out = std::string("imexdde ") + imexdde_version() + "\ncommand=" + cfg.subcommand + "\n";
  if (p != nullptr) out += "problem=" + cfg.problem + "\nparameters=" + problem_params(p) + "\n";
  out += extra;
  return out;
}

int startup_of(const std::string& name) {
  if (name == "auto") return IMEXDDE_STARTUP_AUTO;
  if (name == "exact") return IMEXDDE_STARTUP_EXACT;
  if (name == "bootstrap") return IMEXDDE_STARTUP_BOOTSTRAP;
  throw UsageError("unknown startup rule '" + name + "'");
}

imexdde_integrate_options integrate_options(const RunConfig& cfg, double h) {
  imexdde_integrate_options opt;
  imexdde_integrate_options_init(&opt);
  opt.h = h;
  opt.t_end = cfg.t_end;
  opt.blowup_threshold = kBlowupNorm;
  opt.store_every = cfg.store_every;
  opt.startup = startup_of(cfg.startup);
  return opt;
}

int cmd_solve(const RunConfig& cfg) {
  const int order = order_of(cfg.method);
  ProblemPtr problem = open_problem(cfg);
  const auto opt = integrate_options(cfg, cfg.h);
  imexdde_trajectory* raw = nullptr;
  check(imexdde_integrate(problem.get(), order, &opt, &raw));
  TrajectoryPtr traj(raw);

  const std::string path = output_path(cfg, "solve_" + cfg.problem + "_" + cfg.method + ".csv");
  const std::string meta = metadata(cfg, problem.get(),
                                    "method=" + cfg.method + "\nh=" + fmt(cfg.h) + "\nt_end=" + fmt(cfg.t_end) + "\n");
  check(imexdde_trajectory_write_csv(traj.get(), path.c_str(), meta.c_str()));

  const size_t d = imexdde_trajectory_dimension(traj.get());
  double blowup_time = 0.0;
  if (imexdde_trajectory_blew_up(traj.get(), &blowup_time)) {
    std::printf("blow-up: ||y||_inf > %s first at t=%s\n", fmt(kBlowupNorm).c_str(), fmt(blowup_time).c_str());
    std::printf("wrote %s\n", path.c_str());
    return kExitBlowup;
  }
  double t_final = 0.0;
  check(imexdde_trajectory_point(traj.get(), imexdde_trajectory_size(traj.get()) - 1, &t_final, nullptr));
  std::printf("t_final=%s steps=%zu\n", fmt(t_final).c_str(), imexdde_trajectory_size(traj.get()));
  if (imexdde_problem_has_exact(problem.get())) {
    std::vector<double> err(d);
    check(imexdde_trajectory_final_error(traj.get(), problem.get(), err.data()));
    std::printf("final_error");
    for (double e : err) std::printf(" %s", fmt(e).c_str());
    std::printf("\n");
  }
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

struct SweepResult {
  double h = 0.0;
  bool blew_up = false;
  std::vector<double> error;
  double norm = 0.0;
};

SweepResult run_one(const imexdde_problem* problem, int order, const imexdde_integrate_options& opt, bool use_l2) {
  imexdde_trajectory* raw = nullptr;
  check(imexdde_integrate(problem, order, &opt, &raw));
  TrajectoryPtr traj(raw);
  SweepResult res;
  res.h = opt.h;
  res.blew_up = imexdde_trajectory_blew_up(traj.get(), nullptr) != 0;
  res.error.resize(imexdde_problem_dimension(problem));
  check(imexdde_trajectory_final_error(traj.get(), problem, res.error.data()));
  double acc = 0.0;
  for (double e : res.error) acc = use_l2 ? acc + e * e : std::max(acc, e);
  res.norm = use_l2 ? std::sqrt(acc) : acc;
  return res;
}

int cmd_converge(const RunConfig& cfg) {
  const int order = order_of(cfg.method);
  if (cfg.norm != "l2" && cfg.norm != "max") throw UsageError("--norm must be l2 or max");
  const bool use_l2 = cfg.norm == "l2";
  std::vector<double> hs = cfg.h_list.empty() ? std::vector<double>{0.5, 0.25, 0.1, 0.05, 0.025, 0.01, 0.005}
                                              : cfg.h_list;
  for (std::size_t i = 1; i < hs.size(); ++i) {
    if (!(hs[i] < hs[i - 1])) throw UsageError("--h-list must be strictly decreasing");
  }
  if (!(cfg.h1 > cfg.h2)) throw UsageError("--h1 must exceed --h2");
  ProblemPtr problem = open_problem(cfg);
  if (!imexdde_problem_has_exact(problem.get())) {
    throw UsageError("problem '" + cfg.problem + "' has no exact solution; convergence needs one");
  }

  std::vector<double> runs = hs;
  for (double h : {cfg.h1, cfg.h2}) {
    bool present = false;
    for (double x : runs) present = present || x == h;
    if (!present) runs.push_back(h);
  }
  // Runs are independent; each owns its trajectory.
  std::vector<SweepResult> results(runs.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, cfg.jobs));
  for (std::size_t start = 0; start < runs.size(); start += jobs) {
    std::vector<std::future<SweepResult>> batch;
    for (std::size_t i = start; i < std::min(runs.size(), start + jobs); ++i) {
      const auto opt = integrate_options(cfg, runs[i]);
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&problem, order, opt, use_l2] { return run_one(problem.get(), order, opt, use_l2); }));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) results[start + k] = batch[k].get();
  }

  auto find = [&](double h) -> const SweepResult& {
    for (const auto& r : results) {
      if (r.h == h) return r;
    }
    throw UsageError("missing run for h=" + fmt(h));
  };
  const SweepResult& r1 = find(cfg.h1);
  const SweepResult& r2 = find(cfg.h2);
  if (r1.blew_up || r2.blew_up) throw UsageError("rate pair contains a blown-up run");
  double rate = 0.0;
  check(imexdde_convergence_rate(r1.norm, r2.norm, cfg.h1, cfg.h2, &rate));

  const size_t d = imexdde_problem_dimension(problem.get());
  std::string header = "h";
  for (size_t i = 0; i < d; ++i) header += ",e_" + std::to_string(i);
  header += ",norm,blew_up";
  std::vector<double> data;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const SweepResult& r = results[i];
    data.push_back(r.h);
    data.insert(data.end(), r.error.begin(), r.error.end());
    data.push_back(r.norm);
    data.push_back(r.blew_up ? 1.0 : 0.0);
  }
  const std::string footer =
      "rate=" + fmt(rate) + " norm=" + cfg.norm + " h1=" + fmt(cfg.h1) + " h2=" + fmt(cfg.h2);
  const std::string path = output_path(cfg, "converge_" + cfg.problem + "_" + cfg.method + ".csv");
  const std::string meta =
      metadata(cfg, problem.get(), "method=" + cfg.method + "\nt_end=" + fmt(cfg.t_end) + "\nnorm=" + cfg.norm + "\n");
  check(imexdde_write_table_csv(path.c_str(), meta.c_str(), header.c_str(), data.data(), hs.size(), d + 3,
                                footer.c_str()));

  for (std::size_t i = 0; i < hs.size(); ++i) {
    const SweepResult& r = results[i];
    std::printf("h=%s%s", fmt(r.h).c_str(), r.blew_up ? " blow-up" : "");
    for (double e : r.error) std::printf(" %.5e", e);
    std::printf("\n");
  }
  std::printf("rate=%s norm=%s h1=%s h2=%s\n", fmt(rate).c_str(), cfg.norm.c_str(), fmt(cfg.h1).c_str(),
              fmt(cfg.h2).c_str());
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

// Accepts a number or "-inf".
std::pair<double, bool> parse_z(const std::string& text) {
  if (text == "-inf" || text == "-infinity") return {0.0, true};
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    if (std::isinf(v) && v < 0) return {0.0, true};
    return {v, false};
  } catch (const std::exception&) {
    throw UsageError("cannot parse z value '" + text + "'");
  }
}

int cmd_stability(const RunConfig& cfg) {
  const int order = order_of(cfg.method);
  const int modes = int(cfg.curve) + int(cfg.psi) + int(cfg.chi) + int(cfg.sweep);
  if (modes != 1) throw UsageError("choose exactly one of --curve, --psi, --chi, --sweep");
  const std::string base = "method=" + cfg.method + "\n";

  if (cfg.psi) {
    const auto [z, minus_inf] = parse_z(cfg.z);
    double v = 0.0;
    check(imexdde_psi(order, z, minus_inf ? 1 : 0, &v));
    std::printf("%s\n", fmt(v).c_str());
    return kExitOk;
  }
  if (cfg.chi) {
    double v = 0.0;
    check(imexdde_chi(order, cfg.r, &v));
    std::printf("%s\n", fmt(v).c_str());
    return kExitOk;
  }
  if (cfg.curve) {
    const auto [z, minus_inf] = parse_z(cfg.z);
    if (minus_inf) throw UsageError("--curve needs a finite z");
    std::vector<double> theta(static_cast<std::size_t>(std::max(cfg.samples, 0)));
    std::vector<double> re(theta.size());
    std::vector<double> im(theta.size());
    check(imexdde_gamma_curve(order, z, cfg.m, cfg.samples, theta.data(), re.data(), im.data()));
    std::vector<double> data;
    for (std::size_t k = 0; k < theta.size(); ++k) data.insert(data.end(), {theta[k], re[k], im[k]});
    const std::string path = output_path(cfg, "curve_" + cfg.method + ".csv");
    const std::string meta = metadata(cfg, nullptr, base + "z=" + fmt(z) + "\nm=" + std::to_string(cfg.m) + "\n");
    check(imexdde_write_table_csv(path.c_str(), meta.c_str(), "theta,re_mu,im_mu", data.data(), theta.size(), 3,
                                  nullptr));
    std::printf("wrote %s (%zu samples)\n", path.c_str(), theta.size());
    return kExitOk;
  }
  // sweep: log-spaced z in [z_min, z_max], both negative
  if (!(cfg.z_min < cfg.z_max) || !(cfg.z_max < 0.0) || cfg.points < 2) {
    throw UsageError("--sweep needs z_min < z_max < 0 and at least 2 points");
  }
  std::vector<double> data;
  const double a = std::log(-cfg.z_min);
  const double b = std::log(-cfg.z_max);
  for (int k = 0; k < cfg.points; ++k) {
    const double z = -std::exp(a + (b - a) * k / (cfg.points - 1));
    double sigma = 0.0;
    double psi = 0.0;
    check(imexdde_sigma_z(order, z, &sigma));
    check(imexdde_psi(order, z, 0, &psi));
    data.insert(data.end(), {z, sigma, psi});
  }
  const std::string path = output_path(cfg, "sigma_" + cfg.method + ".csv");
  check(imexdde_write_table_csv(path.c_str(), metadata(cfg, nullptr, base).c_str(), "z,sigma_z,psi", data.data(),
                                static_cast<size_t>(cfg.points), 3, nullptr));
  std::printf("wrote %s (%d points)\n", path.c_str(), cfg.points);
  return kExitOk;
}

int cmd_fov(const RunConfig& cfg) {
  ProblemPtr problem = open_problem(cfg);
  imexdde_fov* raw = nullptr;
  check(imexdde_problem_fov(problem.get(), cfg.p, cfg.angles, &raw));
  FovPtr fov(raw);
  std::vector<double> data;
  for (size_t k = 0; k < imexdde_fov_size(fov.get()); ++k) {
    double theta = 0.0;
    double re = 0.0;
    double im = 0.0;
    check(imexdde_fov_point(fov.get(), k, &theta, &re, &im));
    data.insert(data.end(), {theta, re, im});
  }
  const double radius = imexdde_fov_radius(fov.get());
  const std::string path = output_path(cfg, "fov_" + cfg.problem + ".csv");
  const std::string meta = metadata(cfg, problem.get(),
                                    "p=" + fmt(cfg.p) + "\nangles=" + std::to_string(cfg.angles) +
                                        "\nnumerical_radius=" + fmt(radius) + "\n");
  check(imexdde_write_table_csv(path.c_str(), meta.c_str(), "theta,re,im", data.data(), imexdde_fov_size(fov.get()),
                                3, nullptr));
  std::printf("numerical_radius=%s\nwrote %s\n", fmt(radius).c_str(), path.c_str());
  return kExitOk;
}

int rule_of(const std::string& name) {
  if (name == "auto") return IMEXDDE_RULE_AUTO;
  if (name == "prop41") return IMEXDDE_RULE_PROP41;
  if (name == "thm43") return IMEXDDE_RULE_THM43;
  if (name == "thm51" || name == "fov") return IMEXDDE_RULE_THM51;
  throw UsageError("unknown rule '" + name + "' (auto, prop41, thm43, thm51/fov)");
}

int cmd_stepbound(const RunConfig& cfg) {
  const int order = order_of(cfg.method);
  const int rule = rule_of(cfg.rule);
  ProblemPtr problem = open_problem(cfg);
  imexdde_step_report rep{};
  check(imexdde_step_bound(problem.get(), order, rule, cfg.p, cfg.angles, &rep));
  const std::string h_star = rep.has_h_star ? fmt(rep.h_star) : "";
  const std::string path = output_path(cfg, "stepbound_" + cfg.problem + "_" + cfg.method + ".csv");
  const std::string meta =
      metadata(cfg, problem.get(), "p=" + fmt(cfg.p) + "\nangles=" + std::to_string(cfg.angles) + "\n");
  {
    // Mixed text/number row, so written here rather than through the numeric table writer.
    FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) throw UsageError("cannot open '" + path + "' for writing");
    std::stringstream lines(meta);
    std::string line;
    while (std::getline(lines, line)) {
      if (!line.empty()) std::fprintf(f, "# %s\n", line.c_str());
    }
    std::fprintf(f, "method,rule,regime,r,lambda_d,h_star\n%s,%s,%s,%s,%s,%s\n", cfg.method.c_str(),
                 imexdde_rule_name(rep.rule), imexdde_regime_name(rep.regime), fmt(rep.r_used).c_str(),
                 fmt(rep.lambda_d).c_str(), h_star.c_str());
    std::fclose(f);
  }
  std::printf("method=%s rule=%s regime=%s r=%s lambda_d=%s h_star=%s\n", cfg.method.c_str(),
              imexdde_rule_name(rep.rule), imexdde_regime_name(rep.regime), fmt(rep.r_used).c_str(),
              fmt(rep.lambda_d).c_str(), rep.has_h_star ? h_star.c_str() : "none");
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

int cmd_list() {
  for (size_t i = 0; i < imexdde_problem_count(); ++i) {
    const char* name = imexdde_problem_name(i);
    imexdde_problem* raw = nullptr;
    check(imexdde_problem_create(name, nullptr, nullptr, 0, &raw));
    ProblemPtr p(raw);
    std::printf("%s d=%zu tau=%s exact=%s params=%s\n", name, imexdde_problem_dimension(p.get()),
                fmt(imexdde_problem_tau(p.get())).c_str(), imexdde_problem_has_exact(p.get()) ? "yes" : "no",
                problem_params(p.get()).c_str());
  }
  return kExitOk;
}

void add_problem_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--problem", cfg.problem, "example1 | example2 | pdde_linear | burgers");
  cmd->add_option("--param", cfg.params, "problem parameter key=value (repeatable)");
  for (const char* key : {"l", "n", "tau", "a1", "a2", "epsilon", "amp"}) {
    cmd->add_option_function<double>(
        std::string("--") + key, [&cfg, key](double v) { cfg.shortcut_params[key] = v; },
        std::string("shorthand for --param ") + key + "=...");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMEX-BDF2/3 integrators and stability analysis for constant-delay systems"};
  // "--h" is the step size, so help is long-form only (subcommands inherit this).
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(imexdde_version()));
  RunConfig cfg;

  auto* solve = app.add_subcommand("solve", "integrate a problem and write the trajectory");
  add_problem_options(solve, cfg);
  solve->add_option("--method", cfg.method, "bdf2 | bdf3");
  solve->add_option("--h", cfg.h, "step size (tau/h must be an integer)");
  solve->add_option("--t-end", cfg.t_end, "final time");
  solve->add_option("--store-every", cfg.store_every, "keep every k-th step");
  solve->add_option("--startup", cfg.startup, "auto | exact | bootstrap");
  solve->add_option("--output,-o", cfg.output, "CSV path");

  auto* converge = app.add_subcommand("converge", "error table and convergence rate");
  add_problem_options(converge, cfg);
  converge->add_option("--method", cfg.method, "bdf2 | bdf3");
  converge->add_option("--h-list", cfg.h_list, "strictly decreasing step sizes")->delimiter(',');
  converge->add_option("--h1", cfg.h1, "coarse step of the rate pair");
  converge->add_option("--h2", cfg.h2, "fine step of the rate pair");
  converge->add_option("--t-end", cfg.t_end, "final time");
  converge->add_option("--norm", cfg.norm, "l2 | max");
  converge->add_option("--startup", cfg.startup, "auto | exact | bootstrap");
  converge->add_option("--jobs", cfg.jobs, "parallel runs");
  converge->add_option("--seed", cfg.seed, "unused; recorded for reproducibility");
  converge->add_option("--output,-o", cfg.output, "CSV path");

  auto* stability = app.add_subcommand("stability", "stability curves, sigma_z sweeps, psi and chi");
  stability->add_option("--method", cfg.method, "bdf2 | bdf3");
  stability->add_flag("--curve", cfg.curve, "sample Gamma_z");
  stability->add_flag("--psi", cfg.psi, "evaluate psi(z)");
  stability->add_flag("--chi", cfg.chi, "evaluate chi(r)");
  stability->add_flag("--sweep", cfg.sweep, "sigma_z and psi over log-spaced z");
  stability->add_option("--z", cfg.z, "z < 0, or -inf");
  stability->add_option("--m", cfg.m, "delay steps");
  stability->add_option("--samples", cfg.samples, "curve samples");
  stability->add_option("--r", cfg.r, "radius for chi");
  stability->add_option("--z-min", cfg.z_min, "sweep start");
  stability->add_option("--z-max", cfg.z_max, "sweep end");
  stability->add_option("--points", cfg.points, "sweep points");
  stability->add_option("--output,-o", cfg.output, "CSV path");

  auto* fov = app.add_subcommand("fov", "field of values of A^{p/2-1} B A^{-p/2}");
  add_problem_options(fov, cfg);
  fov->add_option("--p", cfg.p, "weight exponent");
  fov->add_option("--angles", cfg.angles, "sweep angles");
  fov->add_option("--output,-o", cfg.output, "CSV path");

  auto* stepbound = app.add_subcommand("stepbound", "step-size restriction report");
  add_problem_options(stepbound, cfg);
  stepbound->add_option("--method", cfg.method, "bdf2 | bdf3");
  stepbound->add_option("--rule", cfg.rule, "auto | prop41 | thm43 | thm51 | fov");
  stepbound->add_option("--p", cfg.p, "weight exponent for the fov rule");
  stepbound->add_option("--angles", cfg.angles, "sweep angles for the fov rule");
  stepbound->add_option("--output,-o", cfg.output, "CSV path");

  auto* list = app.add_subcommand("list-problems", "built-in problems and their defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      cfg.subcommand = "solve";
      return cmd_solve(cfg);
    }
    if (converge->parsed()) {
      cfg.subcommand = "converge";
      return cmd_converge(cfg);
    }
    if (stability->parsed()) {
      cfg.subcommand = "stability";
      return cmd_stability(cfg);
    }
    if (fov->parsed()) {
      cfg.subcommand = "fov";
      return cmd_fov(cfg);
    }
    if (stepbound->parsed()) {
      cfg.subcommand = "stepbound";
      return cmd_stepbound(cfg);
    }
    if (list->parsed()) return cmd_list();
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
