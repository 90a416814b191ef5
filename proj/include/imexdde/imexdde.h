#ifndef IMEXDDE_IMEXDDE_H
#define IMEXDDE_IMEXDDE_H

#include <stddef.h>

#if defined(_WIN32)
#define IMEXDDE_API __declspec(dllexport)
#else
#define IMEXDDE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; details via imexdde_last_error(). */
typedef enum imexdde_status {
  IMEXDDE_OK = 0,
  IMEXDDE_ERR_INVALID_ARGUMENT = 1,
  IMEXDDE_ERR_UNSUPPORTED_ORDER = 2,
  IMEXDDE_ERR_STEP_SIZE = 3,
  IMEXDDE_ERR_FACTORIZATION = 4,
  IMEXDDE_ERR_DOMAIN = 5,
  IMEXDDE_ERR_DOMAIN_UNCONDITIONAL = 6,
  IMEXDDE_ERR_DOMAIN_NO_GUARANTEE = 7,
  IMEXDDE_ERR_DEGENERATE_POLYNOMIAL = 8,
  IMEXDDE_ERR_POLE = 9,
  IMEXDDE_ERR_SHAPE = 10,
  IMEXDDE_ERR_DEFINITENESS = 11,
  IMEXDDE_ERR_NOT_SIMULTANEOUSLY_DIAGONALIZABLE = 12,
  IMEXDDE_ERR_DEGENERATE_PAIRING = 13,
  IMEXDDE_ERR_UNKNOWN_PROBLEM = 14,
  IMEXDDE_ERR_MISSING_EXACT = 15,
  IMEXDDE_ERR_IO = 16,
  IMEXDDE_ERR_INTERNAL = 99
} imexdde_status;

typedef struct imexdde_problem imexdde_problem;
typedef struct imexdde_trajectory imexdde_trajectory;
typedef struct imexdde_fov imexdde_fov;

IMEXDDE_API const char* imexdde_version(void);
IMEXDDE_API const char* imexdde_status_name(imexdde_status status);
/* Message of the last failure on the calling thread ("" if none). */
IMEXDDE_API const char* imexdde_last_error(void);

/* ---- problems ---- */

IMEXDDE_API size_t imexdde_problem_count(void);
IMEXDDE_API const char* imexdde_problem_name(size_t index);

/* keys/values override the problem's numeric parameters; n_params may be 0. */
IMEXDDE_API imexdde_status imexdde_problem_create(const char* name, const char* const* keys, const double* values,
                                                  size_t n_params, imexdde_problem** out);
IMEXDDE_API void imexdde_problem_destroy(imexdde_problem* problem);

IMEXDDE_API size_t imexdde_problem_dimension(const imexdde_problem* problem);
IMEXDDE_API double imexdde_problem_tau(const imexdde_problem* problem);
IMEXDDE_API int imexdde_problem_has_exact(const imexdde_problem* problem);
IMEXDDE_API size_t imexdde_problem_parameter_count(const imexdde_problem* problem);
IMEXDDE_API imexdde_status imexdde_problem_parameter(const imexdde_problem* problem, size_t index, const char** key,
                                                     double* value);
/* which = 'A' (implicit matrix) or 'B' (delayed matrix used for stability). Row-major d*d. */
IMEXDDE_API imexdde_status imexdde_problem_matrix(const imexdde_problem* problem, char which, double* out);
IMEXDDE_API imexdde_status imexdde_problem_exact(const imexdde_problem* problem, double t, double* out);
/* 1 if ||AB - BA||_F <= tol ||A||_F ||B||_F. */
IMEXDDE_API imexdde_status imexdde_problem_commutes(const imexdde_problem* problem, double tol, int* out);

/* ---- integration ---- */

enum { IMEXDDE_STARTUP_AUTO = 0, IMEXDDE_STARTUP_EXACT = 1, IMEXDDE_STARTUP_BOOTSTRAP = 2 };

typedef struct imexdde_integrate_options {
  double h;
  double t_end;
  double blowup_threshold; /* stop once ||y||_inf exceeds this */
  size_t store_every;
  int refactor_each_step;
  int startup;
} imexdde_integrate_options;

IMEXDDE_API void imexdde_integrate_options_init(imexdde_integrate_options* options);
/* order is 2 (IMEX-BDF2) or 3 (IMEX-BDF3). */
IMEXDDE_API imexdde_status imexdde_integrate(const imexdde_problem* problem, int order,
                                             const imexdde_integrate_options* options, imexdde_trajectory** out);
IMEXDDE_API void imexdde_trajectory_destroy(imexdde_trajectory* trajectory);

IMEXDDE_API size_t imexdde_trajectory_size(const imexdde_trajectory* trajectory);
IMEXDDE_API size_t imexdde_trajectory_dimension(const imexdde_trajectory* trajectory);
IMEXDDE_API imexdde_status imexdde_trajectory_point(const imexdde_trajectory* trajectory, size_t index, double* t,
                                                    double* y);
/* Returns 1 and sets *time if the run stopped on blow-up. */
IMEXDDE_API int imexdde_trajectory_blew_up(const imexdde_trajectory* trajectory, double* time);
/* Componentwise |y_N - exact(t_N)|, d entries. */
IMEXDDE_API imexdde_status imexdde_trajectory_final_error(const imexdde_trajectory* trajectory,
                                                          const imexdde_problem* problem, double* out);
/* metadata: newline-separated lines written as "# ..." before the header; may be NULL. */
IMEXDDE_API imexdde_status imexdde_trajectory_write_csv(const imexdde_trajectory* trajectory, const char* path,
                                                        const char* metadata);

IMEXDDE_API imexdde_status imexdde_convergence_rate(double err_h1, double err_h2, double h1, double h2, double* out);

/* ---- scalar stability ---- */

IMEXDDE_API imexdde_status imexdde_char_equation_stable(int order, double z, int z_minus_infinity, double mu_re,
                                                        double mu_im, int m, int* stable);
/* Fills n_samples entries of theta, re, im. */
IMEXDDE_API imexdde_status imexdde_gamma_curve(int order, double z, int m, int n_samples, double* theta, double* re,
                                               double* im);
IMEXDDE_API imexdde_status imexdde_sigma_z(int order, double z, double* out);
IMEXDDE_API imexdde_status imexdde_psi(int order, double z, int z_minus_infinity, double* out);
IMEXDDE_API imexdde_status imexdde_chi(int order, double r, double* out);

/* ---- field of values and step bounds ---- */

/* X is row-major d*d; im may be NULL for a real matrix. */
IMEXDDE_API imexdde_status imexdde_fov_create(const double* re, const double* im, size_t d, int n_angles,
                                              imexdde_fov** out);
/* FOV of A^{p/2-1} B A^{-p/2} for the problem's matrices. */
IMEXDDE_API imexdde_status imexdde_problem_fov(const imexdde_problem* problem, double p, int n_angles,
                                               imexdde_fov** out);
IMEXDDE_API void imexdde_fov_destroy(imexdde_fov* fov);
IMEXDDE_API size_t imexdde_fov_size(const imexdde_fov* fov);
IMEXDDE_API double imexdde_fov_radius(const imexdde_fov* fov);
IMEXDDE_API imexdde_status imexdde_fov_point(const imexdde_fov* fov, size_t index, double* theta, double* re,
                                             double* im);

enum { IMEXDDE_RULE_AUTO = 0, IMEXDDE_RULE_PROP41 = 1, IMEXDDE_RULE_THM43 = 2, IMEXDDE_RULE_THM51 = 3 };
enum { IMEXDDE_REGIME_UNCONDITIONAL = 0, IMEXDDE_REGIME_CONDITIONAL = 1, IMEXDDE_REGIME_NO_GUARANTEE = 2 };

typedef struct imexdde_step_report {
  int order;
  int rule; /* the rule actually applied, never AUTO */
  int regime;
  double r_used;
  double lambda_d;
  int has_h_star;
  double h_star;
} imexdde_step_report;

/* AUTO picks PROP41 for commuting pairs and THM51 otherwise. p and n_angles apply to THM51. */
IMEXDDE_API imexdde_status imexdde_step_bound(const imexdde_problem* problem, int order, int rule, double p,
                                              int n_angles, imexdde_step_report* out);
IMEXDDE_API imexdde_status imexdde_step_bound_matrices(const double* A, const double* B, size_t d, int order, int rule,
                                                       double p, int n_angles, imexdde_step_report* out);
IMEXDDE_API const char* imexdde_rule_name(int rule);
IMEXDDE_API const char* imexdde_regime_name(int regime);

/* ---- CSV ---- */

/* Generic numeric table; header is a comma-separated column list. footer lines follow the data. */
IMEXDDE_API imexdde_status imexdde_write_table_csv(const char* path, const char* metadata, const char* header,
                                                   const double* data, size_t rows, size_t cols, const char* footer);

#ifdef __cplusplus
}
#endif

#endif
