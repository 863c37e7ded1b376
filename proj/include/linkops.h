/* C interface to the linking-operator library.
 *
 * All functions return LK_OK (0) on success or a nonzero error code; the
 * thread-local message behind lk_last_error() describes the most recent
 * failure on the calling thread. Objects returned through out-parameters
 * are owned by the caller and released with the matching free function.
 *
 * rho = INFINITY (math.h) selects the limiting operators; it is spelled
 * "inf" in every text interface.
 */
#ifndef LINKOPS_H
#define LINKOPS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum lk_status {
  LK_OK = 0,
  LK_ERR_CONFIG = 2,  /* invalid parameter tuple or domain violation */
  LK_ERR_NUMERIC = 3, /* quadrature / truncation failure */
  LK_ERR_PARSE = 4,   /* malformed expression */
  LK_ERR_OTHER = 5
};

typedef struct lk_config {
  double c;
  double n;
  double rho; /* INFINITY for the limiting operators */
  int k;
} lk_config;

typedef struct lk_tolerances {
  double quad_rel;
  double series_tail;
  double check_slack;
} lk_tolerances;

enum lk_kind {
  LK_KIND_BASKAKOV_INF = 0,
  LK_KIND_GENUINE_DURRMEYER = 1,
  LK_KIND_LINKING = 2,
  LK_KIND_V = 3,
  LK_KIND_D = 4,
  LK_KIND_V_INF = 5,
  LK_KIND_D_INF = 6,
  LK_KIND_BERNSTEIN = 7
};

typedef struct lk_funcspec lk_funcspec; /* opaque */

const char* lk_version(void);
const char* lk_last_error(void);
lk_tolerances lk_default_tolerances(void);

/* Validates the (c, n, rho, k) tuple; LK_ERR_CONFIG on violation. */
int lk_config_validate(const lk_config* cfg);

/* --- function specs ------------------------------------------------- */

int lk_funcspec_parse(const char* expr, lk_funcspec** out);
/* ids: "monomial", "exp_decay", "abs_shift", "sin_scale" */
int lk_funcspec_catalog(const char* id, double param, lk_funcspec** out);
void lk_funcspec_free(lk_funcspec* f);
int lk_funcspec_eval(const lk_funcspec* f, double t, double* out);
int lk_funcspec_set_d2sup(lk_funcspec* f, double d2sup);
int lk_funcspec_set_growth(lk_funcspec* f, int growth_order);

/* --- operator evaluation -------------------------------------------- */

int lk_operator_eval(int kind, const lk_config* cfg, const lk_funcspec* f,
                     double x, const lk_tolerances* tol, double* out);
int lk_operator_eval_grid(int kind, const lk_config* cfg,
                          const lk_funcspec* f, const double* xs,
                          size_t n_xs, const lk_tolerances* tol,
                          double* out);

/* Coefficient functional A_{n,rho,j}^{(k)}(f); quadrature_oracle != 0
 * forces the adaptive-quadrature route. */
int lk_a_functional(const lk_config* cfg, long j, const lk_funcspec* f,
                    const lk_tolerances* tol, int quadrature_oracle,
                    double* out);

/* --- closed forms ---------------------------------------------------- */

int lk_barycenter(const lk_config* cfg, long j, double* out);
int lk_second_moment_a(const lk_config* cfg, long j, double* out);
int lk_variance_a(const lk_config* cfg, long j, double* out);
int lk_e_closed(const lk_config* cfg, double x, double* out);
int lk_varx_closed(const lk_config* cfg, double x, double* out);

/* Images of e_0, e_1, e_2 under V as coefficient triples in x
 * (value = p[0] + p[1] x + p[2] x^2), written to coeffs[deg][i]. */
int lk_monomial_images(const lk_config* cfg, double coeffs[3][3]);

/* --- basis ------------------------------------------------------------ */

int lk_basis_p(double c, double n, long j, double x, double* out);
/* Any of the out-pointers may be NULL to skip that quantity. */
int lk_squared_sum(double c, double n, double x, const lk_tolerances* tol,
                   double* series, double* integral, double* bound);
int lk_tsallis_entropy(double c, double n, double x,
                       const lk_tolerances* tol, double* out);

/* --- verification ------------------------------------------------------ */

/* Runs a suite ("decomposition", "sandwich", "thm31", "thm32", "thm33",
 * "section4", "covariance", "entropy-bound", "all") over a line-oriented
 * parameter grid "c n rho k" ("inf" accepted for rho). params_text == NULL
 * selects the built-in default grid. On success *json_out holds the
 * schema-1 report (free with lk_string_free); *n_failed / *n_inconclusive
 * receive case counts when non-NULL. */
int lk_verify(const char* suite, const char* params_text,
              const lk_tolerances* tol, char** json_out, long* n_failed,
              long* n_inconclusive);
void lk_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LINKOPS_H */
