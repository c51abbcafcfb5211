/* exos — extreme order statistics of dependent multiple-outlier scale models.
 *
 * C API over the core library: opaque handles, integer status codes, and
 * thread-local error messages. All functions returning exos_status give
 * EXOS_OK on success; on failure exos_last_error() describes the problem.
 */
#ifndef EXOS_H
#define EXOS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum exos_status {
  EXOS_OK = 0,
  EXOS_E_INVALID = 1,  /* invalid argument / unknown identifier */
  EXOS_E_PARSE = 2,    /* scenario file could not be parsed */
  EXOS_E_EVAL = 3,     /* numerical evaluation failed */
  EXOS_E_IO = 4,       /* file could not be written */
  EXOS_E_INTERNAL = 5
} exos_status;

typedef enum exos_side { EXOS_SIDE_X = 0, EXOS_SIDE_Y = 1 } exos_side;

typedef enum exos_curve {
  EXOS_CURVE_CDF = 0,
  EXOS_CURVE_SF = 1,
  EXOS_CURVE_PDF = 2,
  EXOS_CURVE_HAZARD = 3,
  EXOS_CURVE_REV_HAZARD = 4
} exos_curve;

typedef enum exos_relation {
  EXOS_REL_ST = 0,
  EXOS_REL_HR = 1,
  EXOS_REL_RH = 2,
  EXOS_REL_STAR = 3,
  EXOS_REL_LORENZ = 4
} exos_relation;

typedef enum exos_verdict {
  EXOS_HOLDS = 0,
  EXOS_FAILS = 1,
  EXOS_INCONCLUSIVE = 2
} exos_verdict;

/* Grid override; any field <= 0 (or spacing < 0) keeps the default. */
typedef struct exos_grid_opts {
  double lo;
  double hi;
  int count;
  int log_spacing; /* 1 log, 0 linear, -1 default */
} exos_grid_opts;

typedef struct exos_order_result {
  int status;          /* exos_verdict */
  int has_witness;
  double witness;      /* x for st/hr/rh, u for star/lorenz */
  double margin;       /* slack-normalised headroom; holds needs >= -1 */
  long excluded;       /* grid points excluded for numerical reasons */
  char claim[96];      /* e.g. "Y(5,6) <=_st X(1,11)" */
  char note[128];
} exos_order_result;

typedef struct exos_audit_stats {
  int scenarios;
  int reports;
  int red_flags;
} exos_audit_stats;

typedef struct exos_scenario exos_scenario;
typedef struct exos_report exos_report;

/* Last error message for the calling thread ("" when none). */
const char* exos_last_error(void);
const char* exos_version(void);

/* --- scenarios ---------------------------------------------------------- */

exos_status exos_scenario_from_file(const char* path, exos_scenario** out);
exos_status exos_scenario_from_string(const char* text, exos_scenario** out);
/* Built-in scenarios: ex_3_1, ce_3_1, ex_3_2, ex_3_4, ce_3_2, ex_3_5. */
exos_status exos_scenario_from_builtin(const char* name, exos_scenario** out);
exos_status exos_scenario_to_file(const exos_scenario* s, const char* path);
void exos_scenario_free(exos_scenario* s);

int exos_builtin_count(void);
const char* exos_builtin_name(int index);
/* Theorem id a built-in scenario illustrates (NULL if name unknown). */
const char* exos_builtin_theorem(const char* name);

/* 1 when the scenario compares maxima, 0 for minima. */
exos_status exos_scenario_is_max(const exos_scenario* s, int* out);

/* --- curve evaluation ---------------------------------------------------- */

/* Writes CSV "x,value" (17 significant digits) to out_path. Grid points where
 * the quantity is undefined are skipped. */
exos_status exos_eval_csv(const exos_scenario* s, exos_side side, exos_curve what,
                          const exos_grid_opts* grid, const char* out_path);

/* Fills up to capacity points; *out_n receives the count written. */
exos_status exos_eval_curve(const exos_scenario* s, exos_side side, exos_curve what,
                            const exos_grid_opts* grid, double* xs, double* ys, size_t capacity,
                            size_t* out_n);

/* --- stochastic-order checks --------------------------------------------- */

/* Checks the paper-oriented claim for the scenario: maxima compare
 * Y <= X, minima X <= Y (star/lorenz always Y <= X). slack_override <= 0
 * keeps the default probability slack of 1e-8. */
exos_status exos_compare(const exos_scenario* s, exos_relation rel, const exos_grid_opts* grid,
                         double slack_override, exos_order_result* out);

/* --- theorem reports ------------------------------------------------------ */

int exos_theorem_count(void);
const char* exos_theorem_id(int index);

exos_status exos_theorem_eval(const exos_scenario* s, const char* theorem_id, exos_report** out);
void exos_report_free(exos_report* r);

const char* exos_report_theorem(const exos_report* r);
const char* exos_report_claim(const exos_report* r);
int exos_report_hypothesis_count(const exos_report* r);
const char* exos_report_hypothesis_name(const exos_report* r, int index);
/* 0 pass, 1 fail, 2 inconclusive; -1 on bad index. */
int exos_report_hypothesis_status(const exos_report* r, int index);
double exos_report_hypothesis_margin(const exos_report* r, int index);
/* Witness of a failing hypothesis; returns 0 and sets *witness = NaN when
 * there is none. Two-argument witnesses fill both slots. */
int exos_report_hypothesis_witness(const exos_report* r, int index, double* witness,
                                   double* witness2);
exos_status exos_report_conclusion(const exos_report* r, exos_order_result* out);
int exos_report_all_pass(const exos_report* r);
int exos_report_consistent(const exos_report* r);

/* --- reproduction & audit ------------------------------------------------- */

/* Writes the plotted quantities of a built-in example to out_dir as
 * <name>.csv and fills `summary` with one line stating the expected
 * behaviour and whether it was observed (observed=yes/no). */
exos_status exos_reproduce(const char* example_name, const char* out_dir, char* summary,
                           size_t summary_cap);

typedef void (*exos_log_fn)(const char* line, void* user);

/* Soundness audit over the built-ins plus n_random random scenarios. */
exos_status exos_audit(unsigned long long seed, int n_random, exos_log_fn log, void* user,
                       exos_audit_stats* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EXOS_H */
