/* C API for the stogram library: stochastic observability and
 * constructability Gramians of discrete-time linear systems.
 *
 * Systems are held behind opaque handles. All functions return SG_OK on
 * success; on failure sg_last_error() gives a thread-local message. */

#ifndef STOGRAM_H
#define STOGRAM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sg_system sg_system;

typedef enum {
  SG_OK = 0,
  SG_ERR_IO = 1,
  SG_ERR_PARSE = 2,        /* expression or document syntax */
  SG_ERR_SCHEMA = 3,
  SG_ERR_VALIDATION = 4,   /* system invariants violated */
  SG_ERR_RANGE = 5,        /* window/index out of range */
  SG_ERR_UNSUPPORTED = 6,  /* bad kind/method combination */
  SG_ERR_NUMERIC = 7,      /* singularity or factorization failure */
  SG_ERR_NO_CONVERGENCE = 8,
  SG_ERR_INVALID_ARGUMENT = 9
} sg_status;

typedef enum { SG_KIND_OBS = 0, SG_KIND_CONS = 1 } sg_gramian_kind;

typedef enum {
  SG_METHOD_DIRECT_THM1 = 0,
  SG_METHOD_DIRECT_MFORM = 1,
  SG_METHOD_RECURSIVE_DUAL = 2,
  SG_METHOD_NO_NOISE = 3
} sg_method;

/* Thread-local message for the most recent failure in this thread. */
const char* sg_last_error(void);

/* Releases a string returned through a char** out-parameter. */
void sg_string_free(char* s);

/* --- systems --------------------------------------------------------- */

sg_status sg_system_load_file(const char* path, sg_system** out);
sg_status sg_system_load_json(const char* json_text, sg_system** out);
void sg_system_free(sg_system* sys);

int sg_system_state_dim(const sg_system* sys);
int sg_system_meas_dim(const sg_system* sys);
int sg_system_horizon(const sg_system* sys);
int sg_system_is_lti(const sg_system* sys);

/* Validation report; *ok is 1 iff all invariants hold. *report (optional)
 * receives a human-readable summary, freed with sg_string_free. */
sg_status sg_system_validate(const sg_system* sys, int* ok, char** report);

/* --- Gramians ---------------------------------------------------------- */

typedef struct {
  double sym_err;      /* relative asymmetry of the raw result */
  double min_eig;      /* minimum eigenvalue after symmetrization */
  long long wall_ns;   /* wall time of the dominating solve */
} sg_gramian_stats;

/* Writes the n*n row-major FIM into fim (caller-allocated). stats optional. */
sg_status sg_gramian(const sg_system* sys, sg_gramian_kind kind, sg_method method,
                     int w, double* fim, sg_gramian_stats* stats);

/* Per-step iterates of a recursive method: w matrices of n*n entries written
 * contiguously into trace (caller allocates w*n*n doubles). min_eigs, when
 * non-NULL, receives w per-step minimum eigenvalues. */
sg_status sg_gramian_trace(const sg_system* sys, sg_gramian_kind kind,
                           sg_method method, int w, double* trace,
                           double* min_eigs);

/* --- experiments ------------------------------------------------------- */

/* Sweep w = 1..w_max for comma-separated methods (NULL = the three
 * process-noise methods); CSV text returned through *csv. */
sg_status sg_sweep_csv(const sg_system* sys, int w_max, const char* methods,
                       int threads, char** csv);

/* Steady-state LTI observability Gramian by fixed-point iteration. Returns
 * SG_ERR_NO_CONVERGENCE (with the best iterate still written) if max_iter is
 * exhausted. */
sg_status sg_dare(const sg_system* sys, double tol, int max_iter, double* f_inf,
                  int* iterations, double* residual, int* converged);

/* Built-in example experiments; CSV files are written into out_dir. */
sg_status sg_reproduce_fig2(const char* out_dir, int threads);
sg_status sg_reproduce_fig1(const char* out_dir, int horizon);

#ifdef __cplusplus
}
#endif

#endif /* STOGRAM_H */
