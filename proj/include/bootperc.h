/* C interface to the bootstrap percolation engine.
 *
 * Every function that can fail returns a bp_status; outputs are written
 * through pointers only on BP_OK. bp_last_error() describes the most recent
 * failure on the calling thread. Handles are created and released with the
 * matching _free call; passing NULL to a _free is a no-op.
 */
#ifndef BOOTPERC_H
#define BOOTPERC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bp_status {
    BP_OK = 0,
    BP_EINVAL = 1,   /* argument rejected */
    BP_ESTATE = 2,   /* internal invariant violated */
    BP_ERUNTIME = 3, /* operation failed (e.g. search did not converge) */
    BP_ENOMEM = 4,
    BP_EUNKNOWN = 5
} bp_status;

enum { BP_MODIFIED = 0, BP_STANDARD = 1 };

typedef struct bp_rule {
    int family; /* BP_MODIFIED or BP_STANDARD */
    int delta;  /* number of constrained axes */
} bp_rule;

typedef struct bp_region bp_region;
typedef struct bp_config bp_config;

typedef struct bp_estimate {
    double point;
    double ci_low;
    double ci_high;
    uint64_t trials;
    uint64_t seed;
} bp_estimate;

typedef struct bp_bound_value {
    int divergent;
    double value;
} bp_bound_value;

typedef struct bp_bound_report {
    int d, m, n, ell;
    double p;
    bp_estimate F_hat, chi_hat, f_hat;
    bp_bound_value bound;              /* at the point estimates */
    bp_bound_value bound_conservative; /* at the upper confidence limits */
    int vacuous;
    int holds;
    int holds_conservative;
} bp_bound_report;

typedef struct bp_scaling_point {
    uint64_t L;
    double p_half;
    double scaled;
    double width;
} bp_scaling_point;

typedef struct bp_bisect_stats {
    uint64_t probes;
    uint64_t total_trials;
    int capped;
} bp_bisect_stats;

typedef struct bp_iter_exp_result {
    int saturated;
    double value;
    double log2_value;
    int layers_above;
} bp_iter_exp_result;

const char* bp_version(void);
const char* bp_last_error(void);

void bp_set_worker_count(int workers);
int bp_worker_count(void);

/* Regions and configurations. */
bp_status bp_region_cube(int d, int delta, int64_t side, const int64_t* origin_or_null,
                         bp_region** out);
bp_status bp_region_face(int d, int64_t side, const int* axes, int n_axes, bp_region** out);
void bp_region_free(bp_region* r);
bp_status bp_region_volume(const bp_region* r, uint64_t* out);
bp_status bp_region_dim(const bp_region* r, int* ambient, int* effective);

bp_status bp_config_new(const bp_region* r, bp_config** out);
bp_status bp_config_full(const bp_region* r, bp_config** out);
bp_status bp_config_random_fill(const bp_region* r, double p, uint64_t master_seed,
                                uint64_t stream_index, bp_config** out);
void bp_config_free(bp_config* c);
bp_status bp_config_volume(const bp_config* c, uint64_t* out);
bp_status bp_config_count(const bp_config* c, uint64_t* out);
bp_status bp_config_test(const bp_config* c, uint64_t index, int* out);
bp_status bp_config_set(bp_config* c, uint64_t index);

/* Dynamics. */
bp_status bp_step(bp_rule rule, const bp_config* w, bp_config** out);
bp_status bp_close(bp_rule rule, const bp_config* w, bp_config** out_closure,
                   uint64_t* rounds_or_null, uint64_t* sites_touched_or_null);
bp_status bp_is_internally_spanned(bp_rule rule, const bp_config* w, int* out);
bp_status bp_exact_spanning_probability(bp_rule rule, const bp_region* r, double p,
                                        double* out);

/* Structure analysis. */
bp_status bp_decompose(bp_rule rule, const bp_config* w, int64_t a, uint64_t* diameter,
                       uint64_t* volume, uint64_t* merges);
bp_status bp_slice_report(bp_rule rule, const bp_config* w, int axis, int64_t n,
                          int force_standard, int* dominated, int* full_flags,
                          uint64_t* slice_volumes_or_null, size_t cap, size_t* n_slices);

/* Analytic bounds. */
bp_status bp_H(double chi, int r, bp_bound_value* out);
bp_status bp_lemma6_bound(int ell, int m, int d, double F_hat, double chi_hat,
                          bp_bound_value* out, double* terms_or_null, size_t terms_cap,
                          size_t* terms_written_or_null);
bp_status bp_exact_I1(uint64_t L, double p, double* out);
bp_status bp_iter_exp(int n, double x, bp_iter_exp_result* out);
double bp_threshold_constant(void);

/* Monte Carlo estimators. */
bp_status bp_estimate_I(bp_rule rule, const bp_region* r, double p, uint64_t trials,
                        uint64_t seed, bp_estimate* out);
bp_status bp_estimate_f(bp_rule rule, const bp_region* r, double p, uint64_t trials,
                        uint64_t seed, const int64_t* x, const int64_t* y, bp_estimate* out);
bp_status bp_estimate_chi(bp_rule rule, int delta, uint64_t n, double p, uint64_t trials,
                          uint64_t seed, bp_estimate* out);
bp_status bp_estimate_F(bp_rule rule, int delta, uint64_t m, uint64_t n, double p,
                        uint64_t trials, uint64_t seed, bp_estimate* out);
bp_status bp_bisect_p_alpha(bp_rule rule, const bp_region* r, double alpha, double tol,
                            uint64_t trials_per_probe, uint64_t seed, double* out_p,
                            bp_bisect_stats* stats_or_null);
/* out_rows holds n_L entries; out_levels (optional) holds n_L*n_alpha entries,
 * row-major by L, columns ordered by ascending alpha. */
bp_status bp_sweep_scaling(bp_rule rule, int d, const uint64_t* L_list, size_t n_L,
                           const double* alphas, size_t n_alpha, uint64_t trials,
                           uint64_t seed, bp_scaling_point* out_rows,
                           double* out_levels_or_null);
bp_status bp_bound_vs_estimate(int family, int d, int m, int n, double p, const int64_t* x,
                               const int64_t* y, uint64_t trials, uint64_t seed,
                               bp_bound_report* out);

#ifdef __cplusplus
}
#endif

#endif /* BOOTPERC_H */
