/* ncw.h
 * C interface to the Wehrl-entropy nonclassicality library.
 *
 * All objects are opaque handles created and destroyed here; every fallible
 * call returns ncw_status and leaves a human-readable detail in a
 * thread-local buffer readable via ncw_last_error(). Expression syntax and
 * evaluation errors also record a byte offset into the source text.
 *
 * Passing dim = 0 to a constructor selects the dimension automatically:
 * start at 64 and double until the state's Fock tail fits the tail
 * tolerance (default 1e-10). A positive dim is used verbatim, so truncation
 * failures surface as NCW_ERR_DIMENSION_TOO_SMALL.
 */

#ifndef NCW_H
#define NCW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncw_status {
    NCW_OK = 0,
    NCW_ERR_INVALID_PARAMETER,
    NCW_ERR_DIMENSION_TOO_SMALL,
    NCW_ERR_INDEX_OUT_OF_RANGE,
    NCW_ERR_R_TOO_LARGE,
    NCW_ERR_DEGENERATE_INPUT,
    NCW_ERR_UNCERTAINTY_VIOLATION,
    NCW_ERR_SUPPORT_MISMATCH,
    NCW_ERR_NON_CONVERGENCE,
    NCW_ERR_SYNTAX,
    NCW_ERR_EVAL,
    NCW_ERR_NULL_POINTER,
    NCW_ERR_INTERNAL
} ncw_status;

typedef struct ncw_state ncw_state;
typedef struct ncw_rule ncw_rule;

const char* ncw_version(void);
const char* ncw_status_name(ncw_status s);
const char* ncw_last_error(void);
size_t ncw_last_error_offset(void);

/* ---- states ---- */

/* Parse and evaluate a state expression, e.g. "A^2 S(0.5) vac".
 * tail_tol <= 0 selects the default (1e-10). */
ncw_status ncw_state_parse(const char* text, int dim, double tail_tol,
                           ncw_state** out);

ncw_status ncw_state_coherent(double re, double im, int dim, ncw_state** out);
ncw_status ncw_state_fock(int m, int dim, ncw_state** out);
ncw_status ncw_state_thermal(double nbar, int dim, ncw_state** out);
ncw_status ncw_state_squeezed_coherent(double r, double theta, double alpha_re,
                                       double alpha_im, int dim, ncw_state** out);
ncw_status ncw_state_squeezed_number(double r, double theta, int m, int dim,
                                     ncw_state** out);
ncw_status ncw_state_photon_added_squeezed_vacuum(double r, double theta, int m,
                                                  int dim, ncw_state** out);
/* odd_parity: 0 even, nonzero odd */
ncw_status ncw_state_cat(double amplitude, int odd_parity, int dim, ncw_state** out);
ncw_status ncw_state_squeezed_thermal(double nbar, double r, double theta, int dim,
                                      ncw_state** out);

ncw_status ncw_state_add_photons(const ncw_state* in, int m, ncw_state** out);
ncw_status ncw_state_displace(const ncw_state* in, double re, double im,
                              ncw_state** out);
ncw_status ncw_state_rotate(const ncw_state* in, double phi, ncw_state** out);

void ncw_state_free(ncw_state* s);

int ncw_state_dim(const ncw_state* s);
/* 1 when the state is held as a pure amplitude vector, 0 for a density
 * operator. */
int ncw_state_is_vector(const ncw_state* s);
double ncw_state_tail_mass(const ncw_state* s);
double ncw_state_purity(const ncw_state* s);
double ncw_state_mean_photon(const ncw_state* s);
/* out_mean = {<x>, <p>}, out_cov = {Vxx, Vxp, Vpp} */
ncw_status ncw_state_moments(const ncw_state* s, double out_mean[2],
                             double out_cov[3]);
/* Amplitude <n|psi>; vectors only. */
ncw_status ncw_state_amplitude(const ncw_state* s, int n, double* re, double* im);

/* ---- quadrature ---- */

ncw_status ncw_rule_build(double energy_scale, double tol, ncw_rule** out);
ncw_status ncw_rule_for_state(const ncw_state* s, double tol, ncw_rule** out);
void ncw_rule_free(ncw_rule* r);
int ncw_rule_radial_count(const ncw_rule* r);
int ncw_rule_angular_count(const ncw_rule* r);
double ncw_rule_radius(const ncw_rule* r);

ncw_status ncw_wehrl_entropy(const ncw_state* s, const ncw_rule* r, double* h,
                             double* refinement_delta);
ncw_status ncw_q_value(const ncw_state* s, double alpha_re, double alpha_im,
                       double* q);

/* ---- the measure ---- */

typedef struct ncw_nc_result {
    double wehrl;
    double reference_entropy;
    double value;
    int branch_mixed; /* 0 pure, 1 mixed */
    double nbar_ref;  /* meaningful on the mixed branch */
    double tail_mass;
    double convergence_delta;
    double neg_q_clamp;
    double value_clamp;
    double nbar_clamp;
} ncw_nc_result;

ncw_status ncw_nc(const ncw_state* s, const ncw_rule* r, ncw_nc_result* out);

/* Closed forms; return NaN and set the error state on invalid input. */
double ncw_closed_form_fock(int m);
double ncw_closed_form_squeezed(double r);
double ncw_closed_form_pats(int m);
double ncw_closed_form_squeezed_thermal(double nbar, double r);

/* ---- verification suite ---- */

typedef void (*ncw_verify_cb)(const char* name, int pass, const char* detail,
                              void* user);
/* dim = 0 chooses dimensions automatically; a positive dim is forced.
 * Returns through out_failures the number of failed checks. */
ncw_status ncw_verify_run(int dim, double tol, ncw_verify_cb cb, void* user,
                          int* out_failures);

#ifdef __cplusplus
}
#endif

#endif /* NCW_H */
