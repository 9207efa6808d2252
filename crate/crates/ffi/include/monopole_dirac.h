#ifndef MONOPOLE_DIRAC_H
#define MONOPOLE_DIRAC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every call.
 */
typedef enum MdStatus {
  MD_STATUS_OK = 0,
  MD_STATUS_INVALID_PARAMETER = 1,
  MD_STATUS_DEGENERATE_CHANNEL = 2,
  MD_STATUS_NOT_BOUND = 3,
  MD_STATUS_CONTINUUM_EDGE = 4,
  MD_STATUS_SPECTRUM_DIVERGENCE = 5,
  MD_STATUS_QUADRATURE_UNDERRESOLVED = 6,
  MD_STATUS_MESH_TOO_COARSE = 7,
  MD_STATUS_DOMAIN_TOO_SMALL = 8,
  MD_STATUS_IO = 9,
  MD_STATUS_FORMAT = 10,
  MD_STATUS_NULL_POINTER = 11,
  MD_STATUS_INDEX_OUT_OF_RANGE = 12,
  MD_STATUS_PANIC = 13,
} MdStatus;

typedef enum MdNonRelVariant {
  MD_NON_REL_VARIANT_PRINTED = 0,
  MD_NON_REL_VARIANT_ABSOLUTE = 1,
  MD_NON_REL_VARIANT_EXACT = 2,
} MdNonRelVariant;

/*
 Oracle eigenvalues for one channel.
 */
typedef struct MdOracleResult MdOracleResult;

/*
 A normalized bound-state spinor.
 */
typedef struct MdSpinor MdSpinor;

/*
 A finished energy sweep.
 */
typedef struct MdSweep MdSweep;

typedef struct MdParams {
  double m0;
  double c;
  double hbar;
  /*
   Signed dipole moment.
   */
  double d;
  double lambda_m;
  double kappa;
} MdParams;

/*
 `mj_numerator` is 2m_j (odd); `s` and `branch` are +1 or −1.
 */
typedef struct MdState {
  uint32_t n;
  int32_t mj_numerator;
  int32_t s;
  int32_t branch;
} MdState;

typedef struct MdSpectrum {
  double energy;
  double binding_energy;
  double eta;
  /*
   NaN at the continuum edge.
   */
  double z0;
  double xi;
  double m_s;
  double rho0;
  bool continuum_edge;
} MdSpectrum;

typedef struct MdSettingRow {
  uint8_t setting;
  int32_t mj_numerator;
  int32_t s;
  int32_t sigma;
  struct MdSpectrum spectrum;
} MdSettingRow;

typedef struct MdNonRel {
  double epsilon;
  double l;
  double eta_bar;
  double denominator;
} MdNonRel;

typedef struct MdSpinorValue {
  double upper_re;
  double upper_im;
  double lower_re;
  double lower_im;
} MdSpinorValue;

typedef struct MdOracleRow {
  uint32_t n;
  double eta2_analytic;
  double lambda;
  double extrapolated;
  double relative_error;
  double mesh_estimate;
  uint32_t sign_changes;
} MdOracleRow;

typedef struct MdSweepRow {
  double axis_value;
  uint32_t n;
  double energy;
} MdSweepRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 Valid until the next call from the same thread.
 */
const char *md_last_error_message(void);

/*
 Static name of an `MdStatus` value.
 */
const char *md_status_name(int32_t status);

/*
 E±, η and the derived channel quantities for one state.

 # Safety
 Pointers must be null or valid for the pointee type.
 */
enum MdStatus md_relativistic_energy(const struct MdParams *params_in,
                                     const struct MdState *state_in,
                                     struct MdSpectrum *result);

/*
 −4π dλ_m/(ħc).

 # Safety
 Pointers must be null or valid for the pointee type.
 */
enum MdStatus md_hmw_phase(const struct MdParams *params_in, double *phase);

/*
 The eight (m_j sign, s, σ) settings; `rows` must hold 8 entries.

 # Safety
 `rows` must be null or point to 8 writable `MdSettingRow`s.
 */
enum MdStatus md_settings_table(const struct MdParams *params_in,
                                uint32_t n,
                                int32_t mj_abs_numerator,
                                struct MdSettingRow *rows);

/*
 ε_{n,m} with the denominator chosen by an `MdNonRelVariant` value.

 # Safety
 Pointers must be null or valid for the pointee type.
 */
enum MdStatus md_nonrel_energy(const struct MdParams *params_in,
                               uint32_t n,
                               int64_t m,
                               int32_t variant,
                               struct MdNonRel *result);

/*
 L_n^α(x); zero for n < 0.

 # Safety
 `value` must be null or valid for writes.
 */
enum MdStatus md_laguerre(int64_t n, double alpha, double x, double *value);

/*
 Builds the normalized spinor of a bound state.

 # Safety
 Pointers must be null or valid for the pointee type.
 */
enum MdStatus md_spinor_new(const struct MdParams *params_in,
                            const struct MdState *state_in,
                            struct MdSpinor **handle);

/*
 Ψ_D(t, ρ, θ).

 # Safety
 `handle` must come from `md_spinor_new` and not be freed.
 */
enum MdStatus md_spinor_eval(const struct MdSpinor *handle,
                             double t,
                             double rho,
                             double theta,
                             struct MdSpinorValue *value);

/*
 Normalized radial function R_s(ρ), `s` = +1 or −1.

 # Safety
 `handle` must come from `md_spinor_new` and not be freed.
 */
enum MdStatus md_spinor_radial(const struct MdSpinor *handle, int32_t s, double rho, double *value);

/*
 # Safety
 `handle` must be null or come from `md_spinor_new`, and is freed once.
 */
void md_spinor_free(struct MdSpinor *handle);

/*
 Solves the lowest `levels` states of the (m_j, s) channel with the
 finite-difference oracle on `mesh` points.

 # Safety
 Pointers must be null or valid for the pointee type.
 */
enum MdStatus md_oracle_solve(const struct MdParams *params_in,
                              int32_t mj_numerator,
                              int32_t s,
                              size_t levels,
                              size_t mesh,
                              struct MdOracleResult **handle);

/*
 Number of rows in an oracle result; 0 for a null handle.

 # Safety
 `handle` must be null or come from `md_oracle_solve`.
 */
size_t md_oracle_len(const struct MdOracleResult *handle);

/*
 # Safety
 `handle` must come from `md_oracle_solve` and not be freed.
 */
enum MdStatus md_oracle_row(const struct MdOracleResult *handle,
                            size_t index,
                            struct MdOracleRow *row);

/*
 # Safety
 `handle` must be null or come from `md_oracle_solve`, and is freed once.
 */
void md_oracle_free(struct MdOracleResult *handle);

/*
 Runs the default sweep of figure 1–4.

 # Safety
 `handle` must be null or valid for writes.
 */
enum MdStatus md_sweep_figure(uint8_t figure, struct MdSweep **handle);

/*
 # Safety
 `handle` must be null or come from `md_sweep_figure`.
 */
size_t md_sweep_len(const struct MdSweep *handle);

/*
 # Safety
 `handle` must come from `md_sweep_figure` and not be freed.
 */
enum MdStatus md_sweep_row(const struct MdSweep *handle, size_t index, struct MdSweepRow *row);

/*
 # Safety
 `handle` must be null or come from `md_sweep_figure`, and is freed once.
 */
void md_sweep_free(struct MdSweep *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOPOLE_DIRAC_H */
