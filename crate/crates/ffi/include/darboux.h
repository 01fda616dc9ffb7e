#ifndef DARBOUX_H
#define DARBOUX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  DARBOUX_STATUS_OK = 0,
  DARBOUX_STATUS_NULL_POINTER = 1,
  DARBOUX_STATUS_INVALID_ARGUMENT = 2,
  DARBOUX_STATUS_PARSE_ERROR = 3,
  /**
   * The point lies outside a chart domain or off a level set, or the
   * surface is not regular there.
   */
  DARBOUX_STATUS_DOMAIN_ERROR = 4,
  /**
   * Singular point of the isophote field.
   */
  DARBOUX_STATUS_SINGULAR = 5,
  DARBOUX_STATUS_NO_ISOPHOTE = 6,
  DARBOUX_STATUS_DEGENERATE = 7,
  /**
   * Index past the end of a trace.
   */
  DARBOUX_STATUS_OUT_OF_RANGE = 8,
  DARBOUX_STATUS_PANIC = 9,
} DarbouxStatus;

typedef enum {
  DARBOUX_TERMINATION_LENGTH_REACHED = 0,
  DARBOUX_TERMINATION_CLOSED = 1,
  DARBOUX_TERMINATION_LEFT_DOMAIN = 2,
  DARBOUX_TERMINATION_SINGULAR_POINT = 3,
  DARBOUX_TERMINATION_ERROR = 4,
} DarbouxTermination;

/**
 * Opaque surface handle holding both representations where available.
 */
typedef struct DarbouxSurface DarbouxSurface;

/**
 * Opaque trace handle.
 */
typedef struct DarbouxTrace DarbouxTrace;

/**
 * Trace settings; obtain defaults from [`darboux_trace_config_default`].
 */
typedef struct {
  double step;
  double length;
  /**
   * `+1` or `-1`.
   */
  int32_t branch;
  double closure_tol;
  double eps_sing;
  double projection_tol;
  bool project_isophote;
} DarbouxTraceConfig;

/**
 * One trace sample. `has_chart` tells whether `u`, `v` are meaningful;
 * `res_tangency` and `res_level` are NaN on chart traces.
 */
typedef struct {
  double s;
  double point[3];
  bool has_chart;
  double u;
  double v;
  double tangent[3];
  double angle_dot;
  double kg;
  double kn;
  double tg;
  double res_constraint;
  double res_unit_speed;
  double res_tangency;
  double res_level;
} DarbouxTraceSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into this library from the same thread.
 */
const char *darboux_last_error_message(void);

/**
 * Parse a surface spec such as `builtin:torus?R=2&r=0.5`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
DarbouxStatus darboux_surface_parse(const char *spec, DarbouxSurface **out);

/**
 * # Safety
 * `surface` must come from [`darboux_surface_parse`] or be null.
 */
void darboux_surface_free(DarbouxSurface *surface);

/**
 * Defaults: `h = 1e-3`, `L = 10`, plus branch, closure tolerance `1e-6`,
 * `ε_sing = 1e-10`, projection tolerance `1e-12`, no level projection.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
DarbouxStatus darboux_trace_config_default(DarbouxTraceConfig *out);

/**
 * Refine a chart guess `(u, v)` onto the isophote `⟨U, d⟩ = cos phi`.
 *
 * # Safety
 * `axis` must point to three doubles; `out_u`, `out_v` must be valid.
 */
DarbouxStatus darboux_find_seed_chart(const DarbouxSurface *surface,
                                      const double *axis,
                                      double phi,
                                      double u,
                                      double v,
                                      double *out_u,
                                      double *out_v);

/**
 * Refine a point guess onto the level set and the isophote.
 *
 * # Safety
 * `axis`, `guess` must point to three doubles; `out` to room for three.
 */
DarbouxStatus darboux_find_seed_point(const DarbouxSurface *surface,
                                      const double *axis,
                                      double phi,
                                      const double *guess,
                                      double *out);

/**
 * Trace from a chart seed already on the isophote. A null `config` means defaults.
 *
 * # Safety
 * `axis` must point to three doubles; `config` is null or valid; `out` valid.
 */
DarbouxStatus darboux_trace_chart(const DarbouxSurface *surface,
                                  const double *axis,
                                  double phi,
                                  double u,
                                  double v,
                                  const DarbouxTraceConfig *config,
                                  DarbouxTrace **out);

/**
 * Trace from a point seed on the level set and the isophote.
 *
 * # Safety
 * `axis`, `seed` must point to three doubles; `config` is null or valid; `out` valid.
 */
DarbouxStatus darboux_trace_point(const DarbouxSurface *surface,
                                  const double *axis,
                                  double phi,
                                  const double *seed,
                                  const DarbouxTraceConfig *config,
                                  DarbouxTrace **out);

/**
 * # Safety
 * `trace` must come from a trace function or be null.
 */
void darboux_trace_free(DarbouxTrace *trace);

/**
 * Number of samples, or 0 for a null handle.
 *
 * # Safety
 * `trace` must be null or valid.
 */
size_t darboux_trace_len(const DarbouxTrace *trace);

/**
 * # Safety
 * `trace` must be valid; `out` must be valid.
 */
DarbouxStatus darboux_trace_termination(const DarbouxTrace *trace, DarbouxTermination *out);

/**
 * # Safety
 * `trace` must be valid; `out` must be valid.
 */
DarbouxStatus darboux_trace_sample(const DarbouxTrace *trace,
                                   size_t index,
                                   DarbouxTraceSample *out);

/**
 * Classify a curve and return the JSON report in `*json_out`, to be
 * released with [`darboux_string_free`]. `curve` uses the CLI's curve
 * spec syntax over the parameter range `[t0, t1]`.
 *
 * # Safety
 * `surface`, `curve` must be NUL-terminated strings; `json_out` valid.
 */
DarbouxStatus darboux_classify(const char *surface,
                               const char *curve,
                               double t0,
                               double t1,
                               size_t samples,
                               double c,
                               char **json_out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void darboux_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DARBOUX_H */
