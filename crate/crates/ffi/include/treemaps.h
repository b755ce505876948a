#ifndef TREEMAPS_H
#define TREEMAPS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. `Ok` is zero.
typedef enum TmStatus {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_ARGUMENT = 1,
  TM_STATUS_INVALID_UTF8 = 2,
  TM_STATUS_SYNTAX = 3,
  TM_STATUS_MODULUS = 4,
  TM_STATUS_NON_ADMISSIBLE = 5,
  TM_STATUS_INVALID_ARGUMENT = 6,
  // A law suite or kernel check ran and reported a failure.
  TM_STATUS_CHECK_FAILED = 7,
  TM_STATUS_INTERNAL = 8,
} TmStatus;

// Opaque handle to a rational combination of rooted forests.
typedef struct TmForest TmForest;

// Opaque handle to a noncommutative polynomial at a fixed modulus.
typedef struct TmPoly TmPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call on this thread.
const char *tm_last_error(void);

// Releases a string returned by this library.
// Requires: `s` is null or was returned by this library and not yet freed.
void tm_string_free(char *s);

// Parses a forest sum such as `[] [] - 2*[[]]`.
// Requires: `src` is a nul-terminated string; `out` is writable.
enum TmStatus tm_forest_parse(const char *src, struct TmForest **out);

// Requires: `f` is null or a live forest handle.
void tm_forest_free(struct TmForest *f);

// Requires: `f` is a live forest handle; `out` is writable.
enum TmStatus tm_forest_to_string(const struct TmForest *f, char **out);

// Coproduct, rendered as text since tensors have no handle type.
// Requires: `f` is a live forest handle; `out` is writable.
enum TmStatus tm_coproduct(const struct TmForest *f, char **out);

// Requires: `f` is a live forest handle; `out` is writable.
enum TmStatus tm_antipode(const struct TmForest *f, struct TmForest **out);

// Parses a polynomial such as `x y0 y0 - x x y0` at modulus `r`.
// Requires: `src` is a nul-terminated string; `out` is writable.
enum TmStatus tm_poly_parse(const char *src, uint32_t r, struct TmPoly **out);

// Requires: `p` is null or a live polynomial handle.
void tm_poly_free(struct TmPoly *p);

// Modulus of a polynomial, or 0 for a null handle.
// Requires: `p` is null or a live polynomial handle.
uint32_t tm_poly_modulus(const struct TmPoly *p);

// Requires: `p` is a live polynomial handle; `out` is writable.
enum TmStatus tm_poly_to_string(const struct TmPoly *p, char **out);

// Applies the tree map of `f` to `p`, or its τ-conjugate when `tau` is set.
// Requires: `f` and `p` are live handles; `out` is writable.
enum TmStatus tm_rtm_apply(const struct TmForest *f,
                           const struct TmPoly *p,
                           bool tau,
                           struct TmPoly **out);

// `F_f`, a polynomial at modulus 1.
// Requires: `f` is a live forest handle; `out` is writable.
enum TmStatus tm_fpoly(const struct TmForest *f, struct TmPoly **out);

// `G_f`, a polynomial at modulus 1.
// Requires: `f` is a live forest handle; `out` is writable.
enum TmStatus tm_gpoly(const struct TmForest *f, struct TmPoly **out);

// Harmonic product; both factors must share a modulus.
// Requires: `a` and `b` are live handles; `out` is writable.
enum TmStatus tm_harmonic(const struct TmPoly *a, const struct TmPoly *b, struct TmPoly **out);

// `v ⋄_s w` for `s = exp(2πi s_j / r)`, `v` at modulus 1 and `w` at modulus `r`.
// Requires: `v` and `w` are live handles; `out` is writable.
enum TmStatus tm_diamond(uint32_t s_j,
                         const struct TmPoly *v,
                         const struct TmPoly *w,
                         struct TmPoly **out);

// Evaluates `L(k; s)` for an index `k1,..;j1,..` at modulus `r`.
// Requires: `index` is a nul-terminated string; the output pointers are writable.
enum TmStatus tm_eval(const char *index,
                      uint32_t r,
                      size_t max_terms,
                      double *re,
                      double *im,
                      double *error);

// Evaluates `p` numerically. Returns `CheckFailed` when `p` does not
// numerically vanish; the outputs are written in either case.
// Requires: `p` is a live handle; the output pointers are writable.
enum TmStatus tm_check_kernel(const struct TmPoly *p,
                              size_t max_terms,
                              double tolerance,
                              double *sum_abs,
                              double *bound);

// Runs comma-separated law suites (or `all`) for r = 1..=`r_max` and writes
// the reports as a JSON array. Returns `CheckFailed` when any suite has a
// counterexample; the report is written in either case.
// Requires: `suites` is a nul-terminated string; `json_out` is writable.
enum TmStatus tm_verify(const char *suites,
                        uint32_t r_max,
                        uint32_t max_forest,
                        uint32_t max_word,
                        char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREEMAPS_H */
