#ifndef SILTQ_H
#define SILTQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a fallible call.
typedef enum SiltqStatus {
  SILTQ_STATUS_OK = 0,
  // A required pointer was null or a string was not UTF-8.
  SILTQ_STATUS_NULL_ARGUMENT = 1,
  // Malformed input: spec syntax, unknown builtin, bad parameters or vertex.
  SILTQ_STATUS_INVALID_INPUT = 2,
  // The computation reached a mathematical dead end.
  SILTQ_STATUS_MATH = 3,
  // The census is incomplete where a complete one is needed.
  SILTQ_STATUS_INCOMPLETE = 4,
  // A buffer was too small; the required length has been written.
  SILTQ_STATUS_BUFFER_TOO_SMALL = 5,
  // Rust code panicked; the handle passed in should not be reused.
  SILTQ_STATUS_PANIC = 6,
} SiltqStatus;

// Opaque finite-dimensional algebra.
typedef struct SiltqAlgebra SiltqAlgebra;

// Opaque census of 2-term silting objects.
typedef struct SiltqCensus SiltqCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failing call on this thread, or null. The
// pointer stays valid until the next failing call on this thread.
const char *siltq_last_error(void);

void siltq_clear_error(void);

// Library version as a static NUL-terminated string.
const char *siltq_version(void);

// Builds a catalog algebra. `params` is `"n=3,r=0"` style and may be
// empty; `prime` is 0 for the rationals.
//
// # Safety
// `name` and `params` must be NUL-terminated strings; `out` must be writable.
enum SiltqStatus siltq_algebra_builtin(const char *name,
                                       const char *params,
                                       uint64_t prime,
                                       struct SiltqAlgebra **out);

// Builds an algebra from a JSON spec document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SiltqStatus siltq_algebra_from_json(const char *json, struct SiltqAlgebra **out);

// # Safety
// `a` must be null or a handle from this library that has not been freed.
void siltq_algebra_free(struct SiltqAlgebra *a);

// Dimension over the base field, or 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle.
size_t siltq_algebra_dim(const struct SiltqAlgebra *a);

// # Safety
// `a` must be null or a live handle.
size_t siltq_algebra_vertex_count(const struct SiltqAlgebra *a);

// Enumerates `2silt` up to `cap` elements. An incomplete census is still
// returned with status `Ok`; query it with [`siltq_census_complete`].
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum SiltqStatus siltq_enumerate(const struct SiltqAlgebra *a,
                                 size_t cap,
                                 struct SiltqCensus **out);

// # Safety
// `c` must be null or a live handle.
void siltq_census_free(struct SiltqCensus *c);

// # Safety
// `c` must be null or a live handle.
size_t siltq_census_len(const struct SiltqCensus *c);

// # Safety
// `c` must be null or a live handle.
bool siltq_census_complete(const struct SiltqCensus *c);

// Copies the g-vector matrix of element `index` row by row into `buf`
// (`n·n` entries for `n` vertices) and stores that length in `written`.
//
// # Safety
// `c` must be a live handle; `buf` must hold `buf_len` entries; `written` must be writable.
enum SiltqStatus siltq_census_key(const struct SiltqCensus *c,
                                  size_t index,
                                  int64_t *buf,
                                  size_t buf_len,
                                  size_t *written);

// Sizes of the two halves of a complete census at a vertex (0-based):
// elements with the projective in degree −1, and in degree 0.
//
// # Safety
// `c` must be a live handle; `minus` and `plus` must be writable.
enum SiltqStatus siltq_census_bisect(const struct SiltqCensus *c,
                                     size_t vertex,
                                     size_t *minus,
                                     size_t *plus);

// The census in its JSON file format. Free the result with [`siltq_string_free`].
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SiltqStatus siltq_census_to_json(const struct SiltqCensus *c, char **out);

// # Safety
// `s` must be null or a string returned by this library.
void siltq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SILTQ_H */
