#ifndef PREMKIT_H
#define PREMKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PremkitStatus {
  PREMKIT_STATUS_OK = 0,
  PREMKIT_STATUS_NULL_ARGUMENT = 1,
  PREMKIT_STATUS_INVALID_UTF8 = 2,
  PREMKIT_STATUS_PARSE_ERROR = 3,
  PREMKIT_STATUS_INVALID_INPUT = 4,
  PREMKIT_STATUS_BUFFER_TOO_SMALL = 5,
  PREMKIT_STATUS_PANIC = 6,
} PremkitStatus;

/*
 A validated fold-map model. Opaque.
 */
typedef struct PremkitArrangement PremkitArrangement;

/*
 A braid word. Opaque.
 */
typedef struct PremkitBraid PremkitBraid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer is
 valid until the next call into the library from the same thread.
 */
const char *premkit_last_error(void);

/*
 Library version as a static string.
 */
const char *premkit_version(void);

/*
 Runs a JSON request (the same as the command-line reports use) and
 stores the report in `*out`, to be freed with [`premkit_string_free`].

 # Safety
 `request` must be a NUL-terminated string and `out` a writable pointer.
 */
enum PremkitStatus premkit_run_json(const char *request, char **out);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void premkit_string_free(char *s);

/*
 Builds a braid on `strands` strands from `len` signed generator indices.

 # Safety
 `letters` must point to `len` readable values (or be null when `len` is
 0) and `out` must be writable.
 */
enum PremkitStatus premkit_braid_new(size_t strands,
                                     const int32_t *letters,
                                     size_t len,
                                     struct PremkitBraid **out);

/*
 # Safety
 `b` must be null or a handle from [`premkit_braid_new`], not yet freed.
 */
void premkit_braid_free(struct PremkitBraid *b);

/*
 Writes the one-based permutation of the braid into `images`, which must
 hold `capacity` entries; `*written` receives the strand count.

 # Safety
 `b` must be a live handle; `images` must have room for `capacity` values.
 */
enum PremkitStatus premkit_braid_permutation(const struct PremkitBraid *b,
                                             size_t *images,
                                             size_t capacity,
                                             size_t *written);

/*
 # Safety
 `b` must be a live handle and `out` writable.
 */
enum PremkitStatus premkit_braid_is_trivial(const struct PremkitBraid *b, bool *out);

/*
 Sets `*infinite_order` when the permutation order of the braid is
 divisible by 2, 3 or 5.

 # Safety
 `b` must be a live handle and `infinite_order` writable.
 */
enum PremkitStatus premkit_braid_humphries(const struct PremkitBraid *b, bool *infinite_order);

/*
 Parses and validates an arrangement from JSON.

 # Safety
 `json` must be a NUL-terminated string and `out` writable.
 */
enum PremkitStatus premkit_arrangement_from_json(const char *json, struct PremkitArrangement **out);

/*
 # Safety
 `a` must be null or a handle from [`premkit_arrangement_from_json`].
 */
void premkit_arrangement_free(struct PremkitArrangement *a);

/*
 Monodromy of a loop (JSON crossing word) in the canonical frame at the
 basepoint, written one-based into `images`.

 # Safety
 `a` must be a live handle, `loop_json` a NUL-terminated string, and
 `images` must have room for `capacity` values.
 */
enum PremkitStatus premkit_monodromy(const struct PremkitArrangement *a,
                                     const char *loop_json,
                                     size_t *images,
                                     size_t capacity,
                                     size_t *written);

/*
 Number of components of the pullback of the fold map along a loop.

 # Safety
 `a` must be a live handle, `loop_json` a NUL-terminated string and
 `components` writable.
 */
enum PremkitStatus premkit_pullback_components(const struct PremkitArrangement *a,
                                               const char *loop_json,
                                               size_t *components);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREMKIT_H */
