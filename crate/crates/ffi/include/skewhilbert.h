#ifndef SKEWHILBERT_H
#define SKEWHILBERT_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShStatus {
  SH_STATUS_OK = 0,
  SH_STATUS_NULL_ARGUMENT = 1,
  SH_STATUS_INVALID_UTF8 = 2,
  SH_STATUS_PARSE = 3,
  SH_STATUS_UNKNOWN_NAME = 4,
  SH_STATUS_PRECONDITION = 5,
  SH_STATUS_CAP_EXCEEDED = 6,
  SH_STATUS_OUT_OF_RANGE = 7,
  SH_STATUS_INVALID = 8,
  SH_STATUS_PANIC = 9,
} ShStatus;

/**
 * Opaque handle to a finite structure.
 */
typedef struct ShAlgebra ShAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null; do not free.
 */
const char *sh_status_name(enum ShStatus status);

/**
 * Copy of the last error message on this thread, or null if none. Free
 * with `sh_string_free`.
 */
char *sh_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void sh_string_free(char *s);

/**
 * Parses an algebra in the text or JSON format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for writes.
 */
enum ShStatus sh_algebra_parse(const char *text, struct ShAlgebra **out);

/**
 * Loads a built-in example such as `fig1`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` valid for writes.
 */
enum ShStatus sh_algebra_corpus(const char *name, struct ShAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from this library that is not yet freed.
 */
void sh_algebra_free(struct ShAlgebra *a);

/**
 * # Safety
 * `a` must be a live handle and `out` valid for writes.
 */
enum ShStatus sh_algebra_size(const struct ShAlgebra *a, size_t *out);

/**
 * Index of the element with this label.
 *
 * # Safety
 * `a` must be a live handle, `label` a NUL-terminated string and `out` valid
 * for writes.
 */
enum ShStatus sh_algebra_index(const struct ShAlgebra *a, const char *label, size_t *out);

/**
 * `x * y` as an element index.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for writes.
 */
enum ShStatus sh_algebra_star(const struct ShAlgebra *a, size_t x, size_t y, size_t *out);

/**
 * Normalized text form of the structure. Free with `sh_string_free`.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for writes.
 */
enum ShStatus sh_algebra_emit(const struct ShAlgebra *a, char **out);

/**
 * Checks an axiom system by its command-line name. `pass` receives the
 * outcome; if `verdict_json` is not null it receives the verdict as JSON,
 * to be freed with `sh_string_free`.
 *
 * # Safety
 * `a` must be a live handle, `system` a NUL-terminated string, `pass` valid
 * for writes and `verdict_json` null or valid for writes.
 */
enum ShStatus sh_check(const struct ShAlgebra *a,
                       const char *system,
                       bool *pass,
                       char **verdict_json);

/**
 * Number of models of `system` on `size` elements, up to isomorphism or
 * labelled.
 *
 * # Safety
 * `system` must be a NUL-terminated string and `out` valid for writes.
 */
enum ShStatus sh_count_models(const char *system, size_t size, bool up_to_iso, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWHILBERT_H */
