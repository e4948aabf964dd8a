#ifndef FINGROUP_H
#define FINGROUP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_POINTER = 1,
  FG_STATUS_INVALID_UTF8 = 2,
  FG_STATUS_PARSE = 3,
  FG_STATUS_UNKNOWN_GROUP = 4,
  FG_STATUS_TOO_LARGE = 5,
  FG_STATUS_BUDGET_EXHAUSTED = 6,
  FG_STATUS_NO_SOLUTION = 7,
  FG_STATUS_FAILED = 8,
  FG_STATUS_PANIC = 99,
} FgStatus;

/**
 * Opaque group handle.
 */
typedef struct FgGroup FgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a group from an expression such as `S(4)` or `direct(S4,C3)`.
 *
 * # Safety
 * `spec` must be a nul-terminated string; `out` must be writable.
 */
enum FgStatus fg_group_from_spec(const char *spec, struct FgGroup **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `g` must come from `fg_group_from_spec` and not have been freed.
 */
void fg_group_free(struct FgGroup *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FgStatus fg_group_order(const struct FgGroup *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FgStatus fg_group_degree(const struct FgGroup *g, size_t *out);

/**
 * Checks `law` (e.g. `"x^12 = 1"`) on every assignment.
 *
 * # Safety
 * `g` must be a live handle, `law` nul-terminated, `holds` writable.
 */
enum FgStatus fg_law_holds(const struct FgGroup *g, const char *law, bool *holds);

/**
 * Order of the monolith; 1 when the group is not monolithic.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FgStatus fg_monolith_order(const struct FgGroup *g, size_t *out);

/**
 * Least solution of an equation system, written as `"x = (1 3 2), y = ()"`
 * into a new string. Returns `FG_STATUS_NO_SOLUTION` when none exists.
 *
 * # Safety
 * `g` must be a live handle, `system` nul-terminated, `out` writable.
 */
enum FgStatus fg_solve(const struct FgGroup *g, const char *system, char **out);

/**
 * Runs the verification suite with default bounds and returns its JSON
 * report. `passed` receives the overall verdict.
 *
 * # Safety
 * `out` and `passed` must be writable.
 */
enum FgStatus fg_verify_paper_json(char **out, bool *passed);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from this thread.
 */
const char *fg_last_error_message(void);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void fg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINGROUP_H */
