#ifndef CONORM_H
#define CONORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum ConormStatus {
  CONORM_STATUS_OK = 0,
  // A null pointer or malformed argument.
  CONORM_STATUS_INVALID_ARGUMENT = 1,
  // The specification failed to parse or validate.
  CONORM_STATUS_INVALID_SPEC = 2,
  // The verdict and the brute-force checks disagree.
  CONORM_STATUS_INCONSISTENT = 3,
  CONORM_STATUS_INTERNAL = 4,
} ConormStatus;

// A parsed and validated instance.
typedef struct ConormInstance ConormInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses `json` and stores a new handle in `*out`.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum ConormStatus conorm_instance_from_json(const char *json, struct ConormInstance **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `inst` must come from [`conorm_instance_from_json`] and not be used again.
void conorm_instance_free(struct ConormInstance *inst);

// `T(x, y)` as rational text `"p/q"`.
//
// # Safety
// Pointers must be valid; `x` and `y` NUL-terminated.
enum ConormStatus conorm_eval(const struct ConormInstance *inst,
                              const char *x,
                              const char *y,
                              char **out);

// The verdict report as JSON.
//
// # Safety
// Pointers must be valid.
enum ConormStatus conorm_check_json(const struct ConormInstance *inst, char **out);

// The verdict with the brute-force oracle section as JSON. The report is
// written even when the status is `Inconsistent`.
//
// # Safety
// Pointers must be valid.
enum ConormStatus conorm_verify_json(const struct ConormInstance *inst,
                                     uint64_t denominator,
                                     uint64_t witness_budget,
                                     char **out);

// The triple decomposition, or the violated constraint, as JSON.
//
// # Safety
// Pointers must be valid.
enum ConormStatus conorm_decompose_json(const struct ConormInstance *inst, char **out);

// `T` on the grid `0, step, 2·step, …, 1` as CSV.
//
// # Safety
// Pointers must be valid; `step` NUL-terminated.
enum ConormStatus conorm_table_csv(const struct ConormInstance *inst, const char *step, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used again.
void conorm_string_free(char *s);

// Message of the last failure on this thread. Valid until the next call
// into the library from the same thread.
const char *conorm_last_error(void);

// Library version, static.
const char *conorm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONORM_H */
