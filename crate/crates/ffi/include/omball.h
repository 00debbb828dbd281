#ifndef OMBALL_H
#define OMBALL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OmStatus {
  OM_STATUS_OK = 0,
  OM_STATUS_NULL_POINTER = 1,
  OM_STATUS_INVALID_UTF8 = 2,
  OM_STATUS_PARSE = 3,
  OM_STATUS_PRECONDITION = 4,
  OM_STATUS_MEMBERSHIP = 5,
  OM_STATUS_VALIDATION = 6,
  OM_STATUS_RESOURCE = 7,
  OM_STATUS_BUFFER_TOO_SMALL = 8,
  OM_STATUS_PANIC = 9,
} OmStatus;

typedef enum OmVerdict {
  OM_VERDICT_BALL_CERTIFIED = 0,
  OM_VERDICT_EVIDENCE_ONLY = 1,
  OM_VERDICT_REFUTED = 2,
  OM_VERDICT_NOT_APPLICABLE = 3,
} OmVerdict;

// A parsed input: a covector set, plus the arrangement it came from if any.
typedef struct OmInstance OmInstance;

// A finished verification run.
typedef struct OmReport OmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *omball_last_error(void);

// Library version as a static string.
const char *omball_version(void);

// Parse an arrangement or covector file held in memory.
//
// # Safety
// `text` must be a nul-terminated string. `g_label` may be null; otherwise
// it must be nul-terminated. `out` must point to writable storage.
enum OmStatus omball_instance_parse(const char *text, const char *g_label, struct OmInstance **out);

// # Safety
// `inst` must be null or a handle from [`omball_instance_parse`] that has
// not been freed.
void omball_instance_free(struct OmInstance *inst);

// Number of ground set elements, `g` included. Zero for a null handle.
//
// # Safety
// `inst` must be null or a live handle.
size_t omball_instance_elements(const struct OmInstance *inst);

// Number of covectors, the zero vector included. Zero for a null handle.
//
// # Safety
// `inst` must be null or a live handle.
size_t omball_instance_covectors(const struct OmInstance *inst);

// Whether the covector set satisfies all covector axioms.
//
// # Safety
// `inst` must be a live handle and `out` writable.
enum OmStatus omball_instance_axioms_ok(const struct OmInstance *inst, bool *out);

// Whether every basis-sized element set is a basis.
//
// # Safety
// `inst` must be a live handle and `out` writable.
enum OmStatus omball_instance_is_uniform(const struct OmInstance *inst, bool *out);

// Write the f-vector of the bounded complex into `buf`.
//
// `len` receives the number of entries. When `cap` is too small nothing is
// written to `buf` and [`OmStatus::BufferTooSmall`] is returned, so a call
// with `cap = 0` queries the length.
//
// # Safety
// `inst` must be a live handle, `len` writable, and `buf` valid for `cap`
// writes (it may be null when `cap` is 0).
enum OmStatus omball_bounded_f_vector(const struct OmInstance *inst,
                                      size_t *buf,
                                      size_t cap,
                                      size_t *len);

// Run the verification pipeline. `budget` 0 selects the default node budget.
//
// # Safety
// `inst` must be a live handle and `out` writable.
enum OmStatus omball_verify(const struct OmInstance *inst, uint64_t budget, struct OmReport **out);

// # Safety
// `rep` must be null or a handle from [`omball_verify`] not yet freed.
void omball_report_free(struct OmReport *rep);

// Verdict of a report; `NotApplicable` for a null handle.
//
// # Safety
// `rep` must be null or a live handle.
enum OmVerdict omball_report_verdict(const struct OmReport *rep);

// The report as JSON. Free the result with [`omball_string_free`].
//
// # Safety
// `rep` must be a live handle and `out` writable.
enum OmStatus omball_report_json(const struct OmReport *rep, char **out);

// A seeded random generic arrangement in the arrangement file format.
// Free the result with [`omball_string_free`].
//
// # Safety
// `out` must be writable.
enum OmStatus omball_generate(uint64_t seed, size_t n, size_t d, size_t max_tries, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void omball_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OMBALL_H */
