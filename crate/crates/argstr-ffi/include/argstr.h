#ifndef ARGSTR_H
#define ARGSTR_H

/* Generated by cbindgen from the argstr-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API call.
 */
typedef enum ArgstrStatus {
  ARGSTR_STATUS_OK = 0,
  ARGSTR_STATUS_NULL_POINTER = 1,
  ARGSTR_STATUS_INVALID_UTF8 = 2,
  ARGSTR_STATUS_PARSE_ERROR = 3,
  ARGSTR_STATUS_INVALID_THEORY = 4,
  ARGSTR_STATUS_UNKNOWN_METHOD = 5,
  ARGSTR_STATUS_UNKNOWN_PRINCIPLE = 6,
  ARGSTR_STATUS_INVALID_GRAPH = 7,
  ARGSTR_STATUS_NO_CONVERGENCE = 8,
  ARGSTR_STATUS_DOMAIN_ERROR = 9,
  ARGSTR_STATUS_INTERNAL_ERROR = 10,
} ArgstrStatus;

/**
 * Opaque handle to a parsed, immutable theory.
 */
typedef struct ArgstrTheory ArgstrTheory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread. Valid until the next
 * failing call; never NULL.
 */
const char *argstr_last_error(void);

/**
 * Engine version as a static NUL-terminated string.
 */
const char *argstr_version(void);

/**
 * Parse theory text into a handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out_theory` must point to
 * writable pointer storage.
 */
enum ArgstrStatus argstr_theory_parse(const char *text, struct ArgstrTheory **out_theory);

/**
 * Release a theory handle. NULL is a no-op.
 *
 * # Safety
 * `theory` must have come from `argstr_theory_parse` and not been freed.
 */
void argstr_theory_free(struct ArgstrTheory *theory);

/**
 * Validate a theory; writes the violation report as JSON either way.
 * Returns `Ok` for a valid theory and `InvalidTheory` otherwise.
 *
 * # Safety
 * `theory` must be a live handle; `out_json` writable pointer storage.
 */
enum ArgstrStatus argstr_theory_validate(const struct ArgstrTheory *theory, char **out_json);

/**
 * Enumerate arguments within `budget` and score them under `method`;
 * writes a JSON array of argument summaries.
 *
 * # Safety
 * `theory` must be a live handle; `method` a valid string; `out_json`
 * writable pointer storage.
 */
enum ArgstrStatus argstr_enumerate(const struct ArgstrTheory *theory,
                                   uintptr_t budget,
                                   const char *method,
                                   char **out_json);

/**
 * Grounded labelling (accepted/rejected/undecided) of a graph given as
 * JSON.
 *
 * # Safety
 * `graph_json` must be a valid string; `out_json` writable pointer storage.
 */
enum ArgstrStatus argstr_grounded(const char *graph_json, char **out_json);

/**
 * Weighted h-categorizer degrees of a graph given as JSON. Requires unit
 * attack weights; returns `NoConvergence` when the iteration stalls.
 *
 * # Safety
 * `graph_json` must be a valid string; `out_json` writable pointer storage.
 */
enum ArgstrStatus argstr_degrees(const char *graph_json,
                                 double eps,
                                 uintptr_t max_iterations,
                                 char **out_json);

/**
 * Seed a weighted argumentation graph from a theory: nodes are the
 * enumerated arguments, base weights their strengths under `method`.
 * `attacks_json` may be NULL or a JSON object with an `attacks` array
 * referencing argument ids or `A1`-style aliases.
 *
 * # Safety
 * `theory` must be a live handle; strings valid; `out_json` writable.
 */
enum ArgstrStatus argstr_seed_graph(const struct ArgstrTheory *theory,
                                    const char *method,
                                    uintptr_t budget,
                                    const char *attacks_json,
                                    char **out_json);

/**
 * Probe one principle (or all thirteen when `principle` is NULL) under a
 * method; writes a JSON array of `{principle, expected, verdict}` rows.
 * A falsification of a registered-positive pair returns `DomainError`.
 *
 * # Safety
 * Strings must be valid or NULL as documented; `out_json` writable.
 */
enum ArgstrStatus argstr_probe_principle(const char *method,
                                         const char *principle,
                                         uintptr_t trials,
                                         uint64_t seed,
                                         char **out_json);

/**
 * Check the well-behavedness clauses of an aggregation method. Writes the
 * verdict as JSON; `DomainError` when falsified, `UnknownMethod` for the
 * direct methods.
 *
 * # Safety
 * `method` must be a valid string; `out_json` writable pointer storage.
 */
enum ArgstrStatus argstr_check_well_behaved(const char *method, bool force_grid, char **out_json);

/**
 * Release a string allocated by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must have been returned through an `out_json` parameter and not yet
 * freed.
 */
void argstr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARGSTR_H */
