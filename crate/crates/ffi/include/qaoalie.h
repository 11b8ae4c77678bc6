#ifndef QAOALIE_H
#define QAOALIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Infection rule for the forcing entry points.
 */
typedef enum {
  QAOALIE_PROCESS_ZERO = 0,
  QAOALIE_PROCESS_GENERALIZED = 1,
  QAOALIE_PROCESS_HYPER = 2,
} QaoalieProcess;

/**
 * Result code of every exported function.
 */
typedef enum {
  QAOALIE_STATUS_OK = 0,
  QAOALIE_STATUS_NULL_POINTER = 1,
  QAOALIE_STATUS_INVALID_UTF8 = 2,
  QAOALIE_STATUS_INVALID_INPUT = 3,
  QAOALIE_STATUS_RESOURCE_LIMIT = 4,
  QAOALIE_STATUS_PANIC = 5,
} QaoalieStatus;

/**
 * A parsed graph document.
 */
typedef struct QaoalieGraph QaoalieGraph;

/**
 * A parsed problem file.
 */
typedef struct QaoalieProblem QaoalieProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the next call.
 */
const char *qaoalie_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qaoalie_string_free(char *s);

/**
 * Parses a problem document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
QaoalieStatus qaoalie_problem_parse(const char *json, QaoalieProblem **out);

/**
 * Re-samples the problem's sampled coefficients from `seed`.
 *
 * # Safety
 * `problem` must be a live handle.
 */
QaoalieStatus qaoalie_problem_reseed(QaoalieProblem *problem, uint64_t seed);

/**
 * Number of qubits of the problem, or 0 for a null handle.
 *
 * # Safety
 * `problem` must be null or a live handle.
 */
size_t qaoalie_problem_qubits(const QaoalieProblem *problem);

/**
 * # Safety
 * `problem` must be null or a handle not yet freed.
 */
void qaoalie_problem_free(QaoalieProblem *problem);

/**
 * Closure analysis; writes the report as JSON to `out_json`.
 *
 * `float_mode` selects floating-point elimination; `tolerance` of 0 picks the
 * default. `stability` is the number of seeds to rerun with.
 *
 * # Safety
 * `problem` must be a live handle; `out_json` must be writable.
 */
QaoalieStatus qaoalie_closure(const QaoalieProblem *problem,
                              bool float_mode,
                              double tolerance,
                              size_t stability,
                              char **out_json);

/**
 * Dimension of the dynamical Lie algebra, exact arithmetic.
 *
 * # Safety
 * `problem` must be a live handle; `out_dimension` must be writable.
 */
QaoalieStatus qaoalie_dimension(const QaoalieProblem *problem, size_t *out_dimension);

/**
 * Parses a graph document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
QaoalieStatus qaoalie_graph_parse(const char *json, QaoalieGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void qaoalie_graph_free(QaoalieGraph *graph);

/**
 * Runs a forcing process from `set` (and, for the hyper rule, the 2-edges in
 * `edges`, given as `2 * edge_count` vertex ids). Writes whether every vertex
 * ends infected to `out_forcing` and, if `out_json` is non-null, the final
 * state as JSON.
 *
 * # Safety
 * `graph` must be a live handle; `set` must hold `set_len` ids and `edges`
 * `2 * edge_count` ids (either may be null when its length is 0).
 */
QaoalieStatus qaoalie_force(const QaoalieGraph *graph,
                            QaoalieProcess process,
                            const uint32_t *set,
                            size_t set_len,
                            const uint32_t *edges,
                            size_t edge_count,
                            bool *out_forcing,
                            char **out_json);

/**
 * Smallest forcing sets up to `max_size` vertices, as JSON.
 *
 * # Safety
 * `graph` must be a live handle; `out_json` must be writable.
 */
QaoalieStatus qaoalie_force_search(const QaoalieGraph *graph,
                                   QaoalieProcess process,
                                   size_t max_size,
                                   char **out_json);

/**
 * Replays every built-in identity with coefficients drawn from `seed`.
 *
 * # Safety
 * `out_json` must be writable.
 */
QaoalieStatus qaoalie_verify_all(uint64_t seed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QAOALIE_H */
