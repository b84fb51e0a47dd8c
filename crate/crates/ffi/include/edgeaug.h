#ifndef EDGEAUG_H
#define EDGEAUG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EdgeaugStatus {
  EDGEAUG_STATUS_OK = 0,
  EDGEAUG_STATUS_INFEASIBLE = 1,
  EDGEAUG_STATUS_PARSE = 2,
  EDGEAUG_STATUS_INVALID_ARGUMENT = 3,
  EDGEAUG_STATUS_PRECONDITION = 4,
  EDGEAUG_STATUS_SIZE_LIMIT = 5,
  EDGEAUG_STATUS_INTEGRITY = 6,
  EDGEAUG_STATUS_NULL_POINTER = 7,
  EDGEAUG_STATUS_PANIC = 8,
} EdgeaugStatus;

typedef struct EdgeaugInstance EdgeaugInstance;

typedef struct EdgeaugSolution EdgeaugSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses the text instance format into a new handle written to `out`.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum EdgeaugStatus edgeaug_instance_parse(const char *text, struct EdgeaugInstance **out);

// # Safety
// `inst` must come from this library and not be used afterwards.
void edgeaug_instance_free(struct EdgeaugInstance *inst);

// The instance in the text format; free with [`edgeaug_string_free`].
//
// # Safety
// `inst` must be a live handle or null.
char *edgeaug_instance_to_text(const struct EdgeaugInstance *inst);

// Augments to `k`-edge-connectivity through the kernel pipeline.
// Returns `Ok` or `Infeasible` with a solution handle in `out`.
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum EdgeaugStatus edgeaug_solve(const struct EdgeaugInstance *inst, struct EdgeaugSolution **out);

// Exhaustive reference search.
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum EdgeaugStatus edgeaug_oracle(const struct EdgeaugInstance *inst,
                                  bool multiset,
                                  bool node2,
                                  struct EdgeaugSolution **out);

// Augments an arbitrary graph to 2-edge-connectivity.
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum EdgeaugStatus edgeaug_zero2(const struct EdgeaugInstance *inst,
                                 bool no_duplicates,
                                 struct EdgeaugSolution **out);

// Augments a connected graph to 2-node-connectivity.
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum EdgeaugStatus edgeaug_node12(const struct EdgeaugInstance *inst, struct EdgeaugSolution **out);

// `Ok` for an optimal solution, `Infeasible` otherwise.
//
// # Safety
// `sol` must be a live handle or null.
enum EdgeaugStatus edgeaug_solution_status(const struct EdgeaugSolution *sol);

// Total cost as `num/den`; free with [`edgeaug_string_free`].
//
// # Safety
// `sol` must be a live handle or null.
char *edgeaug_solution_cost(const struct EdgeaugSolution *sol);

// # Safety
// `sol` must be a live handle or null.
uint32_t edgeaug_solution_weight(const struct EdgeaugSolution *sol);

// # Safety
// `sol` must be a live handle or null.
size_t edgeaug_solution_link_count(const struct EdgeaugSolution *sol);

// Endpoints and weight of the `index`-th chosen link.
//
// # Safety
// `sol` must be a live handle; `u`, `v` and `t` valid pointers.
enum EdgeaugStatus edgeaug_solution_link(const struct EdgeaugSolution *sol,
                                         size_t index,
                                         size_t *u,
                                         size_t *v,
                                         uint32_t *t);

// The solution as JSON; free with [`edgeaug_string_free`].
//
// # Safety
// `sol` must be a live handle or null.
char *edgeaug_solution_to_json(const struct EdgeaugSolution *sol);

// # Safety
// `sol` must come from this library and not be used afterwards.
void edgeaug_solution_free(struct EdgeaugSolution *sol);

// # Safety
// `s` must be a string returned by this library, or null.
void edgeaug_string_free(char *s);

// Message of the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *edgeaug_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EDGEAUG_H */
