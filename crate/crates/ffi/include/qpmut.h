#ifndef QPMUT_H
#define QPMUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpmutStatus {
  QPMUT_STATUS_OK = 0,
  QPMUT_STATUS_NULL_ARGUMENT = 1,
  QPMUT_STATUS_INVALID_UTF8 = 2,
  QPMUT_STATUS_PARSE = 3,
  QPMUT_STATUS_STRUCTURAL = 4,
  QPMUT_STATUS_PRECONDITION = 5,
  QPMUT_STATUS_IO = 6,
  QPMUT_STATUS_PANIC = 7,
} QpmutStatus;

/**
 * A quiver with potential.
 */
typedef struct QpmutQp QpmutQp;

/**
 * A representation, carrying the quiver it lives over.
 */
typedef struct QpmutRep QpmutRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *qpmut_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on this thread.
 */
const char *qpmut_last_error_message(void);

void qpmut_clear_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void qpmut_string_free(char *s);

/**
 * Parse a QP document. `truncation` 0 keeps the value in the document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QpmutStatus qpmut_qp_from_json(const char *json, size_t truncation, struct QpmutQp **out);

/**
 * # Safety
 * `qp` must be a live handle and `out` a valid pointer.
 */
enum QpmutStatus qpmut_qp_to_json(const struct QpmutQp *qp, char **out);

/**
 * # Safety
 * `qp` must be NULL or a handle not yet freed.
 */
void qpmut_qp_free(struct QpmutQp *qp);

/**
 * # Safety
 * `qp` must be a live handle and `out` a valid pointer.
 */
enum QpmutStatus qpmut_qp_num_vertices(const struct QpmutQp *qp, size_t *out);

/**
 * Mutation at the named vertex followed by reduction.
 *
 * # Safety
 * `qp` must be a live handle, `vertex` a NUL-terminated string and `out` a valid pointer.
 */
enum QpmutStatus qpmut_qp_mutate(const struct QpmutQp *qp,
                                 const char *vertex,
                                 struct QpmutQp **out);

/**
 * Dimension of the truncated Jacobian algebra. When `certified` is false
 * the dimension is that of the truncation and `nilpotency` is 0.
 *
 * # Safety
 * `qp` must be a live handle and the out pointers valid.
 */
enum QpmutStatus qpmut_qp_jacobian_dim(const struct QpmutQp *qp,
                                       size_t *dim,
                                       size_t *nilpotency,
                                       bool *certified);

/**
 * Rigidity verdict label: NOT_RIGID, RIGID_CERTIFIED or RIGID_UP_TO_N.
 *
 * # Safety
 * `qp` must be a live handle and `out` a valid pointer.
 */
enum QpmutStatus qpmut_qp_rigidity(const struct QpmutQp *qp, char **out);

/**
 * Parse a representation document over the quiver of `qp`.
 *
 * # Safety
 * `qp` must be a live handle, `json` a NUL-terminated string and `out` a valid pointer.
 */
enum QpmutStatus qpmut_rep_from_json(const struct QpmutQp *qp,
                                     const char *json,
                                     struct QpmutRep **out);

/**
 * # Safety
 * `rep` must be a live handle and `out` a valid pointer.
 */
enum QpmutStatus qpmut_rep_to_json(const struct QpmutRep *rep, char **out);

/**
 * # Safety
 * `rep` must be NULL or a handle not yet freed.
 */
void qpmut_rep_free(struct QpmutRep *rep);

/**
 * Whether the representation is nilpotent and satisfies the relations of `qp`.
 *
 * # Safety
 * Handles must be live and `valid` a valid pointer.
 */
enum QpmutStatus qpmut_rep_validate(const struct QpmutQp *qp,
                                    const struct QpmutRep *rep,
                                    bool *valid);

/**
 * Mutated representation over the premutated QP. If `out_qp` is not NULL
 * it receives that premutated QP.
 *
 * # Safety
 * Handles must be live, `vertex` a NUL-terminated string, `out` valid and
 * `out_qp` NULL or valid.
 */
enum QpmutStatus qpmut_rep_mutate(const struct QpmutQp *qp,
                                  const struct QpmutRep *rep,
                                  const char *vertex,
                                  struct QpmutRep **out,
                                  struct QpmutQp **out_qp);

/**
 * Seeded isomorphism test between representations of the same quiver.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
enum QpmutStatus qpmut_rep_is_isomorphic(const struct QpmutRep *a,
                                         const struct QpmutRep *b,
                                         uint64_t seed,
                                         bool *out);

/**
 * Run the acceptance corpus; `report` receives the rendered table.
 *
 * # Safety
 * `report` and `passed` must be valid pointers.
 */
enum QpmutStatus qpmut_selftest(uint64_t seed, char **report, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPMUT_H */
