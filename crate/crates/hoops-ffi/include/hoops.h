/* C interface to the hoops toolkit. */

#ifndef HOOPS_H
#define HOOPS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Structure group selector for connections and falsification.
typedef enum HoopsGroup {
  // Unit complex numbers; 1 by 1 matrices.
  HOOPS_GROUP_U1 = 0,
  // Unit quaternions as 2 by 2 complex matrices.
  HOOPS_GROUP_SU2 = 1,
  // Rotations of 3-space; 3 by 3 real matrices.
  HOOPS_GROUP_SO3 = 2,
  // Real 2 by 2 matrices of determinant one.
  HOOPS_GROUP_SL2R = 3,
} HoopsGroup;

// Result code for every call in this interface.
typedef enum HoopsStatus {
  // The call succeeded.
  HOOPS_STATUS_OK = 0,
  // A required pointer argument was null.
  HOOPS_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  HOOPS_STATUS_INVALID_UTF8 = 2,
  // Input text or values failed validation.
  HOOPS_STATUS_PARSE_ERROR = 3,
  // The request was well formed but outside the supported range:
  // an enumeration budget, a precondition, or a failed search.
  HOOPS_STATUS_REJECTED = 4,
  // An output buffer was too small; the required length was stored
  // in the corresponding length output.
  HOOPS_STATUS_BUFFER_TOO_SMALL = 5,
  // Internal numerical failure.
  HOOPS_STATUS_COMPUTE_ERROR = 6,
} HoopsStatus;

// Opaque handle to a finite sum of bump one-form terms.
typedef struct HoopsConnection HoopsConnection;

// Opaque handle to a loop decomposition over its arrangement graph.
typedef struct HoopsDecomposition HoopsDecomposition;

// Opaque handle to a polygonal loop with exact rational vertices.
typedef struct HoopsLoop HoopsLoop;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Interface version as a static string; do not free.
const char *hoops_version(void);

// Message for the calling thread's last failure; empty if none.
// Valid until the next failing call on the same thread; do not free.
const char *hoops_last_error(void);

// Releases a string returned by this interface.
void hoops_string_free(char *text);

// Reduces a word given as signed letters (k for generator k, -k for
// its inverse, zero invalid). Writes the reduced letters to `out`
// and their count to `out_len`. A capacity of `len` always suffices.
// With insufficient capacity, stores the required count in `out_len`
// and returns `BufferTooSmall`.
enum HoopsStatus hoops_word_reduce(const int64_t *letters,
                                   size_t len,
                                   int64_t *out,
                                   size_t capacity,
                                   size_t *out_len);

// Decides whether the word maps to the identity under every
// assignment of its generators into connected abelian Lie groups.
enum HoopsStatus hoops_word_is_identity_abelian(const int64_t *letters, size_t len, bool *result);

// Decides whether the word maps to the identity under every
// assignment into nonsolvable connected Lie groups; this holds only
// for words that reduce to nothing.
enum HoopsStatus hoops_word_is_identity_nonsolvable(const int64_t *letters,
                                                    size_t len,
                                                    bool *result);

// Parses a loop from structured text into a new handle.
enum HoopsStatus hoops_loop_parse(const char *text, struct HoopsLoop **out);

// Serializes a loop back to structured text.
enum HoopsStatus hoops_loop_to_text(const struct HoopsLoop *lp, char **out);

// Releases a loop handle.
void hoops_loop_free(struct HoopsLoop *lp);

// Decomposes a loop into a word over arrangement generators.
enum HoopsStatus hoops_loop_decompose(const struct HoopsLoop *lp, struct HoopsDecomposition **out);

// Number of independent generators in the decomposition; zero for a
// null handle.
size_t hoops_decomposition_generator_count(const struct HoopsDecomposition *dec);

// Writes the decomposition's reduced word into `out` and its length
// into `out_len`. Query the length first with a zero capacity: the
// call stores the requirement and returns `BufferTooSmall`.
enum HoopsStatus hoops_decomposition_word(const struct HoopsDecomposition *dec,
                                          int64_t *out,
                                          size_t capacity,
                                          size_t *out_len);

// Releases a decomposition handle.
void hoops_decomposition_free(struct HoopsDecomposition *dec);

// Parses a connection from structured text into a new handle.
enum HoopsStatus hoops_connection_parse(const char *text, struct HoopsConnection **out);

// Serializes a connection back to structured text.
enum HoopsStatus hoops_connection_to_text(const struct HoopsConnection *conn, char **out);

// Draws a seed-deterministic random connection with `terms` bump
// terms on the planar rectangle [x_lo, x_hi] x [y_lo, y_hi].
enum HoopsStatus hoops_connection_random(enum HoopsGroup group,
                                         double x_lo,
                                         double x_hi,
                                         double y_lo,
                                         double y_hi,
                                         size_t terms,
                                         uint64_t seed,
                                         struct HoopsConnection **out);

// Stores the connection's structure group in `out`.
enum HoopsStatus hoops_connection_group(const struct HoopsConnection *conn, enum HoopsGroup *out);

// Releases a connection handle.
void hoops_connection_free(struct HoopsConnection *conn);

// Side length of the holonomy matrix for a group: 1, 2, 3, 2.
size_t hoops_group_matrix_dim(enum HoopsGroup group);

// Transports the loop through the connection with `steps` substeps
// per edge. The matrix is written row major as interleaved real and
// imaginary parts, 2 * n * n values for matrix side n (see
// `hoops_group_matrix_dim`); `BufferTooSmall` reports the required
// value count. `error_out` receives a step-halving error estimate
// and `residual_out` the distance from the group manifold; both may
// be null.
enum HoopsStatus hoops_holonomy(const struct HoopsConnection *conn,
                                const struct HoopsLoop *lp,
                                size_t steps,
                                double *matrix_out,
                                size_t matrix_capacity,
                                double *error_out,
                                double *residual_out);

// Searches for a connection into the chosen group whose holonomy
// moves the loop off the identity. On success `nontrivial_out` tells
// the verdict, and for a nontrivial loop `distance_out` receives the
// holonomy's distance from the identity and `witness_out` (if not
// null) a handle to the separating connection; for a trivial loop
// the distance is zero and the witness is null. Returns `Rejected`
// when the search cannot certify either way.
enum HoopsStatus hoops_falsify_triviality(const struct HoopsLoop *lp,
                                          enum HoopsGroup group,
                                          uint64_t seed,
                                          bool *nontrivial_out,
                                          double *distance_out,
                                          struct HoopsConnection **witness_out);

// Builds the cascade loop with the given number of levels, transports
// it through `trials` random abelian connections (seeds `seed`,
// `seed + 1`, ...) and stores the largest holonomy distance from the
// identity in `max_distance_out`. Flattens the loop at the given
// polyline resolution and stores its reduced word length in
// `word_len_out` (null to skip the flattening). Demonstrates a loop
// every abelian holonomy reads as trivial while its word stays alive.
enum HoopsStatus hoops_cascade_probe(uint32_t levels,
                                     uint64_t trials,
                                     uint64_t seed,
                                     size_t steps,
                                     size_t resolution,
                                     double *max_distance_out,
                                     size_t *word_len_out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOOPS_H */
