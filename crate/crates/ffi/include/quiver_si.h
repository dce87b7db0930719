#ifndef QUIVER_SI_H
#define QUIVER_SI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. `QSI_STATUS_OK` is zero; everything else is a failure.
typedef enum QsiStatus {
  QSI_STATUS_OK = 0,
  QSI_STATUS_NULL_POINTER = 1,
  QSI_STATUS_INVALID_UTF8 = 2,
  // Malformed quiver or vector input.
  QSI_STATUS_INPUT = 3,
  // A documented precondition failed; the message names it.
  QSI_STATUS_PRECONDITION = 4,
  // A search cap was hit.
  QSI_STATUS_CAP = 5,
  // An internal consistency check failed.
  QSI_STATUS_THEORY = 6,
  // The result does not fit the output type.
  QSI_STATUS_OVERFLOW = 7,
  QSI_STATUS_PANIC = 8,
} QsiStatus;

// Opaque quiver handle.
typedef struct QsiQuiver QsiQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or NULL. Owned by the
// library; valid until the next call on the same thread.
const char *qsi_last_error(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void qsi_string_free(char *s);

// Parses quiver JSON (`{"vertices": [...], "arrows": [{"tail","head"}],
// "allows_cycles": bool}`) into a new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum QsiStatus qsi_quiver_parse(const char *json, struct QsiQuiver **out);

// Star quiver T_{p,q,r}.
//
// # Safety
// `out` must be writable.
enum QsiStatus qsi_quiver_star(size_t p, size_t q, size_t r, struct QsiQuiver **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `q` must come from this library and not have been freed.
void qsi_quiver_free(struct QsiQuiver *q);

// Number of vertices, or 0 for NULL.
//
// # Safety
// `q` must be NULL or a live handle.
size_t qsi_quiver_vertex_count(const struct QsiQuiver *q);

// The quiver as JSON; free with [`qsi_string_free`].
//
// # Safety
// `q` must be a live handle and `out` writable.
enum QsiStatus qsi_quiver_to_json(const struct QsiQuiver *q, char **out);

// ⟨α,β⟩.
//
// # Safety
// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
// entries and `out` must be writable.
enum QsiStatus qsi_euler_form(const struct QsiQuiver *q,
                              const int64_t *alpha,
                              const int64_t *beta,
                              size_t n,
                              int64_t *out);

// Generic ext(α,β).
//
// # Safety
// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
// entries and `out` must be writable.
enum QsiStatus qsi_ext_generic(const struct QsiQuiver *q,
                               const int64_t *alpha,
                               const int64_t *beta,
                               size_t n,
                               int64_t *out);

// Generic hom(α,β).
//
// # Safety
// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
// entries and `out` must be writable.
enum QsiStatus qsi_hom_generic(const struct QsiQuiver *q,
                               const int64_t *alpha,
                               const int64_t *beta,
                               size_t n,
                               int64_t *out);

// Whether a general representation of dimension α embeds in one of
// dimension β.
//
// # Safety
// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
// entries and `out` must be writable.
enum QsiStatus qsi_embeds(const struct QsiQuiver *q,
                          const int64_t *alpha,
                          const int64_t *beta,
                          size_t n,
                          bool *out);

// α∘β; requires ⟨α,β⟩ = 0.
//
// # Safety
// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
// entries and `out` must be writable.
enum QsiStatus qsi_circ(const struct QsiQuiver *q,
                        const int64_t *alpha,
                        const int64_t *beta,
                        size_t n,
                        uint64_t *out);

// dim SI(Q,β)_σ.
//
// # Safety
// `q` must be a live handle, `beta` and `sigma` must point to `n` readable
// entries and `out` must be writable.
enum QsiStatus qsi_si_dim(const struct QsiQuiver *q,
                          const int64_t *beta,
                          const int64_t *sigma,
                          size_t n,
                          uint64_t *out);

// σ-semistability and σ-stability of α on an acyclic quiver.
//
// # Safety
// `q` must be a live handle, `alpha` and `sigma` must point to `n`
// readable entries and both outputs must be writable.
enum QsiStatus qsi_stability(const struct QsiQuiver *q,
                             const int64_t *alpha,
                             const int64_t *sigma,
                             size_t n,
                             bool *semistable,
                             bool *stable);

// Littlewood-Richardson coefficient c_{λ,μ}^ν for three weakly decreasing
// sequences of common length `len`.
//
// # Safety
// The three arrays must hold `len` readable entries and `out` must be
// writable.
enum QsiStatus qsi_lr_coefficient(const int64_t *lam,
                                  const int64_t *mu,
                                  const int64_t *nu,
                                  size_t len,
                                  uint64_t *out);

// Runs one command-line invocation (`argv[0]` is the verb; no program
// name). Writes the exit code (0, 1 or 2) and the JSON document printed
// on stdout, or the usage message when there is none. Free `out_json`
// with [`qsi_string_free`]. Returns `QSI_STATUS_OK` whenever the command
// ran, whatever its exit code.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; outputs must be
// writable.
enum QsiStatus qsi_run(const char *const *argv, size_t argc, int32_t *exit_code, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVER_SI_H */
