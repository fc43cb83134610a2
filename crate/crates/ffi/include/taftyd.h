#ifndef TAFTYD_H
#define TAFTYD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TaftydStatus {
  TAFTYD_STATUS_OK = 0,
  TAFTYD_STATUS_NULL_POINTER = 1,
  TAFTYD_STATUS_INVALID_UTF8 = 2,
  TAFTYD_STATUS_DIVISION_BY_ZERO = 3,
  TAFTYD_STATUS_DOMAIN_MISMATCH = 4,
  TAFTYD_STATUS_INDEX = 5,
  TAFTYD_STATUS_INVALID_SPECIFIER = 6,
  TAFTYD_STATUS_INVALID_ARGUMENT = 7,
  TAFTYD_STATUS_UNSUPPORTED = 8,
  TAFTYD_STATUS_NOT_APPLICABLE = 9,
  TAFTYD_STATUS_BUDGET_EXCEEDED = 10,
  TAFTYD_STATUS_IO = 11,
  TAFTYD_STATUS_BUFFER_TOO_SMALL = 12,
  TAFTYD_STATUS_PANIC = 13,
} TaftydStatus;

// A constructed Yetter-Drinfeld module.
typedef struct TaftydModule TaftydModule;

// Parameters (n, t) of H(n,t,ξ).
typedef struct TaftydParams TaftydParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates H(n,t); needs n ≥ 2 and t < n.
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum TaftydStatus taftyd_params_new(uint32_t n, uint32_t t, struct TaftydParams **out);

// # Safety
// `p` must come from [`taftyd_params_new`] and not be freed twice. Null is ignored.
void taftyd_params_free(struct TaftydParams *p);

// N, the order of ξᵗ.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum TaftydStatus taftyd_params_big_n(const struct TaftydParams *p, uint32_t *out);

// V(t·i1, j, λ) with λ given as "0", "1" or "zeta^e".
//
// # Safety
// `p` must be a live handle, `lambda` a NUL-terminated string and `out` writable.
enum TaftydStatus taftyd_module_finite(const struct TaftydParams *p,
                                       int64_t i1,
                                       int64_t j,
                                       const char *lambda,
                                       struct TaftydModule **out);

// The window v₀..v_k of V(i, j); needs i ∈ 𝒥.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum TaftydStatus taftyd_module_infinite(const struct TaftydParams *p,
                                         int64_t i,
                                         int64_t j,
                                         uint32_t k,
                                         struct TaftydModule **out);

// # Safety
// `m` must come from a module constructor and not be freed twice. Null is ignored.
void taftyd_module_free(struct TaftydModule *m);

// # Safety
// `m` must be a live handle and `out` writable.
enum TaftydStatus taftyd_module_dim(const struct TaftydModule *m, size_t *out);

// Runs the Yetter-Drinfeld axiom checks (and xⁿ = λ·id for finite modules).
// A failed check is reported through `passed`, with the first witness as
// the last error message.
//
// # Safety
// `m` must be a live handle and `passed` writable.
enum TaftydStatus taftyd_module_verify(const struct TaftydModule *m, bool *passed);

// Whether the braiding of `m` satisfies the braid relation.
//
// # Safety
// `m` must be a live handle and `passed` writable.
enum TaftydStatus taftyd_module_yang_baxter(const struct TaftydModule *m, bool *passed);

// Whether two modules over the same H are isomorphic.
//
// # Safety
// `a`, `b` must be live handles and `out` writable.
enum TaftydStatus taftyd_module_iso(const struct TaftydModule *a,
                                    const struct TaftydModule *b,
                                    bool *out);

// JSON dump of the module; free the string with [`taftyd_string_free`].
//
// # Safety
// `m` must be a live handle and `out` writable.
enum TaftydStatus taftyd_module_to_json(const struct TaftydModule *m, char **out);

// dim 𝓑ᵐ for m = 0..=max_degree, written to `out[0..=max_degree]`.
//
// # Safety
// `m` must be a live handle and `out` must hold `out_len` writable elements.
enum TaftydStatus taftyd_graded_dims(const struct TaftydModule *m,
                                     size_t max_degree,
                                     uint64_t budget,
                                     size_t *out,
                                     size_t out_len);

// Finite-dimensionality verdict for 𝓑(V(t·i1, j, λ)). `json_out` may be
// null; otherwise it receives the verdict as JSON.
//
// # Safety
// `p` must be a live handle, `lambda` a NUL-terminated string, `finite`
// writable and `json_out` null or writable.
enum TaftydStatus taftyd_classify(const struct TaftydParams *p,
                                  int64_t i1,
                                  int64_t j,
                                  const char *lambda,
                                  bool *finite,
                                  char **json_out);

// Message of the last failed call on this thread, or null. Valid until the
// next call into the library from this thread.
const char *taftyd_last_error_message(void);

// # Safety
// `s` must be a string returned by this library, freed at most once. Null is ignored.
void taftyd_string_free(char *s);

// Static name of a status code; unknown codes map to "unknown status".
const char *taftyd_status_name(int32_t code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAFTYD_H */
