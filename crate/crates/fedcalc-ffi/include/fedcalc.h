#ifndef FEDCALC_H
#define FEDCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Largest fiber truncation accepted.
#define FED_MAX_ORDER 10

// Result codes.
typedef enum FedStatus {
  FED_STATUS_OK = 0,
  // A required pointer argument was null.
  FED_STATUS_NULL_POINTER = 1,
  // A string argument is not valid UTF-8.
  FED_STATUS_INVALID_UTF8 = 2,
  // A polynomial, fixture or scenario failed to parse.
  FED_STATUS_PARSE = 3,
  // Arguments are well-formed but inconsistent (index range, family, dimension).
  FED_STATUS_INVALID = 4,
  // A truncation order or arity exceeds a supported limit.
  FED_STATUS_CAPACITY = 5,
  // The operation is not defined for this element family.
  FED_STATUS_UNSUPPORTED = 6,
  // Internal error; the message has details.
  FED_STATUS_PANIC = 7,
} FedStatus;

// A torsion-free connection being assembled.
typedef struct FedConnection FedConnection;

// An element of one of the five families.
typedef struct FedElement FedElement;

// A resolved Fedosov differential.
typedef struct FedFedosov FedFedosov;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null. Valid until the next call.
const char *fed_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void fed_string_free(char *s);

// Library version as a static string.
const char *fed_version(void);

// Creates the flat connection in dimension `dim`.
//
// # Safety
// `out` must be a valid pointer.
enum FedStatus fed_connection_new(size_t dim, struct FedConnection **out);

// Sets `Γ^k_{ij}` (and so `Γ^k_{ji}`) to a polynomial in `x1..xd`.
//
// # Safety
// `conn` must be a live handle and `value` a NUL-terminated string.
enum FedStatus fed_connection_set(struct FedConnection *conn,
                                  size_t k,
                                  size_t i,
                                  size_t j,
                                  const char *value);

// # Safety
// `conn` must be null or a live handle; it is invalid afterwards.
void fed_connection_free(struct FedConnection *conn);

// Solves for `A` with fiber truncation `order` (2 ≤ order ≤ [`FED_MAX_ORDER`]).
//
// # Safety
// `conn` must be a live handle and `out` a valid pointer.
enum FedStatus fed_fedosov_compute(const struct FedConnection *conn,
                                   uint32_t order,
                                   struct FedFedosov **out);

// # Safety
// `fd` must be null or a live handle; it is invalid afterwards.
void fed_fedosov_free(struct FedFedosov *fd);

// Number of fixed-point iterations used.
//
// # Safety
// `fd` must be a live handle and `out` a valid pointer.
enum FedStatus fed_fedosov_iterations(const struct FedFedosov *fd, size_t *out);

// `A` as a new element handle.
//
// # Safety
// `fd` must be a live handle and `out` a valid pointer.
enum FedStatus fed_fedosov_a(const struct FedFedosov *fd, struct FedElement **out);

// Term count of `dB + ½[B,B]` up to fiber degree `order − 1`; zero for a correct resolution.
//
// # Safety
// `fd` must be a live handle and `out` a valid pointer.
enum FedStatus fed_fedosov_mc_residual_terms(const struct FedFedosov *fd, size_t *out);

// The flat section `τ(f)` of a base function `f`.
//
// # Safety
// `fd` must be a live handle, `f` a NUL-terminated string and `out` a valid pointer.
enum FedStatus fed_fedosov_tau(const struct FedFedosov *fd, const char *f, struct FedElement **out);

// Applies the Fedosov differential `D`.
//
// # Safety
// `fd` and `x` must be live handles and `out` a valid pointer.
enum FedStatus fed_fedosov_apply(const struct FedFedosov *fd,
                                 const struct FedElement *x,
                                 struct FedElement **out);

// Reads an element from its TOML fixture text.
//
// # Safety
// `src` must be a NUL-terminated string and `out` a valid pointer.
enum FedStatus fed_element_from_fixture(const char *src, struct FedElement **out);

// Writes an element as fixture text.
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.
enum FedStatus fed_element_to_fixture(const struct FedElement *x, char **out);

// One-line human-readable form.
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.
enum FedStatus fed_element_to_text(const struct FedElement *x, char **out);

// Number of nonzero terms.
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.
enum FedStatus fed_element_term_count(const struct FedElement *x, size_t *out);

// Keeps the terms of total fiber degree at most `degree`.
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.
enum FedStatus fed_element_up_to_degree(const struct FedElement *x,
                                        uint32_t degree,
                                        struct FedElement **out);

// `δ`.
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.
enum FedStatus fed_element_delta(const struct FedElement *x, struct FedElement **out);

// `δ⁻¹`, or `h` on chains.
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.
enum FedStatus fed_element_delta_inv(const struct FedElement *x, struct FedElement **out);

// `σ`: the part with no fiber variables and no `dx`.
//
// # Safety
// `x` must be a live handle and `out` a valid pointer.
enum FedStatus fed_element_sigma(const struct FedElement *x, struct FedElement **out);

// Writes 1 to `out` if the elements are equal, 0 otherwise. Different families compare unequal.
//
// # Safety
// `a`, `b` must be live handles and `out` a valid pointer.
enum FedStatus fed_element_equal(const struct FedElement *a,
                                 const struct FedElement *b,
                                 int32_t *out);

// # Safety
// `x` must be null or a live handle; it is invalid afterwards.
void fed_element_free(struct FedElement *x);

// Runs a scenario given as TOML text. The line-delimited report goes to `report`;
// `passed` receives 1 if every check passed.
//
// # Safety
// `scenario` must be a NUL-terminated string; `report` and `passed` valid pointers.
enum FedStatus fed_run_scenario(const char *scenario, char **report, int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FEDCALC_H */
