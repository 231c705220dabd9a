#ifndef URLAB_H
#define URLAB_H

/* Generated by cbindgen from urlab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum UrlabStatus {
  // Success.
  UrlabStatus_Ok = 0,
  // A mathematical check failed on structurally valid input.
  UrlabStatus_CheckFailed = 1,
  // The input could not be parsed or violates a schema precondition.
  UrlabStatus_InvalidInput = 2,
  // A required pointer argument was NULL.
  UrlabStatus_NullPointer = 3,
  // An input string was not valid UTF-8.
  UrlabStatus_InvalidUtf8 = 4,
  // Internal failure (a bug; details via `urlab_last_error`).
  UrlabStatus_Internal = 5,
} UrlabStatus;

// Opaque handle to a verified representation.
typedef struct UrlabRep UrlabRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread; never free it.
const char *urlab_last_error(void);

// Build a representation from a `"v1"` parameter/representation JSON
// document. On success `*out` owns the new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum UrlabStatus urlab_rep_build(const char *json, struct UrlabRep **out);

// Serialize a representation (parameters, images, certificate) to JSON.
//
// # Safety
// `rep` must be a live handle from this library; `out` must be valid.
enum UrlabStatus urlab_rep_to_json(const struct UrlabRep *rep, char **out);

// Analyze a representation; `*out` receives the analysis report JSON.
//
// # Safety
// `rep` must be a live handle from this library; `out` must be valid.
enum UrlabStatus urlab_rep_analyze(const struct UrlabRep *rep, char **out);

// Canonically normalize a representation into a fresh handle.
//
// # Safety
// `rep` must be a live handle from this library; `out` must be valid.
enum UrlabStatus urlab_rep_normalize(const struct UrlabRep *rep, struct UrlabRep **out);

// Matrix dimension of the representation, 0 for a NULL handle.
//
// # Safety
// `rep` must be NULL or a live handle from this library.
size_t urlab_rep_dim(const struct UrlabRep *rep);

// Evaluate the independence predicate and its brute-force oracle on a
// `{"a","b","c","P","Q"}` payload; `*out` receives the result JSON.
//
// # Safety
// `payload_json` must be NUL-terminated; `out` must be valid.
enum UrlabStatus urlab_lidep(const char *payload_json, char **out);

// Faithfulness sweep over the seeded grid; `*out` receives the report JSON.
// Returns `CheckFailed` when the sweep finds a counterexample.
//
// # Safety
// `out` must be a valid pointer.
enum UrlabStatus urlab_sweep_faithful(uint32_t n_min,
                                      uint32_t n_max,
                                      uint32_t samples,
                                      uint64_t seed,
                                      char **out);

// Four-block obstruction scan up to `dmax`; `*out` receives the report
// JSON. Returns `CheckFailed` on obstruction mismatches.
//
// # Safety
// `out` must be a valid pointer.
enum UrlabStatus urlab_reduccion_scan(uint32_t dmax, uint32_t samples, uint64_t seed, char **out);

// Tensor-module crosscheck; `*out` receives the report JSON.
//
// # Safety
// `out` must be a valid pointer.
enum UrlabStatus urlab_crosscheck_sl2(uint64_t seed, char **out);

// Release a representation handle. NULL is a no-op.
//
// # Safety
// `rep` must be NULL or a handle returned by this library, not yet freed.
void urlab_rep_free(struct UrlabRep *rep);

// Release a string returned by this library. NULL is a no-op.
//
// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void urlab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* URLAB_H */
