#ifndef BFP_H
#define BFP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BfpStatus {
  BFP_STATUS_OK = 0,
  BFP_STATUS_NULL_POINTER = 1,
  BFP_STATUS_BAD_PARAMETERS = 2,
  BFP_STATUS_GUARD_EXCEEDED = 3,
  BFP_STATUS_NUMERIC = 4,
  BFP_STATUS_INTERNAL = 5,
} BfpStatus;

// Result of `bfp_verify`.
typedef struct BfpReport BfpReport;

// Result of `bfp_search`.
typedef struct BfpSearch BfpSearch;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *bfp_last_error(void);

// Compares `K^±_{p,q−k}` with every one-vertex-added graph of the same size.
//
// # Safety
// `out` must be null or valid for writing one pointer.
enum BfpStatus bfp_verify(uint64_t p, uint64_t q, uint64_t k, struct BfpReport **out);

// # Safety
// `report` must be null or a handle from `bfp_verify`; `out` must be null or writable.
enum BfpStatus bfp_report_verdict(const struct BfpReport *report, bool *out);

// `ρ(K^±_{p,q−k})` from the exact route.
//
// # Safety
// As for `bfp_report_verdict`.
enum BfpStatus bfp_report_rho_pm(const struct BfpReport *report, double *out);

// # Safety
// As for `bfp_report_verdict`.
enum BfpStatus bfp_report_candidate_count(const struct BfpReport *report, size_t *out);

// Radius of candidate `index`, in order of `a`.
//
// # Safety
// As for `bfp_report_verdict`.
enum BfpStatus bfp_report_candidate_rho(const struct BfpReport *report, size_t index, double *out);

// Full report as JSON; release with `bfp_string_free`.
//
// # Safety
// As for `bfp_report_verdict`.
enum BfpStatus bfp_report_to_json(const struct BfpReport *report, char **out);

// # Safety
// `report` must be null or a handle from `bfp_verify` not yet freed.
void bfp_report_free(struct BfpReport *report);

// Exhaustive search of `𝒦(p, q, e)`. `max_subsets = 0` selects the default guard.
//
// # Safety
// `out` must be null or valid for writing one pointer.
enum BfpStatus bfp_search(uint64_t p,
                          uint64_t q,
                          uint64_t e,
                          uint64_t max_subsets,
                          bool dedup,
                          bool connected_only,
                          struct BfpSearch **out);

// Largest radius found; NaN when the family is empty.
//
// # Safety
// `search` must be null or a live handle from `bfp_search`; `out` null or writable.
enum BfpStatus bfp_search_max_rho(const struct BfpSearch *search, double *out);

// Number of maximizing graphs, counting labelled copies.
//
// # Safety
// As for `bfp_search_max_rho`.
enum BfpStatus bfp_search_maximizer_count(const struct BfpSearch *search, uint64_t *out);

// Whether some maximizer is a complete bipartite graph plus one vertex.
//
// # Safety
// As for `bfp_search_max_rho`.
enum BfpStatus bfp_search_one_vertex_added(const struct BfpSearch *search, bool *out);

// # Safety
// As for `bfp_search_max_rho`.
enum BfpStatus bfp_search_to_json(const struct BfpSearch *search, char **out);

// # Safety
// `search` must be null or a handle from `bfp_search` not yet freed.
void bfp_search_free(struct BfpSearch *search);

// `ρ(G_D)` for the nonincreasing sequence `degrees[0..len]`, with `q`
// columns (`0` means the largest degree).
//
// # Safety
// `degrees` must be null or valid for `len` reads; `out` null or writable.
enum BfpStatus bfp_spectral_radius_degrees(const uint32_t *degrees,
                                           size_t len,
                                           size_t q,
                                           double *out);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void bfp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BFP_H */
