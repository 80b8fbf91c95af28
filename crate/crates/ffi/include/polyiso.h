#ifndef POLYISO_H
#define POLYISO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum PolyisoStatus {
  POLYISO_STATUS_OK = 0,
  POLYISO_STATUS_NULL_POINTER = 1,
  POLYISO_STATUS_DEGENERATE = 2,
  POLYISO_STATUS_DOMAIN = 3,
  POLYISO_STATUS_OVERFLOW = 4,
  POLYISO_STATUS_INVALID_APEX_PAIR = 5,
  POLYISO_STATUS_NOT_OCTAHEDRAL = 6,
  POLYISO_STATUS_BUDGET_EXCEEDED = 7,
  POLYISO_STATUS_CERTIFICATION_FAILED = 8,
  POLYISO_STATUS_PARSE = 9,
  POLYISO_STATUS_IO = 10,
  POLYISO_STATUS_BUFFER_TOO_SMALL = 11,
  POLYISO_STATUS_PANIC = 12,
} PolyisoStatus;

// A complete branch-and-bound certificate.
typedef struct PolyisoCertificate PolyisoCertificate;

// A convex polytope.
typedef struct PolyisoPolytope PolyisoPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *polyiso_last_error(void);

// Library version as a static string.
const char *polyiso_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void polyiso_string_free(char *s);

// Convex hull of `n` points given as `3n` packed coordinates.
//
// # Safety
// `xyz` must point to `3 * n` doubles; `out` must be writable.
enum PolyisoStatus polyiso_polytope_from_points(const double *xyz,
                                                size_t n,
                                                struct PolyisoPolytope **out_poly);

// Polytope from a JSON or OFF file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum PolyisoStatus polyiso_polytope_load(const char *path, struct PolyisoPolytope **out_poly);

// # Safety
// `p` must be null or a handle from this library, not yet freed.
void polyiso_polytope_free(struct PolyisoPolytope *p);

// Number of vertices, 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t polyiso_polytope_vertex_count(const struct PolyisoPolytope *p);

// Copies the vertices as packed `x, y, z` triples into `buf` of `len` doubles.
//
// # Safety
// `p` must be a live handle and `buf` must hold `len` doubles.
enum PolyisoStatus polyiso_polytope_vertices(const struct PolyisoPolytope *p,
                                             double *buf,
                                             size_t len);

// Volume, surface area and `S^3 / V^2`. Any output pointer may be null.
//
// # Safety
// `p` must be a live handle; non-null outputs must be writable.
enum PolyisoStatus polyiso_polytope_measures(const struct PolyisoPolytope *p,
                                             double *volume,
                                             double *surface,
                                             double *ratio);

// Steiner symmetral about the plane through the origin orthogonal to `normal[3]`.
//
// # Safety
// `p` must be a live handle, `normal` must point to 3 doubles, `out` writable.
enum PolyisoStatus polyiso_steiner_symmetral(const struct PolyisoPolytope *p,
                                             const double *normal,
                                             struct PolyisoPolytope **out_poly);

// Symmetral along `v_j - v_i` for an apex pair of the fan triangulation;
// vertex numbering is kept.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyisoStatus polyiso_bipyramid_symmetral(const struct PolyisoPolytope *p,
                                               size_t i,
                                               size_t j,
                                               struct PolyisoPolytope **out_poly);

// Closed-form `V`, `S` and `G = S^3 - 188 V^2` at `params = [x1, x2, x3, y1, y2]`.
// Any output pointer may be null.
//
// # Safety
// `params` must point to 5 doubles; non-null outputs must be writable.
enum PolyisoStatus polyiso_strange_eval(const double *params, double *v, double *s, double *g);

// Ratio of the five-vertex double pyramid with base inradius `rho`.
//
// # Safety
// `out` must be writable.
enum PolyisoStatus polyiso_strange5_ratio(double rho, double *out_ratio);

// Certified enclosures `[lo, hi]` of the minimiser and minimum of the
// five-vertex ratio over `[rho_lo, rho_hi]`, each at most `tol` wide.
//
// # Safety
// `argmin` and `min` must each point to 2 writable doubles.
enum PolyisoStatus polyiso_strange5_minimum(double rho_lo,
                                            double rho_hi,
                                            double tol,
                                            double *argmin,
                                            double *min);

// Branch and bound for `G > threshold` over `[0, coord_max]^5` under the
// six-vertex conditions. Zero budgets select the defaults; `jobs = 0`
// uses all cores. On `BudgetExceeded` the message carries the least
// unresolved lower bound and `out` stays null.
//
// # Safety
// `out` must be writable.
enum PolyisoStatus polyiso_certify_six_vertex(double threshold,
                                              uint64_t max_boxes,
                                              double max_seconds,
                                              uint32_t jobs,
                                              struct PolyisoCertificate **out_cert);

// # Safety
// `c` must be null or a live certificate handle.
void polyiso_certificate_free(struct PolyisoCertificate *c);

// 1 if the certificate establishes its claim, 0 otherwise or for null.
//
// # Safety
// `c` must be null or a live handle.
int32_t polyiso_certificate_holds(const struct PolyisoCertificate *c);

// Number of leaves, 0 for null.
//
// # Safety
// `c` must be null or a live handle.
size_t polyiso_certificate_leaf_count(const struct PolyisoCertificate *c);

// Least verified lower bound. `Domain` if the whole root is infeasible.
//
// # Safety
// `c` must be a live handle and `out` writable.
enum PolyisoStatus polyiso_certificate_margin(const struct PolyisoCertificate *c,
                                              double *out_margin);

// Certificate as JSON; release with `polyiso_string_free`.
//
// # Safety
// `c` must be a live handle and `out` writable.
enum PolyisoStatus polyiso_certificate_to_json(const struct PolyisoCertificate *c, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYISO_H */
