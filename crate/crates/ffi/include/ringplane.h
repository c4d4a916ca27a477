#ifndef RINGPLANE_H
#define RINGPLANE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RpDepth {
  RP_DEPTH_FAST = 0,
  RP_DEPTH_DEFINITIONAL = 1,
  RP_DEPTH_ORACLE = 2,
} RpDepth;

typedef enum RpExport {
  RP_EXPORT_PLANE_JSON = 0,
  RP_EXPORT_INCIDENCE_CSV = 1,
  RP_EXPORT_GRAPH_DOT = 2,
  RP_EXPORT_GRAPH_JSON = 3,
  RP_EXPORT_GRAPH_CSV = 4,
} RpExport;

typedef enum RpRelation {
  RP_RELATION_IDENTICAL = 0,
  RP_RELATION_NEIGHBOUR = 1,
  RP_RELATION_DISTANT = 2,
} RpRelation;

typedef enum RpStatus {
  RP_STATUS_OK = 0,
  RP_STATUS_DOMAIN_ERROR = 1,
  RP_STATUS_CAPACITY_ERROR = 2,
  RP_STATUS_PARSE_ERROR = 3,
  RP_STATUS_NULL_POINTER = 4,
  RP_STATUS_OUT_OF_RANGE = 5,
  RP_STATUS_BUFFER_TOO_SMALL = 6,
  RP_STATUS_PANIC = 7,
} RpStatus;

typedef enum RpTag {
  RP_TAG_HAT = 0,
  RP_TAG_TILDE = 1,
} RpTag;

/**
 * Opaque plane handle.
 */
typedef struct RpPlane RpPlane;

/**
 * A ring element `[a,b]`.
 */
typedef struct RpRingElem {
  uint32_t a;
  uint32_t b;
} RpRingElem;

typedef struct RpTriple {
  struct RpRingElem c[3];
} RpTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next `rp_*` call on the same thread.
 */
const char *rp_last_error_message(void);

/**
 * Builds the plane of order `q` (a prime power).
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum RpStatus rp_plane_new(uint64_t q, struct RpPlane **out);

/**
 * Builds the plane over GF(p^n).
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum RpStatus rp_plane_new_pn(uint32_t p, uint32_t n, struct RpPlane **out);

/**
 * # Safety
 * `plane` must come from `rp_plane_new*` and not be used afterwards.
 * NULL is ignored.
 */
void rp_plane_free(struct RpPlane *plane);

/**
 * Order `q` of the plane, or 0 for NULL.
 *
 * # Safety
 * `plane` must be NULL or a live handle.
 */
uint32_t rp_plane_order(const struct RpPlane *plane);

/**
 * Number of points (equal to the number of lines), or 0 for NULL.
 *
 * # Safety
 * `plane` must be NULL or a live handle.
 */
uintptr_t rp_plane_point_count(const struct RpPlane *plane);

/**
 * Canonical coordinates of point (or line) `index`.
 *
 * # Safety
 * `plane` must be a live handle and `out` valid for a write.
 */
enum RpStatus rp_plane_coords(const struct RpPlane *plane, uintptr_t index, struct RpTriple *out);

/**
 * Index of the class containing an arbitrary admissible triple.
 *
 * # Safety
 * `plane` must be a live handle, `triple` readable and `out` writable.
 */
enum RpStatus rp_plane_locate(const struct RpPlane *plane,
                              const struct RpTriple *triple,
                              uintptr_t *out);

/**
 * # Safety
 * `plane` must be a live handle and `out` writable.
 */
enum RpStatus rp_plane_incident(const struct RpPlane *plane,
                                uintptr_t line,
                                uintptr_t point,
                                bool *out);

/**
 * # Safety
 * `plane` must be a live handle, `buf` valid for `cap` writes, `len`
 * writable.
 */
enum RpStatus rp_plane_points_on_line(const struct RpPlane *plane,
                                      uintptr_t line,
                                      uintptr_t *buf,
                                      uintptr_t cap,
                                      uintptr_t *len);

/**
 * # Safety
 * As for `rp_plane_points_on_line`.
 */
enum RpStatus rp_plane_lines_through_point(const struct RpPlane *plane,
                                           uintptr_t point,
                                           uintptr_t *buf,
                                           uintptr_t cap,
                                           uintptr_t *len);

/**
 * Relation between two points. With `definitional` the joining lines are
 * counted by ring incidence; otherwise the shared-projection predicate is
 * used.
 *
 * # Safety
 * `plane` must be a live handle; `kind` and `joining_lines` writable.
 */
enum RpStatus rp_plane_relate(const struct RpPlane *plane,
                              uintptr_t a,
                              uintptr_t b,
                              bool definitional,
                              enum RpRelation *kind,
                              uintptr_t *joining_lines);

/**
 * # Safety
 * As for `rp_plane_points_on_line`.
 */
enum RpStatus rp_plane_neighbourhood(const struct RpPlane *plane,
                                     uintptr_t point,
                                     uintptr_t *buf,
                                     uintptr_t cap,
                                     uintptr_t *len);

/**
 * # Safety
 * As for `rp_plane_points_on_line`.
 */
enum RpStatus rp_plane_common_neighbours(const struct RpPlane *plane,
                                         uintptr_t a,
                                         uintptr_t b,
                                         uintptr_t *buf,
                                         uintptr_t cap,
                                         uintptr_t *len);

/**
 * Image of a point in PG(2,q): canonical coordinates and index.
 *
 * # Safety
 * `plane` must be a live handle; `coords` valid for 3 writes; `index`
 * writable or NULL.
 */
enum RpStatus rp_plane_project_point(const struct RpPlane *plane,
                                     enum RpTag which,
                                     uintptr_t point,
                                     uint32_t *coords,
                                     uintptr_t *index);

/**
 * Splits the neighbourhood of `point` under one reduction. Merged
 * neighbours go to `merged`; spread neighbours go to `spread_points` with
 * their PG(2,q) image index at the same position in `spread_images`.
 *
 * # Safety
 * `plane` must be a live handle; each buffer valid for its capacity;
 * length pointers writable.
 */
enum RpStatus rp_plane_split(const struct RpPlane *plane,
                             uintptr_t point,
                             enum RpTag which,
                             uintptr_t *merged,
                             uintptr_t merged_cap,
                             uintptr_t *merged_len,
                             uintptr_t *spread_points,
                             uintptr_t *spread_images,
                             uintptr_t spread_cap,
                             uintptr_t *spread_len);

/**
 * # Safety
 * `plane` must be a live handle and `out` writable.
 */
enum RpStatus rp_plane_complementarity(const struct RpPlane *plane, uintptr_t point, bool *out);

/**
 * # Safety
 * `plane` must be a live handle and `out` writable.
 */
enum RpStatus rp_plane_line_covering(const struct RpPlane *plane, uintptr_t line, bool *out);

/**
 * Renders the plane or its neighbour graph. The string must be released
 * with `rp_string_free`.
 *
 * # Safety
 * `plane` must be a live handle and `out` writable.
 */
enum RpStatus rp_plane_export(const struct RpPlane *plane, enum RpExport kind, char **out);

/**
 * Runs the claim suite. `passed` receives the overall verdict; `report`
 * (optional) receives the text report, to be freed with `rp_string_free`.
 *
 * # Safety
 * `plane` must be a live handle; `passed` writable; `report` NULL or
 * writable.
 */
enum RpStatus rp_plane_verify(const struct RpPlane *plane,
                              enum RpDepth depth,
                              bool *passed,
                              char **report);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void rp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RINGPLANE_H */
