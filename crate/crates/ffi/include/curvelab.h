#ifndef CURVELAB_H
#define CURVELAB_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stddef.h>

typedef enum {
  CURVELAB_STATUS_OK = 0,
  CURVELAB_STATUS_NULL_POINTER = 1,
  CURVELAB_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed curve spec or out-of-range argument.
   */
  CURVELAB_STATUS_INVALID_INPUT = 3,
  /**
   * The curve is degenerate for the requested operation.
   */
  CURVELAB_STATUS_DEGENERATE = 4,
  /**
   * The operation needs a support-function curve.
   */
  CURVELAB_STATUS_NOT_SUPPORT_CURVE = 5,
  /**
   * The output buffer is too small; the required length was written.
   */
  CURVELAB_STATUS_BUFFER_TOO_SMALL = 6,
  CURVELAB_STATUS_PANIC = 7,
  CURVELAB_STATUS_OTHER = 8,
} CurvelabStatus;

/**
 * Opaque curve handle.
 */
typedef struct CurvelabCurve CurvelabCurve;

typedef struct {
  double x;
  double y;
} CurvelabVec2;

typedef struct {
  CurvelabVec2 location;
  /**
   * Angle in `[0, π]` at which the point is singular on the evolutoid.
   */
  double alpha;
} CurvelabSesPoint;

typedef struct {
  double param;
  CurvelabVec2 location;
  bool is_cusp;
} CurvelabSingularity;

typedef struct {
  double area;
  double evolute_area;
  /**
   * Oriented area of the evolutoid.
   */
  double lhs;
  double rhs;
  double residual;
  /**
   * `area·cos²α − lhs`.
   */
  double gap;
  bool inequality_holds;
  bool is_circle;
} CurvelabAreas;

typedef struct {
  double x;
  double y;
  double z;
} CurvelabVec3;

typedef struct {
  /**
   * `(α, x, y)`.
   */
  CurvelabVec3 position;
  CurvelabVec3 normal;
  /**
   * Signed area factor; zero on the singular curve.
   */
  double lambda;
} CurvelabFrontSample;

typedef struct {
  double lhs;
  double lhs_error;
  double rhs;
  double rhs_error;
  double relative_residual;
  size_t swallowtails;
} CurvelabGaussBonnet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null after a
 * successful call. The pointer stays valid until the next call on the
 * same thread.
 */
const char *curvelab_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *curvelab_version(void);

/**
 * Parse a JSON curve spec into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
CurvelabStatus curvelab_curve_from_json(const char *json, CurvelabCurve **out);

/**
 * Release a handle. Null is accepted.
 *
 * # Safety
 * `curve` must come from [`curvelab_curve_from_json`] and not be freed twice.
 */
void curvelab_curve_free(CurvelabCurve *curve);

/**
 * Whether the handle holds a support-function curve (fronts, Gauss-Bonnet
 * and areas need one).
 *
 * # Safety
 * `curve` must be a live handle or null.
 */
bool curvelab_curve_is_support(const CurvelabCurve *curve);

/**
 * Point of the base curve at `param`.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
CurvelabStatus curvelab_curve_point(const CurvelabCurve *curve, double param, CurvelabVec2 *out);

/**
 * Point of the `alpha`-evolutoid at `param`, for `alpha` in `[0, π]`.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
CurvelabStatus curvelab_evolutoid_point(const CurvelabCurve *curve,
                                        double alpha,
                                        double param,
                                        CurvelabVec2 *out);

/**
 * Point of the singular evolutoid set at `param`.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
CurvelabStatus curvelab_ses_point(const CurvelabCurve *curve, double param, CurvelabSesPoint *out);

/**
 * Singular points of the `alpha`-evolutoid, `alpha` strictly inside `(0, π)`.
 *
 * `*len` always receives the number of points. With `buffer` null and
 * `capacity` zero the call only queries that number; otherwise a short
 * buffer yields `CURVELAB_STATUS_BUFFER_TOO_SMALL` and is left untouched.
 *
 * # Safety
 * `curve` must be a live handle, `len` valid, and `buffer` valid for
 * `capacity` elements unless null.
 */
CurvelabStatus curvelab_singular_params(const CurvelabCurve *curve,
                                        double alpha,
                                        CurvelabSingularity *buffer,
                                        size_t capacity,
                                        size_t *len);

/**
 * Area identity and inequality for the `alpha`-evolutoid of a support curve.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
CurvelabStatus curvelab_areas(const CurvelabCurve *curve, double alpha, CurvelabAreas *out);

/**
 * Front point, unit normal and area factor at `(alpha, theta)`.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
CurvelabStatus curvelab_front_sample(const CurvelabCurve *curve,
                                     double alpha,
                                     double theta,
                                     CurvelabFrontSample *out);

/**
 * Both sides of the Gauss-Bonnet identity on the front, each integrated to
 * absolute tolerance `tol`.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
CurvelabStatus curvelab_gauss_bonnet(const CurvelabCurve *curve,
                                     double tol,
                                     CurvelabGaussBonnet *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVELAB_H */
