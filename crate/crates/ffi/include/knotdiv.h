#ifndef KNOTDIV_H
#define KNOTDIV_H

/* Generated by cbindgen from the knotdiv-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum KdStatus {
  KD_STATUS_OK = 0,
  KD_STATUS_NULL_POINTER = 1,
  KD_STATUS_INVALID_UTF8 = 2,
  KD_STATUS_PARSE = 3,
  KD_STATUS_INVALID_DIAGRAM = 4,
  KD_STATUS_ORIENTATION = 5,
  KD_STATUS_BUDGET_EXCEEDED = 6,
  KD_STATUS_ZERO_POLYNOMIAL = 7,
  KD_STATUS_INEXACT_DIVISION = 8,
  KD_STATUS_POLYNOMIAL_SYNTAX = 9,
  KD_STATUS_INVALID_MATCHING = 10,
  KD_STATUS_SIZE_MISMATCH = 11,
  KD_STATUS_INCOMPATIBLE_MATCHING = 12,
  KD_STATUS_UNKNOWN_BUILTIN = 13,
  KD_STATUS_INVALID_PARAMETER = 14,
  KD_STATUS_PANIC = 15,
} KdStatus;

/**
 * Opaque link diagram.
 */
typedef struct KdLink KdLink;

/**
 * Opaque local move.
 */
typedef struct KdMove KdMove;

/**
 * Opaque Laurent polynomial in `A`.
 */
typedef struct KdPoly KdPoly;

/**
 * Opaque tangle.
 */
typedef struct KdTangle KdTangle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *kd_last_error(void);

/**
 * Releases a string returned by this library.
 */
void kd_string_free(char *s);

/**
 * Parses a link diagram in `X`/`V`/`O` line format.
 */
enum KdStatus kd_link_parse(const char *src, struct KdLink **out);

/**
 * A named link such as `"trefoil-left"` or `"torus2:5"`.
 */
enum KdStatus kd_link_builtin(const char *spec, struct KdLink **out);

void kd_link_free(struct KdLink *link);

/**
 * Renders the diagram as text; release with [`kd_string_free`].
 */
enum KdStatus kd_link_render(const struct KdLink *link, char **out);

enum KdStatus kd_link_writhe(const struct KdLink *link, int64_t *out);

enum KdStatus kd_link_components(const struct KdLink *link, size_t *out);

/**
 * Kauffman bracket.
 */
enum KdStatus kd_link_bracket(const struct KdLink *link, struct KdPoly **out);

/**
 * Auxiliary polynomial `(-A^3)^(-w) <L>`.
 */
enum KdStatus kd_link_f(const struct KdLink *link, struct KdPoly **out);

/**
 * Jones polynomial, with `A` standing for `q = t^(1/4)`.
 */
enum KdStatus kd_link_jones(const struct KdLink *link, struct KdPoly **out);

/**
 * Parses a tangle in `TANGLE n` format.
 */
enum KdStatus kd_tangle_parse(const char *src, struct KdTangle **out);

/**
 * A named tangle such as `"delta"` or `"half-twists:4"`.
 */
enum KdStatus kd_tangle_builtin(const char *spec, struct KdTangle **out);

void kd_tangle_free(struct KdTangle *t);

/**
 * Closure by a matching written as `"(1 2)(3 4)"`; `modified` selects
 * the orientation-preserving replacement of chord crossings.
 */
enum KdStatus kd_tangle_closure(const struct KdTangle *t,
                                const char *matching,
                                bool modified,
                                struct KdLink **out);

/**
 * Two tangle blocks separated by a `---` line.
 */
enum KdStatus kd_move_parse(const char *src, struct KdMove **out);

/**
 * A named move; `t` is the tangle for rotational moves and null otherwise.
 */
enum KdStatus kd_move_builtin(const char *name, const struct KdTangle *t, struct KdMove **out);

void kd_move_free(struct KdMove *mv);

/**
 * gcd of the move's closure differences; the zero polynomial when they
 * all vanish.
 */
enum KdStatus kd_move_divisor(const struct KdMove *mv, struct KdPoly **out);

/**
 * Sets `*possible` to false when the move provably cannot relate the links.
 */
enum KdStatus kd_check_divisibility(const struct KdLink *l1,
                                    const struct KdLink *l2,
                                    const struct KdMove *mv,
                                    bool *possible);

/**
 * Parses text such as `"-A^-4 + 2 - A^4"`.
 */
enum KdStatus kd_poly_parse(const char *src, struct KdPoly **out);

void kd_poly_free(struct KdPoly *p);

/**
 * Canonical text, ascending by exponent; release with [`kd_string_free`].
 */
enum KdStatus kd_poly_to_string(const struct KdPoly *p, char **out);

enum KdStatus kd_poly_is_zero(const struct KdPoly *p, bool *out);

/**
 * Whether `d` divides `p` in `Z[A, A^-1]`.
 */
enum KdStatus kd_poly_divides(const struct KdPoly *d, const struct KdPoly *p, bool *out);

/**
 * Number of perfect matchings of `2n` points, or of noncrossing ones.
 */
enum KdStatus kd_matching_count(size_t n, bool noncrossing, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNOTDIV_H */
