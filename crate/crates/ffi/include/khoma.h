#ifndef KHOMA_H
#define KHOMA_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum KhomaStatus {
  KHOMA_STATUS_OK = 0,
  KHOMA_STATUS_NULL_POINTER = 1,
  KHOMA_STATUS_INVALID_UTF8 = 2,
  KHOMA_STATUS_PARSE = 3,
  KHOMA_STATUS_INVALID_ARGUMENT = 4,
  KHOMA_STATUS_OVERFLOW = 5,
  KHOMA_STATUS_PANIC = 6,
} KhomaStatus;

/**
 * Layout for `khoma_homology_render`.
 */
typedef enum KhomaFormat {
  KHOMA_FORMAT_JSON = 0,
  KHOMA_FORMAT_CSV = 1,
  KHOMA_FORMAT_MARKDOWN = 2,
  KHOMA_FORMAT_TEXT = 3,
} KhomaFormat;

/**
 * A link diagram.
 */
typedef struct KhomaDiagram KhomaDiagram;

/**
 * Nontrivial homology groups by bigrade.
 */
typedef struct KhomaHomologyTable KhomaHomologyTable;

/**
 * A Laurent polynomial in `A`.
 */
typedef struct KhomaPolynomial KhomaPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next `khoma_*` call on the same thread.
 */
const char *khoma_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *khoma_version(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void khoma_string_free(char *s);

/**
 * Parse a PD code such as `"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"`.
 *
 * # Safety
 * `pd` must be a NUL-terminated string; `out` must be writable.
 */
enum KhomaStatus khoma_diagram_parse(const char *pd, struct KhomaDiagram **out);

/**
 * The standard diagram of the torus link `T(2,n)`, `n ≥ 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum KhomaStatus khoma_diagram_torus(uint32_t n, struct KhomaDiagram **out);

/**
 * Number of crossings; 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live diagram handle.
 */
size_t khoma_diagram_crossing_count(const struct KhomaDiagram *d);

/**
 * The diagram as PD text.
 *
 * # Safety
 * `d` must be a live diagram handle; `out` must be writable.
 */
enum KhomaStatus khoma_diagram_to_string(const struct KhomaDiagram *d, char **out);

/**
 * # Safety
 * `d` must be null or a live diagram handle; it is invalid afterwards.
 */
void khoma_diagram_free(struct KhomaDiagram *d);

/**
 * Kauffman bracket: reduced (`⟨○⟩ = 1`) or unreduced (`[∅] = 1`).
 *
 * # Safety
 * `d` must be a live diagram handle; `out` must be writable.
 */
enum KhomaStatus khoma_bracket(const struct KhomaDiagram *d,
                               bool unreduced,
                               struct KhomaPolynomial **out);

/**
 * Coefficient of `A^exponent`; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live polynomial handle.
 */
int64_t khoma_polynomial_coefficient(const struct KhomaPolynomial *p, int64_t exponent);

/**
 * Text form, e.g. `A^-7 - A^-3 - A^5`.
 *
 * # Safety
 * `p` must be a live polynomial handle; `out` must be writable.
 */
enum KhomaStatus khoma_polynomial_to_string(const struct KhomaPolynomial *p, char **out);

/**
 * JSON object from exponent strings to coefficients.
 *
 * # Safety
 * `p` must be a live polynomial handle; `out` must be writable.
 */
enum KhomaStatus khoma_polynomial_to_json(const struct KhomaPolynomial *p, char **out);

/**
 * # Safety
 * `p` must be null or a live polynomial handle; it is invalid afterwards.
 */
void khoma_polynomial_free(struct KhomaPolynomial *p);

/**
 * Framed Khovanov homology of a diagram.
 *
 * # Safety
 * `d` must be a live diagram handle; `out` must be writable.
 */
enum KhomaStatus khoma_homology(const struct KhomaDiagram *d, struct KhomaHomologyTable **out);

/**
 * Number of nontrivial groups; 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live table handle.
 */
size_t khoma_homology_len(const struct KhomaHomologyTable *t);

/**
 * The group at `(a, b)`: its free rank, and up to `capacity` torsion
 * orders written to `torsion` (may be null when `capacity` is 0).
 * `torsion_len` receives the full number of torsion factors.
 *
 * # Safety
 * `t` must be a live table handle; `free_rank` and `torsion_len` must be
 * writable; `torsion` must have room for `capacity` values.
 */
enum KhomaStatus khoma_homology_get(const struct KhomaHomologyTable *t,
                                    int64_t a,
                                    int64_t b,
                                    size_t *free_rank,
                                    uint64_t *torsion,
                                    size_t capacity,
                                    size_t *torsion_len);

/**
 * Bigrade of the `index`-th entry, ordered by `b` descending then `a`
 * ascending.
 *
 * # Safety
 * `t` must be a live table handle; `a` and `b` must be writable.
 */
enum KhomaStatus khoma_homology_bigrade(const struct KhomaHomologyTable *t,
                                        size_t index,
                                        int64_t *a,
                                        int64_t *b);

/**
 * The table as JSON, CSV, markdown or aligned text.
 *
 * # Safety
 * `t` must be a live table handle; `out` must be writable.
 */
enum KhomaStatus khoma_homology_render(const struct KhomaHomologyTable *t,
                                       enum KhomaFormat format,
                                       char **out);

/**
 * # Safety
 * `t` must be null or a live table handle; it is invalid afterwards.
 */
void khoma_homology_free(struct KhomaHomologyTable *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KHOMA_H */
