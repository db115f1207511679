#ifndef OCTO_H
#define OCTO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum {
  OctoStatus_Ok = 0,
  OctoStatus_NullPointer = 1,
  OctoStatus_InvalidArgument = 2,
  OctoStatus_InvalidLevel = 3,
  OctoStatus_LevelMismatch = 4,
  OctoStatus_DivisionByZero = 5,
  OctoStatus_IndexOutOfRange = 6,
  OctoStatus_InvariantViolation = 7,
  OctoStatus_NotInImage = 8,
  OctoStatus_ParseError = 9,
  OctoStatus_InternalPanic = 10,
} OctoStatus;

/**
 * Opaque octonion (or lower-level algebra element) handle.
 */
typedef struct OctoElement OctoElement;

/**
 * Opaque group-word handle.
 */
typedef struct OctoWord OctoWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string (do not free).
 */
const char *octo_version(void);

/**
 * Build an element from `len` coefficients; `len` must be 1, 2, 4 or 8.
 */
OctoStatus octo_element_new(const double *coeffs, size_t len, OctoElement **out);

/**
 * Octonion basis unit e_i.
 */
OctoStatus octo_element_basis(size_t i, OctoElement **out);

/**
 * Release an element handle (null is ignored).
 */
void octo_element_free(OctoElement *e);

/**
 * Dimension (1, 2, 4 or 8) of the element's algebra.
 */
OctoStatus octo_element_dim(const OctoElement *e, size_t *out);

/**
 * Copy the coefficients into `out`, which must hold at least `dim` values.
 */
OctoStatus octo_element_coeffs(const OctoElement *e, double *out, size_t len);

/**
 * Associator `[a, b, c]` = (ab)c - a(bc).
 */
OctoStatus octo_associator(const OctoElement *a,
                           const OctoElement *b,
                           const OctoElement *c,
                           OctoElement **out);

/**
 * Conjugate of an element.
 */
OctoStatus octo_conjugate(const OctoElement *e, OctoElement **out);

/**
 * Multiplicative inverse; fails on zero.
 */
OctoStatus octo_inverse(const OctoElement *e, OctoElement **out);

/**
 * Euclidean norm of the coefficient vector.
 */
OctoStatus octo_norm(const OctoElement *e, double *out);

/**
 * Signed octonion basis product e_i e_j = sign * e_k.
 */
OctoStatus octo_basis_product(size_t i, size_t j, int8_t *sign, size_t *index);

/**
 * Whether u^3 is real (so conjugation by u is an automorphism).
 */
OctoStatus octo_u_cubed_is_real(const OctoElement *e, bool *out);

/**
 * The conjugation map x -> u x u^{-1} as a row-major `double[64]`.
 */
OctoStatus octo_conjugation_matrix(const OctoElement *u, double *out);

/**
 * The canonical derivation D_{a,b} as a row-major `double[64]`.
 */
OctoStatus octo_d_ab_matrix(const OctoElement *a, const OctoElement *b, double *out);

/**
 * The basis derivation F^k_{ij} as a row-major `double[64]`.
 */
OctoStatus octo_f_kij_matrix(size_t k, size_t i, size_t j, double *out);

/**
 * Closed-form exponential exp(tF) for generators with F^3 = -F.
 */
OctoStatus octo_exp_f(double t, const double *f, double *out);

/**
 * Leibniz-rule test of an 8x8 map.
 */
OctoStatus octo_is_derivation(const double *m, bool *out);

/**
 * Multiplicativity test of an 8x8 map.
 */
OctoStatus octo_is_automorphism(const double *m, bool *out);

/**
 * Finite-difference tangent of the generator curve for the anticommuting
 * imaginary pair (a, b); writes the 8x8 tangent and its Frobenius distance
 * to the canonical derivation.
 */
OctoStatus octo_g2_tangent(const OctoElement *a,
                           const OctoElement *b,
                           double h,
                           double *out,
                           double *distance);

/**
 * Parse a word from its JSON form (a list of {mu, nu, q} generators).
 */
OctoStatus octo_word_from_json(const char *json, OctoWord **out);

/**
 * Release a word handle (null is ignored).
 */
void octo_word_free(OctoWord *w);

/**
 * Number of generators in the word.
 */
OctoStatus octo_word_len(const OctoWord *w, size_t *out);

/**
 * The inverse word (reversed per-generator adjugate expansions).
 */
OctoStatus octo_word_inverse(const OctoWord *w, OctoWord **out);

/**
 * Apply the word to a 10-component light-cone vector.
 */
OctoStatus octo_word_apply(const OctoWord *w, const double *vec, double *out);

/**
 * The word's 10x10 light-cone matrix, row-major `double[100]`.
 */
OctoStatus octo_word_matrix(const OctoWord *w, double *out);

/**
 * The frozen multiplication table as a JSON string (free with
 * [`octo_string_free`]).
 */
OctoStatus octo_table_json(char **out);

/**
 * Run a named verification suite; returns the JSON report as a string
 * (free with [`octo_string_free`]) and sets `passed`. `samples == 0`
 * selects the suite default.
 */
OctoStatus octo_verify_suite(const char *name,
                             uint64_t seed,
                             size_t samples,
                             char **report,
                             bool *passed);

/**
 * Release a string returned by the library (null is ignored).
 */
void octo_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OCTO_H */
