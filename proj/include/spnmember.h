/* spnmember: constructive membership for black-box symplectic groups
 * Sp(2n, q), odd q, over the six standard generators s, t, delta, u, v, x.
 *
 * All group data crosses this boundary as text:
 *   - matrices in the SPN format
 *       SPN n=<n> p=<p> k=<k> mod=<c0,...,ck>
 *       <2n rows of 2n canonical field-element integers>
 *   - programs in the SLPv1 format
 *       SLPv1 ngens=6
 *       <i>: gen <slot> | mul <a> <b> | inv <a> | pow <a> <e>
 *       return <ref>
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with spn_string_free.
 */
#ifndef SPNMEMBER_H
#define SPNMEMBER_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct spn_context spn_context;

typedef enum {
  SPN_OK = 0,
  SPN_E_BADARG = 1,        /* invalid parameters (n, p, k, flags, null) */
  SPN_E_PARSE = 2,         /* malformed matrix or program text */
  SPN_E_NOTSYMPLECTIC = 3, /* input matrix does not preserve the form */
  SPN_E_NOTINGROUP = 4,    /* target not expressible / verification failed */
  SPN_E_STEPFAILED = 5,    /* internal pipeline invariant violated */
  SPN_E_INTERNAL = 6
} spn_status;

/* Static description of a status code. */
const char* spn_status_message(spn_status st);

/* Detailed message of the most recent failure on this context; owned by the
 * context, valid until the next call on it. */
const char* spn_last_error(const spn_context* ctx);

/* Create a context for Sp(2n, p^k).  modulus is either NULL (deterministic
 * default: lexicographically smallest monic irreducible) or "c0,c1,...,ck".
 * Requires odd prime p and p^k <= 128. */
spn_status spn_context_create(int n, int p, int k, const char* modulus,
                              spn_context** out);
void spn_context_destroy(spn_context* ctx);

/* SPN text of standard generator slot 0..5 (s, t, delta, u, v, x). */
spn_status spn_generator(spn_context* ctx, int slot, char** out_text);

/* Parse a matrix and report whether it lies in Sp(2n, q).
 * Returns SPN_E_PARSE for malformed input; *out_is_symplectic is 0/1. */
spn_status spn_matrix_check(spn_context* ctx, const char* matrix_text,
                            int* out_is_symplectic);

/* Seeded random group element: a product of word_length generators or
 * inverse generators.  Deterministic per (seed, word_length).
 * out_slp_text is optional; when non-NULL it receives the SLPv1 program of
 * the construction word. */
spn_status spn_random_element(spn_context* ctx, uint64_t seed, int word_length,
                              char** out_text, char** out_slp_text);

/* Evaluate an SLPv1 program over the standard generators. */
spn_status spn_slp_eval(spn_context* ctx, const char* slp_text,
                        char** out_text);

typedef struct {
  long mul_calls; /* oracle totals over the whole rewrite */
  long inv_calls;
  long eq_calls;
  long kit_calls; /* one-time element-kit construction */
  long step1_calls;
  long step2_calls;
  long step3_calls;
  long step4_calls;
  long verify_calls;
  long slp_length; /* group operations to evaluate the program */
} spn_rewrite_stats;

/* Constructive membership: emit an SLPv1 program over the six generator
 * slots evaluating exactly to the input matrix (center included).
 *
 * white != 0      : matrix algorithm in the natural representation
 * white == 0      : black-box pipeline; the input is wrapped into an
 *                   oracle-only group scrambled with scramble_seed
 *                   (0 = unscrambled)
 * verify != 0     : re-evaluate the program and compare before returning
 * out_stats       : optional; oracle counters are zero on the white path
 */
spn_status spn_rewrite(spn_context* ctx, const char* matrix_text, int white,
                       uint64_t scramble_seed, int verify, char** out_slp_text,
                       spn_rewrite_stats* out_stats);

/* Frozen complexity ceilings for a grid cell: total oracle calls and
 * program length. */
spn_status spn_rewrite_ceilings(int n, int q, long* out_total_calls,
                                long* out_slp_length);

void spn_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SPNMEMBER_H */
