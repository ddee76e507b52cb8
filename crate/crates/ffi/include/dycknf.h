#ifndef DYCKNF_H
#define DYCKNF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DnfStatus {
  DNF_STATUS_OK = 0,
  DNF_STATUS_NULL_POINTER = 1,
  DNF_STATUS_INVALID_UTF8 = 2,
  DNF_STATUS_PARSE = 3,
  DNF_STATUS_NOT_CNF = 4,
  DNF_STATUS_CONVERSION = 5,
  DNF_STATUS_INVALID_WORD = 6,
  DNF_STATUS_NOT_EVEN_LINEAR = 7,
  DNF_STATUS_RESOURCE_LIMIT = 8,
  DNF_STATUS_PANIC = 9,
} DnfStatus;

/**
 * Opaque grammar handle.
 */
typedef struct DnfGrammar DnfGrammar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *dnf_last_error(void);

/**
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DnfStatus dnf_grammar_parse(const char *text, struct DnfGrammar **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice. NULL is ignored.
 */
void dnf_grammar_free(struct DnfGrammar *g);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. NULL is ignored.
 */
void dnf_string_free(char *s);

/**
 * Grammar text; release with `dnf_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DnfStatus dnf_grammar_serialize(const struct DnfGrammar *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; output pointers must be valid.
 */
enum DnfStatus dnf_grammar_size(const struct DnfGrammar *g,
                                uintptr_t *nonterminals,
                                uintptr_t *rules);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DnfStatus dnf_is_cnf(const struct DnfGrammar *g, bool *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DnfStatus dnf_is_dyck_nf(const struct DnfGrammar *g, bool *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DnfStatus dnf_to_cnf(const struct DnfGrammar *g, struct DnfGrammar **out);

/**
 * Converts a CNF grammar whose start symbol is not on any right-hand side.
 * When `ledger` is not NULL it receives the substitution ledger, one entry
 * per line.
 *
 * # Safety
 * `g` must be a live handle, `out` a valid pointer, `ledger` valid or NULL.
 */
enum DnfStatus dnf_to_dyck_nf(const struct DnfGrammar *g, struct DnfGrammar **out, char **ledger);

/**
 * CYK membership; the grammar must be in CNF.
 *
 * # Safety
 * `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
 */
enum DnfStatus dnf_member(const struct DnfGrammar *g, const char *word, bool *out);

/**
 * Trace-word of the canonical derivation tree of `word`, as `[1 ]1 ...`.
 *
 * # Safety
 * `g` must be a live Dyck normal form handle, `word` a NUL-terminated
 * string, `out` valid.
 */
enum DnfStatus dnf_trace(const struct DnfGrammar *g, const char *word, char **out);

/**
 * Membership in D_k, decided by both oracles.
 *
 * # Safety
 * `word` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DnfStatus dnf_check_dyck(const char *word, bool *out);

/**
 * Checks the bracket characterization of a Dyck normal form grammar up to
 * `max_len`. `report` may be NULL.
 *
 * # Safety
 * `g` must be a live handle, `passed` valid, `report` valid or NULL.
 */
enum DnfStatus dnf_verify_characterization(const struct DnfGrammar *g,
                                           uintptr_t max_len,
                                           bool *passed,
                                           char **report);

/**
 * Runs the even linear recognizer. An even linear grammar is converted
 * first; otherwise the handle must already be the output of that
 * conversion. `report` may be NULL.
 *
 * # Safety
 * `g` must be a live handle, `word` a NUL-terminated string, `accepted`
 * valid, `report` valid or NULL.
 */
enum DnfStatus dnf_elin_recognize(const struct DnfGrammar *g,
                                  const char *word,
                                  bool *accepted,
                                  char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYCKNF_H */
