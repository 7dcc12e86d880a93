#ifndef GAUT_H
#define GAUT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GautGraphFormat {
  GAUT_GRAPH_FORMAT_EDGE_LIST = 0,
  GAUT_GRAPH_FORMAT_HYPERGRAPH_JSON = 1,
  GAUT_GRAPH_FORMAT_DOT = 2,
} GautGraphFormat;

/**
 * Result of every fallible call.
 */
typedef enum GautStatus {
  GAUT_STATUS_OK = 0,
  GAUT_STATUS_NULL_POINTER = 1,
  GAUT_STATUS_INVALID_UTF8 = 2,
  GAUT_STATUS_SYNTAX = 3,
  GAUT_STATUS_RANK_MISMATCH = 4,
  GAUT_STATUS_UNKNOWN_SYMBOL = 5,
  GAUT_STATUS_BUDGET_EXCEEDED = 6,
  GAUT_STATUS_INVALID_ARGUMENT = 7,
  GAUT_STATUS_NOT_TS_REL = 8,
  GAUT_STATUS_INTERNAL = 9,
} GautStatus;

/**
 * A graph automaton.
 */
typedef struct GautAutomaton GautAutomaton;

/**
 * A hypergraph.
 */
typedef struct GautGraph GautGraph;

/**
 * A magmoid term.
 */
typedef struct GautTerm GautTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null after a
 * successful call. Owned by the library.
 */
const char *gaut_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gaut_string_free(char *s);

/**
 * Parses a term in S-expression syntax.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum GautStatus gaut_term_parse(const char *src, struct GautTerm **out);

/**
 * # Safety
 * `t` must be a live term; `out` must be writable.
 */
enum GautStatus gaut_term_to_string(const struct GautTerm *t, char **out);

/**
 * # Safety
 * `t` must be a live term; `m`, `n` must be writable.
 */
enum GautStatus gaut_term_rank(const struct GautTerm *t, size_t *m, size_t *n);

/**
 * Number of atom leaves, or 0 for a null term.
 *
 * # Safety
 * `t` must be null or a live term.
 */
size_t gaut_term_atom_count(const struct GautTerm *t);

/**
 * # Safety
 * `t` must be null or a term not yet freed.
 */
void gaut_term_free(struct GautTerm *t);

/**
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum GautStatus gaut_graph_parse(const char *src,
                                 enum GautGraphFormat format,
                                 struct GautGraph **out);

/**
 * # Safety
 * `g` must be a live graph; `out` must be writable.
 */
enum GautStatus gaut_graph_to_json(const struct GautGraph *g, char **out);

/**
 * # Safety
 * `g`, `h` must be live graphs; `out` must be writable.
 */
enum GautStatus gaut_graph_isomorphic(const struct GautGraph *g,
                                      const struct GautGraph *h,
                                      bool *out);

/**
 * # Safety
 * `g` must be null or a graph not yet freed.
 */
void gaut_graph_free(struct GautGraph *g);

/**
 * A term whose graph evaluation is isomorphic to `g`.
 *
 * # Safety
 * `g` must be a live graph; `out` must be writable.
 */
enum GautStatus gaut_graph_encode(const struct GautGraph *g, struct GautTerm **out);

/**
 * # Safety
 * `t` must be a live term; `out` must be writable.
 */
enum GautStatus gaut_term_eval_graph(const struct GautTerm *t, struct GautGraph **out);

/**
 * Reads an automaton from its JSON description.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum GautStatus gaut_automaton_from_json(const char *src, struct GautAutomaton **out);

/**
 * The k-coloring automaton.
 *
 * # Safety
 * `out` must be writable.
 */
enum GautStatus gaut_automaton_coloring(size_t k, struct GautAutomaton **out);

/**
 * # Safety
 * `a` must be a live automaton, `t` a live term; `out` must be writable.
 */
enum GautStatus gaut_automaton_accepts(const struct GautAutomaton *a,
                                       const struct GautTerm *t,
                                       bool *out);

/**
 * # Safety
 * `a` must be null or an automaton not yet freed.
 */
void gaut_automaton_free(struct GautAutomaton *a);

/**
 * Decides k-colorability. When the graph is colorable and `witness` is not
 * null, `*witness` receives a JSON object mapping node ids to colors;
 * otherwise `*witness` is set to null.
 *
 * # Safety
 * `g` must be a live graph; `colorable` must be writable; `witness` must be
 * null or writable.
 */
enum GautStatus gaut_is_k_colorable(const struct GautGraph *g,
                                    size_t k,
                                    bool *colorable,
                                    char **witness);

/**
 * Checks the graph equations in TSRel({1..states}) and returns the report
 * as JSON.
 *
 * # Safety
 * `holds` and `report` must be writable.
 */
enum GautStatus gaut_check_axioms(size_t states, bool *holds, char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GAUT_H */
