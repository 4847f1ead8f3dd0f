/* graphupsilon: exact computation of the Upsilon invariant of labeled
 * balanced bipartite graphs and their multi-graded chain complexes.
 *
 * Conventions
 *   - Every payload is a UTF-8 JSON string; numbers that may be non-integral
 *     are exact rational strings such as "-3/2".
 *   - Functions that can fail return NULL (object makers) or a negative
 *     value (gu_selftest) and, when `err` is non-NULL, store a JSON object
 *     {"code": "E_...", "message": "...", "details": ...} in *err.
 *   - Every char* returned through the API (including *err) is owned by the
 *     caller and must be released with gu_string_free; handles are released
 *     with their matching *_free function.  All functions tolerate NULL
 *     `err`; no function tolerates NULL handles or NULL input strings.
 *   - Weight vectors are passed as comma-separated rationals, e.g. "3/2,1/2".
 *   - `threads` arguments: 0 picks the THETA_UPSILON_THREADS environment
 *     variable or, failing that, the number of logical cores.
 *   - `max_depth` arguments: 0 picks the default subdivision budget (20).
 */

#ifndef GRAPHUPSILON_H
#define GRAPHUPSILON_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define GU_API __declspec(dllexport)
#else
#define GU_API __attribute__((visibility("default")))
#endif

typedef struct gu_graph gu_graph;
typedef struct gu_complex gu_complex;

/* Library version as "major.minor.patch". Static storage; do not free. */
GU_API const char* gu_version(void);

/* Releases a string returned by any API function. NULL is a no-op. */
GU_API void gu_string_free(char* s);

/* ---- graphs -------------------------------------------------------- */

/* Parses and validates a labeled balanced bipartite graph:
 * {"pos": ["p1", ...], "neg": ["n1", ...], "edges": [["n1", "p1"], ...]}.
 * Edges are numbered 1..kappa in input order. */
GU_API gu_graph* gu_graph_parse(const char* json, char** err);
GU_API void gu_graph_free(gu_graph* g);

/* JSON array of the canonical ids of all perfect matchings, sorted. */
GU_API char* gu_graph_matchings(const gu_graph* g, char** err);

/* The solution polytope: {"dim": d, "vertices": [{"matching": id,
 * "t": ["2", "0", ...]}, ...]} with vertices in canonical matching order. */
GU_API char* gu_graph_polytope(const gu_graph* g, char** err);

/* Convex decomposition of a weight vector over matching vertices:
 * {"t": [...], "terms": [{"matching": id, "coefficient": "1/2"}, ...]}. */
GU_API char* gu_graph_decompose(const gu_graph* g, const char* t_csv,
                                char** err);

/* The pulling triangulation of the solution polytope: {"dim": d,
 * "vertices": [["2", "0"], ...], "simplices": {"0": [[0], ...], ...}}
 * where simplices of each dimension list sorted vertex-index tuples. */
GU_API char* gu_graph_delta_complex(const gu_graph* g, char** err);

/* ---- complexes ------------------------------------------------------ */

/* Parses a multi-graded chain complex
 * {"graph": ..., "generators": [{"id": "a", "gr": {"1": "0", ...}}, ...],
 *  "arrows": [{"from": "b", "to": "a", "exp": [0, 1]}, ...]}
 * and verifies every structural invariant (grading law, d^2 = 0, ...). */
GU_API gu_complex* gu_complex_parse(const char* json, char** err);

/* Imports a bigraded knot complex {"generators": [{"id", "M", "A"}, ...],
 * "arrows": [{"from", "to", "z", "w"}, ...]} as a two-edge theta complex
 * (edge 1 carries the z-strand, edge 2 the w-strand). */
GU_API gu_complex* gu_complex_from_cfk(const char* json, char** err);

GU_API void gu_complex_free(gu_complex* c);

/* Structural report without failing: {"valid": bool, "issues": [
 * {"code": ..., "message": ..., "details": ...}, ...]}. */
GU_API char* gu_complex_validate(const char* json, char** err);

/* Serializes a complex handle back to its input schema. */
GU_API char* gu_complex_to_json(const gu_complex* c, char** err);

/* Vertex connected sum of two theta complexes over the same edge count. */
GU_API gu_complex* gu_complex_tensor(const gu_complex* a, const gu_complex* b,
                                     char** err);

/* Adds `extra` >= 1 edges shadowing edge `slot` of a theta complex. */
GU_API gu_complex* gu_complex_stabilize(const gu_complex* c, int slot,
                                        int extra, char** err);

/* Glues two theta complexes (>= 2 edges each) along their last edges. */
GU_API gu_complex* gu_complex_glue(const gu_complex* a, const gu_complex* b,
                                   char** err);

/* ---- Upsilon and derived invariants --------------------------------- */

/* Homology at one weight vector: {"t": [...], "upsilon": ["-1/2", ...],
 * "free_rank": n, "torsion": [{"gr": ..., "order": ...}, ...]}. */
GU_API char* gu_upsilon_eval(gu_complex* c, const char* t_csv, char** err);

/* Exact piecewise-linear profile along a segment of the polytope:
 * {"from": [...], "to": [...], "functions": [{"index": 0,
 *  "breaks": ["0", "1/2", "1"], "values": [...], "certified": true}, ...],
 *  "table": {"s": [...], "rows": [[v_0(s_0), v_1(s_0), ...], ...]}}.
 * The table lists every function's value at the union of all breakpoints. */
GU_API char* gu_upsilon_segment(gu_complex* c, const char* from_csv,
                                const char* to_csv, int max_depth, int threads,
                                char** err);

/* One-sided derivative matrix at the matching vertices:
 * {"n": k, "entries": [[null, "-1"], ["-1", null], ...]}; entry (i, j) is
 * minus tau of the knot associated to the vertex pair. */
GU_API char* gu_tau_matrix(gu_complex* c, int threads, char** err);

/* Upsilon(2) of a one-edge theta complex: {"d": "0"}. */
GU_API char* gu_d_invariant(gu_complex* c, char** err);

/* Jump of the derivative along the line t^i_a: {"i": i, "a": ...,
 * "delta": ...}. `a_rational` is an exact rational string. */
GU_API char* gu_jump(gu_complex* c, int i, const char* a_rational, int threads,
                     char** err);

/* First K components of the jump homomorphism f_i:
 * {"i": i, "components": ["1", "0", ...]}. */
GU_API char* gu_f_i(gu_complex* c, int i, int k, int threads, char** err);

/* ---- formatting ------------------------------------------------------ */

/* Renders an exact rational as a decimal in scientific notation with the
 * requested number of significant digits (1..1000), e.g. "-5.00e-01" for
 * "-1/2" at 3 digits. Intended for plot-style output. */
GU_API char* gu_rat_decimal(const char* rational, int significant_digits,
                            char** err);

/* ---- diagnostics ----------------------------------------------------- */

/* Runs the built-in exact self-checks. Returns the number of failed checks
 * (0 = all passed, -1 = could not run) and stores a line-per-check report
 * in *report when non-NULL. */
GU_API int gu_selftest(char** report, char** err);

#ifdef __cplusplus
}
#endif

#endif /* GRAPHUPSILON_H */
