/* cmg - exact verification kernel for colored marked graphs:
 * sparse integer polynomial arithmetic, Cayley-graph enumeration,
 * division-free characteristic polynomials, irreducibility and separation
 * certificates, and lattice geometry of tangential sites.
 *
 * All functions return cmg_status; outputs are opaque handles or
 * malloc'd strings released with the matching free function.  Structured
 * data crosses the boundary as JSON text.
 */
#ifndef CMG_H
#define CMG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmg_status {
  CMG_OK = 0,
  CMG_ERROR_INVALID = 1,     /* bad arguments or malformed input */
  CMG_ERROR_DOMAIN = 2,      /* mathematically unsupported operation */
  CMG_ERROR_STRUCTURE = 3,   /* structural failure (e.g. a lift that does not close) */
  CMG_ERROR_INTERNAL = 4
} cmg_status;

const char* cmg_version(void);
const char* cmg_status_name(cmg_status s);
/* message for the most recent failure on this thread */
const char* cmg_last_error(void);
void cmg_free_string(char* s);

/* ---- sparse multivariate polynomials ---------------------------------- */

typedef struct cmg_poly cmg_poly;

cmg_status cmg_poly_zero(int nvars, cmg_poly** out);
cmg_status cmg_poly_constant(int nvars, const char* decimal, cmg_poly** out);
cmg_status cmg_poly_variable(int nvars, int index, cmg_poly** out);
/* exponents are doubled integers: entry d means exponent d/2 */
cmg_status cmg_poly_monomial(int nvars, const int* exponents_doubled,
                             const char* coeff_decimal, cmg_poly** out);
cmg_status cmg_poly_clone(const cmg_poly* p, cmg_poly** out);
void cmg_poly_free(cmg_poly* p);

int cmg_poly_nvars(const cmg_poly* p);
int cmg_poly_is_zero(const cmg_poly* p);
int cmg_poly_equal(const cmg_poly* a, const cmg_poly* b);

cmg_status cmg_poly_add(const cmg_poly* a, const cmg_poly* b, cmg_poly** out);
cmg_status cmg_poly_sub(const cmg_poly* a, const cmg_poly* b, cmg_poly** out);
cmg_status cmg_poly_mul(const cmg_poly* a, const cmg_poly* b, cmg_poly** out);
cmg_status cmg_poly_neg(const cmg_poly* a, cmg_poly** out);
cmg_status cmg_poly_pow(const cmg_poly* a, unsigned k, cmg_poly** out);
cmg_status cmg_poly_partial(const cmg_poly* a, int index, cmg_poly** out);
cmg_status cmg_poly_reduce_mod(const cmg_poly* a, unsigned long long prime,
                               cmg_poly** out);
/* assignment_json: object mapping variable index to 0, {"var": j} or
 * {"value": "<decimal>"}, e.g. {"1": 0, "2": {"var": 1}} */
cmg_status cmg_poly_specialize(const cmg_poly* a, const char* assignment_json,
                               cmg_poly** out);
/* *has_root = 1 and *out set when a is a perfect square in Z[x1..xm] */
cmg_status cmg_poly_sqrt(const cmg_poly* a, cmg_poly** out, int* has_root);

cmg_status cmg_poly_render(const cmg_poly* p, char** out);
cmg_status cmg_poly_to_json(const cmg_poly* p, char** out);
cmg_status cmg_poly_from_json(const char* json, cmg_poly** out);

/* ---- normal-form building blocks -------------------------------------- */

cmg_status cmg_poly_a(int r, int m, cmg_poly** out);
cmg_status cmg_edge_coeff(int q, int m, const int* ell, cmg_poly** out);
cmg_status cmg_linear_form(int q, int m, const int* a_vec, cmg_poly** out);
cmg_status cmg_diag_entry(int q, int m, const int* a_vec, int sigma,
                          cmg_poly** out);

/* ---- polynomials in t -------------------------------------------------- */

typedef struct cmg_tpoly cmg_tpoly;

void cmg_tpoly_free(cmg_tpoly* p);
cmg_status cmg_tpoly_clone(const cmg_tpoly* p, cmg_tpoly** out);
int cmg_tpoly_degree(const cmg_tpoly* p);
int cmg_tpoly_equal(const cmg_tpoly* a, const cmg_tpoly* b);
cmg_status cmg_tpoly_coeff(const cmg_tpoly* p, int k, cmg_poly** out);
cmg_status cmg_tpoly_mul(const cmg_tpoly* a, const cmg_tpoly* b, cmg_tpoly** out);
cmg_status cmg_tpoly_resultant(const cmg_tpoly* a, const cmg_tpoly* b,
                               cmg_poly** out);
cmg_status cmg_tpoly_discriminant(const cmg_tpoly* a, cmg_poly** out);
cmg_status cmg_tpoly_render(const cmg_tpoly* p, char** out);
cmg_status cmg_tpoly_to_json(const cmg_tpoly* p, char** out);
cmg_status cmg_tpoly_from_json(const char* json, cmg_tpoly** out);

/* ---- Cayley graph layer ------------------------------------------------ */

typedef struct cmg_graph cmg_graph;

/* {"black": [[...]...], "red": [...], "black_count": n, "red_count": n} */
cmg_status cmg_enumerate_edges_json(int q, int m, char** out);

cmg_status cmg_graph_from_json(const char* json, cmg_graph** out);
cmg_status cmg_graph_to_json(const cmg_graph* g, char** out);
void cmg_graph_free(cmg_graph* g);
/* rooted one-edge graph {identity, (l, sigma_l)} */
cmg_status cmg_graph_one_edge(int q, int m, const int* ell, cmg_graph** out);
int cmg_graph_size(const cmg_graph* g);
cmg_status cmg_graph_canonicalize(const cmg_graph* g, cmg_graph** out);
/* JSON array of graph objects */
cmg_status cmg_graph_components_json(const cmg_graph* g, char** out);
cmg_status cmg_graph_matrix_json(const cmg_graph* g, char** out);
cmg_status cmg_graph_charpoly(const cmg_graph* g, cmg_tpoly** out);
cmg_status cmg_charpoly_one_edge(int q, int m, const int* ell, cmg_tpoly** out);
cmg_status cmg_verify_deletion_json(const cmg_graph* g, int var_index,
                                    char** out);

/* ---- certification ------------------------------------------------------ */

cmg_status cmg_certify_json(const cmg_tpoly* chi, int budget, char** out);
cmg_status cmg_separated_json(const cmg_tpoly* a, const cmg_tpoly* b, char** out);
/* options_json (nullable): {"budget": n, "graph_cap": n, "jobs": n,
 * "pairs": bool} */
cmg_status cmg_run_suite_json(int q, int m, int max_dimension,
                              const char* options_json, char** out);

/* ---- geometry ----------------------------------------------------------- */

typedef struct cmg_sites cmg_sites;
typedef struct cmg_geo cmg_geo;

cmg_status cmg_sites_from_json(const char* json, cmg_sites** out);
cmg_status cmg_sites_to_json(const cmg_sites* s, char** out);
void cmg_sites_free(cmg_sites* s);

cmg_status cmg_geo_build(const cmg_sites* s, int q, long long box, cmg_geo** out);
void cmg_geo_free(cmg_geo* g);
cmg_status cmg_geo_to_json(const cmg_geo* g, char** out);
cmg_status cmg_geo_components_json(const cmg_geo* g, char** out);
cmg_status cmg_geo_genericity_json(const cmg_geo* g, char** out);
int cmg_geo_component_count(const cmg_geo* g);
cmg_status cmg_geo_lift(const cmg_geo* g, int component, cmg_graph** out);
cmg_status cmg_geo_dot(const cmg_geo* g, char** out);
cmg_status cmg_pair_set_json(const cmg_sites* s, int q, const int* ell, int m,
                             long long box, char** out);
cmg_status cmg_search_generic_sites(int n, int m, int q, long long box,
                                    unsigned long long seed, int max_attempts,
                                    cmg_sites** out);

#ifdef __cplusplus
}
#endif

#endif /* CMG_H */
