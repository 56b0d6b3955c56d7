#ifndef SLK_SLK_H
#define SLK_SLK_H

/* C interface to the slk library. Every call returns a status code; results are
 * opaque handles owned by the caller. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SLK_BUILDING)
#define SLK_API __attribute__((visibility("default")))
#else
#define SLK_API
#endif

typedef enum slk_status {
    SLK_OK = 0,
    SLK_INTERNAL = 1,
    SLK_USAGE = 2,
    SLK_UNSUPPORTED = 3,
    SLK_INTEGRITY = 4
} slk_status;

typedef struct slk_context slk_context;
typedef struct slk_result slk_result;

typedef struct slk_query {
    const char* command; /* trees, complex, layer, basis, poincare, ehp, census */
    int prime;
    int has_n, n;
    int has_k, k;
    int has_sphere, sphere;
    const char* gens;  /* "x:2,y:3" or NULL */
    const char* group; /* "sigma3-fixing-1" or NULL */
    int has_min_degree, min_degree;
    int has_max_degree, max_degree;
    const char* policy; /* NULL: rational */
    const char* format; /* NULL: json */
} slk_query;

/* Zeroes q and sets prime 3. */
SLK_API void slk_query_init(slk_query* q);

/* cache_dir may be NULL to disable the tree cache. */
SLK_API slk_status slk_context_create(const char* cache_dir, slk_context** out);
SLK_API void slk_context_destroy(slk_context* ctx);
/* Message of the last failed call on ctx; empty after a success. Owned by ctx. */
SLK_API const char* slk_context_last_error(const slk_context* ctx);

SLK_API slk_status slk_run(slk_context* ctx, const slk_query* q, slk_result** out);
/* Rendered document, owned by the result. */
SLK_API const char* slk_result_document(const slk_result* r);
SLK_API int slk_result_certified(const slk_result* r);
SLK_API int slk_result_truncated(const slk_result* r);
/* Number of nonzero degrees, and the i-th (degree, rank) pair in ascending degree. */
SLK_API int slk_result_degree_count(const slk_result* r);
SLK_API slk_status slk_result_degree_at(const slk_result* r, int i, int* degree, int* rank);
SLK_API void slk_result_destroy(slk_result* r);

SLK_API const char* slk_version(void);

#ifdef __cplusplus
}
#endif

#endif
