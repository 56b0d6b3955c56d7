#include "slk/slk.h"

#include <new>
#include <string>
#include <vector>

#include "slk/error.hpp"
#include "slk/query.hpp"

struct slk_context {
    std::string cache_dir;
    std::string last_error;
};

struct slk_result {
    std::string document;
    bool certified;
    bool truncated;
    std::vector<std::pair<int, int>> dims;
};

namespace {

slk_status fail(slk_context* ctx, slk_status s, const char* what) {
    if (ctx) ctx->last_error = what;
    return s;
}

}  // namespace

extern "C" {

void slk_query_init(slk_query* q) {
    if (!q) return;
    *q = slk_query{};
    q->prime = 3;
}

slk_status slk_context_create(const char* cache_dir, slk_context** out) {
    if (!out) return SLK_USAGE;
    *out = nullptr;
    auto* ctx = new (std::nothrow) slk_context;
    if (!ctx) return SLK_INTERNAL;
    if (cache_dir) ctx->cache_dir = cache_dir;
    *out = ctx;
    return SLK_OK;
}

void slk_context_destroy(slk_context* ctx) { delete ctx; }

const char* slk_context_last_error(const slk_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

slk_status slk_run(slk_context* ctx, const slk_query* q, slk_result** out) {
    if (!ctx || !q || !out) return fail(ctx, SLK_USAGE, "null argument");
    *out = nullptr;
    if (!q->command) return fail(ctx, SLK_USAGE, "missing command");
    try {
        slk::Query query;
        query.command = q->command;
        query.prime = q->prime;
        if (q->has_n) query.n = q->n;
        if (q->has_k) query.k = q->k;
        if (q->has_sphere) query.sphere = q->sphere;
        if (q->gens) query.gens = q->gens;
        if (q->group) query.group = q->group;
        if (q->has_min_degree) query.min_degree = q->min_degree;
        if (q->has_max_degree) query.max_degree = q->max_degree;
        if (q->policy) query.policy = q->policy;
        if (q->format) query.format = q->format;
        query.cache_dir = ctx->cache_dir;

        slk::QueryResult res = slk::run_query(query);
        auto* r = new slk_result;
        r->document = std::move(res.document);
        r->certified = res.dims.certified;
        r->truncated = res.dims.truncated;
        for (const auto& [d, rank] : res.dims.dims) r->dims.emplace_back(d, static_cast<int>(rank));
        *out = r;
        ctx->last_error.clear();
        return SLK_OK;
    } catch (const slk::Error& e) {
        return fail(ctx, static_cast<slk_status>(static_cast<int>(e.kind())), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ctx, SLK_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ctx, SLK_INTERNAL, e.what());
    }
}

const char* slk_result_document(const slk_result* r) { return r ? r->document.c_str() : ""; }
int slk_result_certified(const slk_result* r) { return r && r->certified ? 1 : 0; }
int slk_result_truncated(const slk_result* r) { return r && r->truncated ? 1 : 0; }
int slk_result_degree_count(const slk_result* r) { return r ? static_cast<int>(r->dims.size()) : 0; }

slk_status slk_result_degree_at(const slk_result* r, int i, int* degree, int* rank) {
    if (!r || !degree || !rank || i < 0 || static_cast<std::size_t>(i) >= r->dims.size()) return SLK_USAGE;
    *degree = r->dims[static_cast<std::size_t>(i)].first;
    *rank = r->dims[static_cast<std::size_t>(i)].second;
    return SLK_OK;
}

void slk_result_destroy(slk_result* r) { delete r; }

const char* slk_version(void) { return "0.1.0"; }

}  // extern "C"
