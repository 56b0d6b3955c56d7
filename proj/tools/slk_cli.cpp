// Command-line front end. Talks to the library only through the C interface.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "slk/slk.h"

namespace {

struct Options {
    int prime = 3;
    std::optional<int> n, k, sphere, min_degree, max_degree;
    std::string gens, group, policy = "rational", format = "json", cache_dir;
    bool no_cache = false;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--prime", o.prime, "Odd prime p of the coefficient field")->capture_default_str();
    sub->add_option("--n", o.n, "Arity, layer index or weight, depending on the command");
    sub->add_option("--k", o.k, "Number of internal vertices (trees, census)");
    sub->add_option("--sphere", o.sphere, "Sphere dimension j in D_n(S^j)");
    sub->add_option("--gens", o.gens, "Generators as name:degree[,name:degree...]");
    sub->add_option("--group", o.group, "Permutation group: sigma<n>, sigma<m>-fixing-1 or trivial<n>");
    sub->add_option("--min-degree", o.min_degree, "Lowest degree reported");
    sub->add_option("--max-degree", o.max_degree, "Highest degree reported (default 40)");
    sub->add_option("--policy", o.policy, "Excess policy: rational, am-literal or strict")->capture_default_str();
    sub->add_option("--format", o.format, "Output format: json, csv or text")->capture_default_str();
    sub->add_option("--cache-dir", o.cache_dir, "Tree cache directory (default $SLK_CACHE_DIR)");
    sub->add_flag("--no-cache", o.no_cache, "Ignore the tree cache");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slk: mod-p homology of Goodwillie layers, shifted Lie algebras and their power operations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(slk_version()));
    Options o;
    const char* commands[][2] = {
        {"trees", "List trees on n leaves, or their orbits under --group"},
        {"complex", "Arboreal chain complex of the n-th derivative and its homology"},
        {"layer", "H_* of D_n(S^sphere) from the equivariant spectral sequence"},
        {"basis", "Basis of D_n(S^sphere), or of the free algebra on --gens"},
        {"poincare", "Per-degree dimensions of the free algebra on --gens"},
        {"ehp", "Compare D_n(S^sphere) with its EHP neighbour degree by degree"},
        {"census", "Orbit census of trees under --group (default the full symmetric group)"},
    };
    for (auto& c : commands) add_common(app.add_subcommand(c[0], c[1]), o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : SLK_USAGE;
    }

    std::string cache_dir = o.cache_dir;
    if (cache_dir.empty()) {
        if (const char* env = std::getenv("SLK_CACHE_DIR")) cache_dir = env;
    }
    if (o.no_cache) cache_dir.clear();

    slk_query q;
    slk_query_init(&q);
    const std::string command = app.get_subcommands().front()->get_name();
    q.command = command.c_str();
    q.prime = o.prime;
    if (o.n) q.has_n = 1, q.n = *o.n;
    if (o.k) q.has_k = 1, q.k = *o.k;
    if (o.sphere) q.has_sphere = 1, q.sphere = *o.sphere;
    if (o.min_degree) q.has_min_degree = 1, q.min_degree = *o.min_degree;
    if (o.max_degree) q.has_max_degree = 1, q.max_degree = *o.max_degree;
    q.gens = o.gens.empty() ? nullptr : o.gens.c_str();
    q.group = o.group.empty() ? nullptr : o.group.c_str();
    q.policy = o.policy.c_str();
    q.format = o.format.c_str();

    slk_context* ctx = nullptr;
    if (slk_context_create(cache_dir.empty() ? nullptr : cache_dir.c_str(), &ctx) != SLK_OK) {
        std::fprintf(stderr, "slk: cannot create context\n");
        return SLK_INTERNAL;
    }
    slk_result* res = nullptr;
    const slk_status st = slk_run(ctx, &q, &res);
    if (st != SLK_OK) {
        std::fprintf(stderr, "slk %s: error: %s\n", command.c_str(), slk_context_last_error(ctx));
        slk_context_destroy(ctx);
        return st;
    }
    std::fputs(slk_result_document(res), stdout);
    slk_result_destroy(res);
    slk_context_destroy(ctx);
    return 0;
}
