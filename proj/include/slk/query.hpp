#pragma once

// One request in, one rendered document out. Shared by the C API and the CLI.

#include <optional>
#include <string>
#include <vector>

#include "slk/graded.hpp"

namespace slk {

struct Query {
    std::string command;  // trees, complex, layer, basis, poincare, ehp, census
    int prime = 3;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<int> sphere;
    std::string gens;
    std::string group;
    std::optional<int> min_degree;
    std::optional<int> max_degree;
    std::string policy = "rational";
    std::string format = "json";  // json, csv, text
    std::string cache_dir;        // empty: no disk cache
};

struct QueryResult {
    std::string object;
    GradedDims dims;
    std::string document;  // rendered in the requested format
};

/// Throws slk::Error subclasses on bad input or unsupported cases.
QueryResult run_query(const Query& q);

/// Loads trees for n from cache_dir (recomputing and rewriting on a missing or corrupt
/// file) and installs them for later enumeration calls. Returns true on a cache hit.
bool warm_tree_cache(const std::string& cache_dir, int n);

inline constexpr const char* kCacheHeaderPrefix = "SLK1 n=";

}  // namespace slk
