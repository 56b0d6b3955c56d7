#pragma once

// Per-degree ranks with optional class labels: the common answer type.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace slk {

struct GradedDims {
    std::map<int, std::size_t> dims;  // only nonzero ranks are stored
    std::map<int, std::vector<std::string>> labels;
    bool certified = true;
    bool truncated = false;

    std::size_t rank(int degree) const;
    void add(int degree, std::size_t r = 1);
    void add_labelled(int degree, std::string label);
    bool empty() const noexcept { return dims.empty(); }
    std::size_t total() const;
    std::vector<int> support() const;

    GradedDims shifted(int by) const;
    /// Keeps degrees in [lo, hi].
    GradedDims window(int lo, int hi) const;
    /// Throws IntegrityError if a label list disagrees with its rank.
    void check() const;
};

/// Rank-only comparison; labels and flags are ignored.
bool same_ranks(const GradedDims& a, const GradedDims& b);

}  // namespace slk
