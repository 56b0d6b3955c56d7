#include "slk/graded.hpp"

#include "slk/error.hpp"

namespace slk {

std::size_t GradedDims::rank(int degree) const {
    auto it = dims.find(degree);
    return it == dims.end() ? 0 : it->second;
}

void GradedDims::add(int degree, std::size_t r) {
    if (r == 0) return;
    dims[degree] += r;
}

void GradedDims::add_labelled(int degree, std::string label) {
    dims[degree] += 1;
    labels[degree].push_back(std::move(label));
}

std::size_t GradedDims::total() const {
    std::size_t t = 0;
    for (auto& [d, r] : dims) t += r;
    return t;
}

std::vector<int> GradedDims::support() const {
    std::vector<int> out;
    for (auto& [d, r] : dims) out.push_back(d);
    return out;
}

GradedDims GradedDims::shifted(int by) const {
    GradedDims out;
    out.certified = certified;
    out.truncated = truncated;
    for (auto& [d, r] : dims) out.dims[d + by] = r;
    for (auto& [d, l] : labels) out.labels[d + by] = l;
    return out;
}

GradedDims GradedDims::window(int lo, int hi) const {
    GradedDims out;
    out.certified = certified;
    out.truncated = truncated;
    for (auto& [d, r] : dims)
        if (d >= lo && d <= hi) out.dims[d] = r;
    for (auto& [d, l] : labels)
        if (d >= lo && d <= hi) out.labels[d] = l;
    return out;
}

void GradedDims::check() const {
    for (auto& [d, l] : labels)
        if (l.size() != rank(d))
            throw IntegrityError("degree " + std::to_string(d) + " has " + std::to_string(l.size()) +
                                 " labels for rank " + std::to_string(rank(d)));
}

bool same_ranks(const GradedDims& a, const GradedDims& b) { return a.dims == b.dims; }

}  // namespace slk
