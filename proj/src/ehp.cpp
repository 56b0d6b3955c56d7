#include "slk/ehp.hpp"

#include <algorithm>

#include "slk/error.hpp"
#include "slk/layers.hpp"

namespace slk {

ComparisonReport ComparisonReport::swapped() const {
    ComparisonReport out;
    out.lhs = rhs;
    out.rhs = lhs;
    out.offset = -offset;
    out.min_degree = min_degree + offset;
    out.max_degree = max_degree + offset;
    out.agree = agree;
    out.enumerator_agrees = enumerator_agrees;
    if (first_discrepancy) out.first_discrepancy = *first_discrepancy + offset;
    for (const auto& r : rows) out.rows.push_back({r.degree + offset, r.rhs, r.lhs, r.agree});
    return out;
}

namespace {

std::string layer_name(int m, int n) { return "D_" + std::to_string(m) + "(S^" + std::to_string(n) + ")"; }

ComparisonReport compare(std::string lhs_name, const GradedDims& lhs, std::string rhs_name, const GradedDims& rhs,
                         int offset, int max_degree, int min_degree) {
    ComparisonReport r;
    r.lhs = std::move(lhs_name);
    r.rhs = std::move(rhs_name);
    r.offset = offset;
    r.max_degree = max_degree;
    if (min_degree == INT_MIN) {
        int lo = max_degree;
        if (!lhs.empty()) lo = std::min(lo, lhs.dims.begin()->first);
        if (!rhs.empty()) lo = std::min(lo, rhs.dims.begin()->first - offset);
        min_degree = lo;
    }
    r.min_degree = min_degree;
    for (int d = min_degree; d <= max_degree; ++d) {
        const std::size_t a = lhs.rank(d), b = rhs.rank(d + offset);
        r.rows.push_back({d, a, b, a == b});
        if (a != b && !r.first_discrepancy) r.first_discrepancy = d;
    }
    r.agree = !r.first_discrepancy.has_value();
    return r;
}

struct Side {
    GradedDims dims;
    std::optional<bool> enumerator_agrees;
};

// Prefers certified oracle dimensions over the enumerator where the oracle is in scope.
Side evaluate(int m, int j, Prime p, int max_degree, ExcessPolicy policy) {
    GradedDims enumerated = layer_basis_sphere(m, j, p, policy, max_degree);
    if (m < 2 || m > layer_scope(p)) return {std::move(enumerated), std::nullopt};
    GradedDims oracle = layer_dims(m, j, p, max_degree);
    if (!oracle.certified) return {std::move(enumerated), false};
    const bool same = same_ranks(oracle, enumerated.window(INT_MIN, max_degree));
    return {std::move(oracle), same};
}

std::optional<bool> both(const std::optional<bool>& a, const std::optional<bool>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a && *b;
}

}  // namespace

ComparisonReport odd_iso_report(int m, int n, Prime p, int max_degree, ExcessPolicy policy, int min_degree) {
    if (m < 1 || m % 2 == 0) throw UsageError("odd_iso_report needs an odd layer index, got " + std::to_string(m));
    const Side lhs = evaluate(m, n, p, max_degree, policy);
    const Side rhs = evaluate(m, n + 1, p, max_degree + 1, policy);
    ComparisonReport r =
        compare(layer_name(m, n), lhs.dims, layer_name(m, n + 1), rhs.dims, 1, max_degree, min_degree);
    r.enumerator_agrees = both(lhs.enumerator_agrees, rhs.enumerator_agrees);
    return r;
}

ComparisonReport even_les_report(int m, int l, Prime p, int max_degree, ExcessPolicy policy, int shift,
                                 int min_degree) {
    int rest = m;
    while (rest > 1 && rest % p.value() == 0) rest /= p.value();
    if (m < 1 || rest != 1)
        throw UsageError("even_les_report needs m to be a power of p, got m = " + std::to_string(m));
    const Side lhs = evaluate(m, 4 * l + 1, p, max_degree, policy);
    const GradedDims rhs = layer_basis_sphere(2 * m, 2 * l, p, policy, max_degree - shift);
    ComparisonReport r = compare(layer_name(m, 4 * l + 1), lhs.dims, "[i,i]-part of " + layer_name(2 * m, 2 * l), rhs,
                                 -shift, max_degree, min_degree);
    r.enumerator_agrees = lhs.enumerator_agrees;
    return r;
}

}  // namespace slk
