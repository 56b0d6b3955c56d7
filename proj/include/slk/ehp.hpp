#pragma once

// Degreewise dimension comparisons between layers evaluated on neighbouring spheres.

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "slk/fieldlin.hpp"
#include "slk/graded.hpp"
#include "slk/opbasis.hpp"

namespace slk {

struct ComparisonRow {
    int degree;      // lhs degree; the rhs is read at degree + offset
    std::size_t lhs;
    std::size_t rhs;
    bool agree;
};

struct ComparisonReport {
    std::string lhs;
    std::string rhs;
    int offset = 0;  // rhs degree minus lhs degree
    int min_degree = 0;
    int max_degree = 0;
    std::vector<ComparisonRow> rows;  // one per lhs degree in [min_degree, max_degree]
    bool agree = true;
    std::optional<int> first_discrepancy;
    /// Set when the layers oracle was consulted: whether it was certified and matched the enumerator
    /// on every side it covered. Certified oracle dimensions replace enumerated ones in the rows.
    std::optional<bool> enumerator_agrees;

    /// Exchanges the two sides; the offset changes sign and the flags are kept.
    ComparisonReport swapped() const;
};

/// D_m(S^n) in degree d against D_m(S^{n+1}) in degree d+1, for odd m. Both sides come from the
/// layers oracle when m is in its scope.
ComparisonReport odd_iso_report(int m, int n, Prime p, int max_degree, ExcessPolicy policy = ExcessPolicy::Rational,
                                int min_degree = INT_MIN);

/// D_m(S^{4l+1}) in degree d against the bracket part of D_{2m}(S^{2l}) in degree d - shift,
/// for m a power of p. Only the lhs is a full layer, so only the lhs can come from the oracle.
ComparisonReport even_les_report(int m, int l, Prime p, int max_degree, ExcessPolicy policy = ExcessPolicy::Rational,
                                 int shift = 2, int min_degree = INT_MIN);

}  // namespace slk
