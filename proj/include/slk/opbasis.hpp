#pragma once

// Power-operation words on top of the shifted Lie basis: completely unadmissable
// chains beta^e1 Q^s1 ... beta^ek Q^sk applied to Lie basis words.

#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "slk/fieldlin.hpp"
#include "slk/graded.hpp"
#include "slk/shiftedlie.hpp"

namespace slk {

/// Lower bound on the innermost operation index relative to its operand degree |x|.
enum class ExcessPolicy {
    Rational,   // 2 s_k >= |x|
    AmLiteral,  // s_k >= floor(|x| / 2)
    Strict,     // 2 s_k > |x|
};

ExcessPolicy parse_policy(const std::string& name);  // "rational", "am-literal", "strict"
std::string policy_name(ExcessPolicy policy);
/// Least s allowed on an operand of the given degree.
int min_excess_index(int inner_degree, ExcessPolicy policy);

struct OpWord {
    std::vector<std::pair<int, int>> ops;  // (eps, s), outermost first

    bool empty() const noexcept { return ops.empty(); }
    std::size_t length() const noexcept { return ops.size(); }
    /// "bQ^6 bQ^2"; empty string for the empty word.
    std::string str() const;
    friend bool operator==(const OpWord& a, const OpWord& b) { return a.ops == b.ops; }
    friend bool operator<(const OpWord& a, const OpWord& b) { return a.ops < b.ops; }
};

bool cu_check(const OpWord& op, int inner_degree, Prime p, ExcessPolicy policy = ExcessPolicy::Rational);
bool cu_check(const OpWord& op, int inner_degree, Prime p, const std::string& policy);

/// Sum of 2(p-1)s - eps - 1 over the word.
int op_degree(const OpWord& op, Prime p);

struct BasisElement {
    OpWord op;
    LieWord word;
    int degree;
    long long weight;  // bracket weight times p^(number of operations)
    std::string label;
};

/// "bQ^6 bQ^2 i(3)", "Q^2 [i,i]", "[x,y]", "x(2)".
std::string element_label(const OpWord& op, const LieWord& word, const GradedVS& m);

struct SlpOptions {
    int min_degree = INT_MIN;  // INT_MIN: min(0, lowest generator degree) - 1
    int max_weight = 0;        // 0: automatic (unbounded when degrees force finiteness, else 4p)
    int max_ops = 0;           // 0: automatic (unbounded when chains are monotone, else 4)
};

struct SlpBasis {
    std::vector<BasisElement> elements;  // sorted by degree, then label
    bool truncated = false;
    int min_degree = 0;
};

/// All basis elements with min_degree <= degree <= max_degree.
SlpBasis slp_basis(const GradedVS& m, int max_degree, Prime p, ExcessPolicy policy = ExcessPolicy::Rational,
                   const SlpOptions& options = {});

/// Weight-n elements on a single generator i of degree j.
GradedDims layer_basis_sphere(int n, int j, Prime p, ExcessPolicy policy, int max_degree,
                              int min_degree = INT_MIN);

/// Per-degree totals of slp_basis, labelled.
GradedDims poincare(const GradedVS& m, int max_degree, Prime p, ExcessPolicy policy = ExcessPolicy::Rational,
                    const SlpOptions& options = {});
std::map<long long, GradedDims> poincare_by_weight(const GradedVS& m, int max_degree, Prime p,
                                                   ExcessPolicy policy = ExcessPolicy::Rational,
                                                   const SlpOptions& options = {});

}  // namespace slk
