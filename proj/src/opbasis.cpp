#include "slk/opbasis.hpp"

#include <algorithm>
#include <functional>

#include "slk/error.hpp"

namespace slk {

ExcessPolicy parse_policy(const std::string& name) {
    if (name == "rational") return ExcessPolicy::Rational;
    if (name == "am-literal") return ExcessPolicy::AmLiteral;
    if (name == "strict") return ExcessPolicy::Strict;
    throw UsageError("unknown excess policy \"" + name + "\" (expected rational, am-literal or strict)");
}

std::string policy_name(ExcessPolicy policy) {
    switch (policy) {
        case ExcessPolicy::Rational: return "rational";
        case ExcessPolicy::AmLiteral: return "am-literal";
        case ExcessPolicy::Strict: return "strict";
    }
    return "rational";
}

namespace {

int floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

int min_excess_index(int d, ExcessPolicy policy) {
    switch (policy) {
        case ExcessPolicy::Rational: return -floor_div2(-d);  // ceil(d/2)
        case ExcessPolicy::AmLiteral: return floor_div2(d);
        case ExcessPolicy::Strict: return floor_div2(d) + 1;
    }
    return 0;
}

std::string OpWord::str() const {
    std::string out;
    for (const auto& [eps, s] : ops) {
        if (!out.empty()) out += ' ';
        out += eps ? "bQ^" : "Q^";
        out += std::to_string(s);
    }
    return out;
}

bool cu_check(const OpWord& op, int inner_degree, Prime p, ExcessPolicy policy) {
    for (const auto& [eps, s] : op.ops)
        if (eps != 0 && eps != 1) throw UsageError("eps must be 0 or 1");
    if (op.empty()) return true;
    for (std::size_t i = 0; i + 1 < op.ops.size(); ++i)
        if (!(static_cast<long long>(op.ops[i].second) >
              static_cast<long long>(p.value()) * op.ops[i + 1].second - op.ops[i + 1].first))
            return false;
    return op.ops.back().second >= min_excess_index(inner_degree, policy);
}

bool cu_check(const OpWord& op, int inner_degree, Prime p, const std::string& policy) {
    return cu_check(op, inner_degree, p, parse_policy(policy));
}

int op_degree(const OpWord& op, Prime p) {
    long long d = 0;
    for (const auto& [eps, s] : op.ops) d += 2LL * (p.value() - 1) * s - eps - 1;
    return static_cast<int>(d);
}

std::string element_label(const OpWord& op, const LieWord& word, const GradedVS& m) {
    std::string w = word.str(m);
    if (word.is_leaf()) w += "(" + std::to_string(word.degree()) + ")";
    return op.empty() ? w : op.str() + " " + w;
}

namespace {

struct ChainLimits {
    int max_degree;
    int min_degree;        // final filter only
    std::size_t min_len;   // emit chains with min_len <= length <= max_len
    std::size_t max_len;
    bool capped;           // max_len is a safety cap rather than exact
};

// Enumerates CU chains on an operand of degree d0, innermost operation first.
void for_each_chain(int d0, Prime p, ExcessPolicy policy, const ChainLimits& lim, bool& truncated,
                    const std::function<void(const OpWord&, int)>& emit) {
    const long long period = 2LL * (p.value() - 1);
    std::vector<std::pair<int, int>> inner_first;
    std::function<void(long long)> rec = [&](long long d) {
        const std::size_t len = inner_first.size();
        if (len >= lim.min_len && d >= lim.min_degree && d <= lim.max_degree) {
            OpWord w;
            w.ops.assign(inner_first.rbegin(), inner_first.rend());
            emit(w, static_cast<int>(d));
        }
        long long lower = len == 0 ? min_excess_index(d0, policy)
                                   : static_cast<long long>(p.value()) * inner_first.back().second -
                                         inner_first.back().first + 1;
        for (long long s = lower;; ++s) {
            // From s >= 1 on, every further operation raises the degree.
            if (s >= 1 && d + period * s - 2 > lim.max_degree) break;
            if (len == lim.max_len) {
                if (lim.capped) truncated = true;
                return;
            }
            for (int eps = 0; eps <= 1; ++eps) {
                const long long nd = d + period * s - eps - 1;
                if (s >= 1 && nd > lim.max_degree) continue;
                inner_first.emplace_back(eps, static_cast<int>(s));
                rec(nd);
                inner_first.pop_back();
            }
        }
    };
    rec(d0);
}

long long ipow(long long b, std::size_t e) {
    long long r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

bool element_less(const BasisElement& a, const BasisElement& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.label < b.label;
}

}  // namespace

SlpBasis slp_basis(const GradedVS& m, int max_degree, Prime p, ExcessPolicy policy, const SlpOptions& options) {
    SlpBasis out;
    int dmin = INT_MAX;
    for (const auto& g : m.generators()) dmin = std::min(dmin, g.degree);
    out.min_degree = options.min_degree != INT_MIN ? options.min_degree : std::min(0, dmin == INT_MAX ? 0 : dmin) - 1;
    if (m.size() == 0) return out;
    if (max_degree < out.min_degree) throw UsageError("empty degree window");

    // Brackets raise degree with weight only when every generator has degree >= 2.
    int weight_cap;
    bool weight_capped = false;
    if (options.max_weight > 0) {
        weight_cap = options.max_weight;
        weight_capped = true;
    } else if (dmin >= 2) {
        weight_cap = std::max(1, (max_degree - 1) / (dmin - 1));
    } else {
        weight_cap = 4 * p.value();
        weight_capped = true;
    }
    const auto words = lie_basis(m, weight_cap, p);
    if (weight_capped) {
        for (const auto& w : lie_basis(m, weight_cap + 1, p))
            if (w.weight == weight_cap + 1) out.truncated = true;
    }
    for (const auto& bw : words) {
        const bool monotone = min_excess_index(bw.degree, policy) >= 1;
        ChainLimits lim{max_degree, out.min_degree, 0, 0, false};
        if (options.max_ops > 0) {
            lim.max_len = static_cast<std::size_t>(options.max_ops);
            lim.capped = true;
        } else if (monotone) {
            lim.max_len = SIZE_MAX;
        } else {
            lim.max_len = 4;
            lim.capped = true;
        }
        // Weight bound limits the chain length too.
        std::size_t by_weight = 0;
        if (weight_capped)
            while (static_cast<long long>(bw.weight) * ipow(p.value(), by_weight + 1) <= weight_cap) ++by_weight;
        if (weight_capped && by_weight < lim.max_len) {
            lim.max_len = by_weight;
            lim.capped = true;
        }
        for_each_chain(bw.degree, p, policy, lim, out.truncated, [&](const OpWord& op, int d) {
            out.elements.push_back({op, bw.word, d, static_cast<long long>(bw.weight) * ipow(p.value(), op.length()),
                                    element_label(op, bw.word, m)});
        });
    }
    std::sort(out.elements.begin(), out.elements.end(), element_less);
    return out;
}

GradedDims layer_basis_sphere(int n, int j, Prime p, ExcessPolicy policy, int max_degree, int min_degree) {
    if (n < 1) throw UsageError("layer index must be positive");
    GradedDims out;
    const GradedVS m({{"i", j}});
    const LieWord iota = LieWord::leaf(m, 0);
    LieWord base = iota;
    int rest = n;
    if (n % 2 == 0 && j % 2 == 0) {
        base = LieWord::bracket(iota, iota);
        rest = n / 2;
    }
    std::size_t k = 0;
    while (rest % p.value() == 0) {
        rest /= p.value();
        ++k;
    }
    if (rest != 1) return out;
    std::vector<BasisElement> found;
    bool truncated = false;
    ChainLimits lim{max_degree, min_degree, k, k, false};
    for_each_chain(base.degree(), p, policy, lim, truncated, [&](const OpWord& op, int d) {
        found.push_back({op, base, d, n, element_label(op, base, m)});
    });
    std::sort(found.begin(), found.end(), element_less);
    for (const auto& e : found) out.add_labelled(e.degree, e.label);
    return out;
}

GradedDims poincare(const GradedVS& m, int max_degree, Prime p, ExcessPolicy policy, const SlpOptions& options) {
    const SlpBasis b = slp_basis(m, max_degree, p, policy, options);
    GradedDims out;
    for (const auto& e : b.elements) out.add_labelled(e.degree, e.label);
    out.truncated = b.truncated;
    return out;
}

std::map<long long, GradedDims> poincare_by_weight(const GradedVS& m, int max_degree, Prime p, ExcessPolicy policy,
                                                   const SlpOptions& options) {
    const SlpBasis b = slp_basis(m, max_degree, p, policy, options);
    std::map<long long, GradedDims> out;
    for (const auto& e : b.elements) {
        auto& g = out[e.weight];
        g.add_labelled(e.degree, e.label);
        g.truncated = b.truncated;
    }
    return out;
}

}  // namespace slk
