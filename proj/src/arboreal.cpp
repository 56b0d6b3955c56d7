#include "slk/arboreal.hpp"

#include <algorithm>
#include <unordered_map>

#include "slk/error.hpp"

namespace slk {

int expansion_sign(const Tree& source, const Expansion& e, SignConvention conv) {
    const auto& cl = e.tree.clusters();
    switch (conv) {
        case SignConvention::Preorder: {
            const auto pos = std::find(cl.begin(), cl.end(), e.new_cluster) - cl.begin() - 1;
            return pos % 2 == 0 ? 1 : -1;
        }
        case SignConvention::MaskOrder: {
            int below = 0;
            for (std::size_t i = 1; i < cl.size(); ++i)
                if (cl[i] < e.new_cluster) ++below;
            return below % 2 == 0 ? 1 : -1;
        }
        case SignConvention::SplitVertex: {
            // The split vertex is the smallest source cluster strictly containing the new one.
            const auto& sc = source.clusters();
            std::size_t idx = 0;
            int best = kMaxLeaves + 1;
            for (std::size_t i = 0; i < sc.size(); ++i)
                if ((sc[i] & e.new_cluster) == e.new_cluster && leaf_count(sc[i]) < best) {
                    best = leaf_count(sc[i]);
                    idx = i;
                }
            return (idx + 1) % 2 == 1 ? 1 : -1;  // (-1)^(i+1) with i = idx+1
        }
    }
    return 1;
}

const std::vector<Tree>& ChainComplex::basis(int degree) const {
    if (degree > -1 || degree < min_degree()) throw UsageError("degree outside the complex");
    return cells[static_cast<std::size_t>(-degree - 1)];
}

std::vector<std::string> ChainComplex::labels(int degree) const {
    std::vector<std::string> out;
    for (const auto& t : basis(degree)) out.push_back(t.str());
    return out;
}

ChainComplex build_complex(int n, Prime p, SignConvention conv, int max_n) {
    if (n < 2) throw UsageError("complex needs n >= 2");
    if (n > max_n)
        throw UnsupportedError("complex for n = " + std::to_string(n) + " exceeds the configured bound " +
                               std::to_string(max_n));
    ChainComplex c;
    c.n = n;
    c.p = p;
    c.convention = conv;
    for (int k = 1; k <= n - 1; ++k) c.cells.push_back(enumerate_trees(n, k));
    for (int k = 1; k < n - 1; ++k) {
        const auto& src = c.cells[static_cast<std::size_t>(k - 1)];
        const auto& dst = c.cells[static_cast<std::size_t>(k)];
        std::unordered_map<Tree, std::size_t, TreeHash> index;
        index.reserve(dst.size());
        for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], i);
        SparseMatrix d(dst.size(), src.size(), p);
        for (std::size_t col = 0; col < src.size(); ++col)
            for (const auto& e : expansions(src[col])) d.add(index.at(e.tree), col, expansion_sign(src[col], e, conv));
        c.differential.push_back(std::move(d));
    }
    for (std::size_t i = 0; i + 1 < c.differential.size(); ++i)
        if (!product_is_zero(c.differential[i + 1], c.differential[i]))
            throw IntegrityError("complex integrity: d∘d is nonzero from degree -" + std::to_string(i + 1) +
                                 " for n = " + std::to_string(n));
    return c;
}

GradedDims homology(const ChainComplex& c) {
    GradedDims out;
    const std::size_t levels = c.cells.size();
    for (std::size_t k = 0; k < levels; ++k) {
        const std::size_t dim = c.cells[k].size();
        const SparseMatrix in = k == 0 ? SparseMatrix(dim, 0, c.p) : c.differential[k - 1];
        const SparseMatrix outm = k + 1 < levels ? c.differential[k] : SparseMatrix(0, dim, c.p);
        out.add(-static_cast<int>(k) - 1, homology_rank(in, outm));
    }
    return out;
}

GraftCheck graft_chain_map(const Tree& base, const std::vector<Tree>& parts) {
    Tree target = graft(base, parts);
    int expected = base.internal_vertices();
    for (const auto& t : parts) expected += t.internal_vertices();
    if (target.internal_vertices() != expected)
        throw IntegrityError("grafting changed the vertex count: " + std::to_string(target.internal_vertices()) +
                             " instead of " + std::to_string(expected));
    const int n = target.leaves();
    if (n >= 2 && n <= kDefaultComplexBound) {
        const auto basis = enumerate_trees(n, expected);
        if (!std::binary_search(basis.begin(), basis.end(), target))
            throw IntegrityError("grafted cell " + target.str() + " is not a basis cell of the target complex");
    } else if (n >= 2 && Tree(n, target.clusters()) != target) {
        throw IntegrityError("grafted cell is not canonical");
    }
    return {target, -expected, target.str()};
}

}  // namespace slk
