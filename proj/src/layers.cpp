#include "slk/layers.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "slk/arboreal.hpp"
#include "slk/error.hpp"

namespace slk {

std::size_t SSPage::e1_rank(int k, int degree) const {
    std::size_t r = 0;
    for (const auto& c : columns)
        if (c.k == k) r += c.entries.rank(degree);
    return r;
}

std::size_t SSPage::e2_rank(int k, int degree) const {
    auto it = e2.find({k, degree});
    return it == e2.end() ? 0 : it->second;
}

std::uint32_t SSPage::d1_scalar(std::size_t source, std::size_t target, int degree) const {
    for (const auto& e : d1)
        if (e.source == source && e.target == target && e.degree == degree) return e.scalar;
    return 0;
}

namespace {

// Sign of the bijection g induces from the ordered internal edges of a onto those of b = g.a.
int relative_orientation(const Tree& a, const Perm& g, const Tree& b) {
    const auto& ca = a.clusters();
    const auto& cb = b.clusters();
    Perm induced;
    for (std::size_t i = 1; i < ca.size(); ++i) {
        auto it = std::find(cb.begin() + 1, cb.end(), apply(g, ca[i]));
        if (it == cb.end()) throw IntegrityError("relabelling does not carry one tree onto the other");
        induced.push_back(static_cast<int>(it - cb.begin() - 1));
    }
    return perm_sign(induced);
}

CharacterModule column_character(const Tree& t, const PermGroup& stab, int j, Twist twist) {
    std::map<Perm, int> values;
    for (const auto& e : stab.elements()) {
        int v = (j % 2 != 0) ? perm_sign(e) : 1;
        if (twist == Twist::KoszulOriented) v *= edge_orientation(t, e);
        values[e] = v;
    }
    return CharacterModule::from_values(stab, values);
}

}  // namespace

int layer_scope(Prime p) { return std::min(2 * p.value() - 1, kDefaultComplexBound); }

SSPage e1_page(int n, const PermGroup& g, int j, Prime p, int max_degree, Twist twist, std::optional<int> ambient) {
    if (n < 2) throw UsageError("the spectral sequence needs n >= 2");
    if (g.degree() != n) throw UsageError("group degree does not match n");
    if (n > kDefaultComplexBound)
        throw UnsupportedError("n = " + std::to_string(n) + " exceeds the tree bound " +
                               std::to_string(kDefaultComplexBound));
    SSPage page;
    page.n = n;
    page.group = g;
    page.j = j;
    page.p = p;
    page.ambient = ambient.value_or(j * n);
    page.min_degree = page.ambient - (n - 1);
    page.max_degree = max_degree;
    page.twist = twist;
    const int top = max_degree + 2;
    for (int k = 1; k <= n - 1; ++k) {
        for (auto& row : orbit_census(n, k, g)) {
            auto chi = column_character(row.representative, row.stabilizer, j, twist);
            const GradedDims h = small_group_homology(chi, p, top - page.ambient + k);
            GradedDims entries;
            for (int d = page.min_degree; d <= top; ++d) entries.add(d, h.rank(d - page.ambient + k));
            page.columns.push_back({row.representative, k, row.stabilizer, std::move(chi), row.orbit_size,
                                    std::move(entries)});
        }
    }
    return page;
}

namespace {

struct OrbitIndex {
    std::size_t column;
    Perm to_rep;  // to_rep . tree = representative
};

}  // namespace

SSPage d1_matrices(const SSPage& in) {
    if (in.page != 1) throw UsageError("d1 is computed from the first page");
    SSPage page = in;
    page.page = 2;
    const Prime p = page.p;
    const int top = page.max_degree + 2;

    std::unordered_map<Tree, OrbitIndex, TreeHash> where;
    for (std::size_t c = 0; c < page.columns.size(); ++c)
        for (const auto& e : page.group.elements()) {
            Tree image = page.columns[c].representative.relabeled(e);
            where.try_emplace(std::move(image), OrbitIndex{c, inverse(e)});
        }

    std::map<std::tuple<std::size_t, std::size_t, int>, long long> acc;
    for (std::size_t c = 0; c < page.columns.size(); ++c) {
        const auto& col = page.columns[c];
        if (col.entries.empty()) continue;
        const Tree& r = col.representative;
        std::unordered_set<Tree, TreeHash> seen;
        for (const auto& e : expansions(r)) {
            if (seen.count(e.tree)) continue;
            std::vector<Perm> fixing;
            for (const auto& h : col.stabilizer.elements()) {
                Tree image = e.tree.relabeled(h);
                if (image == e.tree) fixing.push_back(h);
                seen.insert(std::move(image));
            }
            const PermGroup h(page.n, std::move(fixing));
            const OrbitIndex& target = where.at(e.tree);
            const auto& tcol = page.columns[target.column];
            int sign = expansion_sign(r, e, SignConvention::Preorder);
            if (page.j % 2 != 0) sign *= perm_sign(target.to_rep);
            if (page.twist == Twist::KoszulOriented)
                sign *= relative_orientation(e.tree, target.to_rep, tcol.representative);
            for (const auto& [d, rank] : col.entries.dims) {
                if (d - 1 < page.min_degree || tcol.entries.rank(d - 1) == 0) continue;
                const int s = d - page.ambient + col.k;
                const auto scalar = transfer_scalar(col.stabilizer, h, col.coefficients, p, s).first;
                acc[{c, target.column, d}] += static_cast<long long>(scalar) * sign;
            }
        }
    }
    for (auto& [key, v] : acc) {
        const long long m = ((v % p.value()) + p.value()) % p.value();
        if (m != 0)
            page.d1.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), static_cast<std::uint32_t>(m)});
    }

    // Columns with a nonzero entry at (k, d).
    auto live = [&](int k, int d) {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < page.columns.size(); ++c)
            if (page.columns[c].k == k && page.columns[c].entries.rank(d) > 0) out.push_back(c);
        return out;
    };
    auto block = [&](int k, int d) {  // d1 from (k, d) to (k+1, d-1)
        const auto src = live(k, d);
        const auto dst = live(k + 1, d - 1);
        Matrix m(dst.size(), src.size(), p);
        for (std::size_t a = 0; a < dst.size(); ++a)
            for (std::size_t b = 0; b < src.size(); ++b) m.set(a, b, page.d1_scalar(src[b], dst[a], d));
        return m;
    };
    for (int d = page.min_degree; d <= top - 1; ++d)
        for (int k = 1; k <= page.n - 1; ++k) {
            const auto here = live(k, d);
            if (here.empty()) continue;
            const Matrix in = block(k - 1, d + 1);
            const Matrix out = block(k, d);
            const std::size_t r = homology_rank(in, out);
            if (r > 0) page.e2[{k, d}] = r;
        }

    page.certified = true;
    for (auto& [kd, r] : page.e2) {
        const auto [k, d] = kd;
        if (d - 1 > page.max_degree) continue;
        for (int k2 = k + 2; k2 <= page.n - 1; ++k2)
            if (page.e2_rank(k2, d - 1) > 0) page.certified = false;
    }
    return page;
}

GradedDims layer_dims(int n, int j, Prime p, int max_degree, Twist twist) {
    if (n < 1) throw UsageError("layer index must be positive");
    GradedDims out;
    if (n == 1) {
        if (j <= max_degree) out.add(j, 1);
        return out;
    }
    if (n > layer_scope(p))
        throw UnsupportedError("layer n = " + std::to_string(n) + " is outside the supported range n <= " +
                               std::to_string(layer_scope(p)) + " at p = " + std::to_string(p.value()));
    const SSPage page = d1_matrices(e1_page(n, PermGroup::symmetric(n), j, p, max_degree, twist));
    for (auto& [kd, r] : page.e2)
        if (kd.second <= max_degree) out.add(kd.second, r);
    out.certified = page.certified;
    return out;
}

}  // namespace slk
