#include "slk/forest.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "slk/error.hpp"

namespace slk {

int min_leaf(LeafSet s) noexcept { return s == 0 ? 0 : std::countr_zero(s) + 1; }

int leaf_count(LeafSet s) noexcept { return std::popcount(s); }

LeafSet full_set(int n) noexcept { return n >= 64 ? ~LeafSet{0} : ((LeafSet{1} << n) - 1); }

bool cluster_less(LeafSet a, LeafSet b) noexcept {
    const int ma = min_leaf(a), mb = min_leaf(b);
    if (ma != mb) return ma < mb;
    const int ca = leaf_count(a), cb = leaf_count(b);
    if (ca != cb) return ca > cb;
    return a < b;
}

// ---------------------------------------------------------------- permutations

Perm compose(const Perm& a, const Perm& b) {
    Perm out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
    return out;
}

Perm inverse(const Perm& a) {
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return out;
}

Perm identity_perm(int n) {
    Perm out(static_cast<std::size_t>(n));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

int perm_sign(const Perm& a) {
    std::vector<bool> seen(a.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(a[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

int perm_order(const Perm& a) {
    std::vector<bool> seen(a.size(), false);
    int order = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(a[j])) {
            seen[j] = true;
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

LeafSet apply(const Perm& g, LeafSet s) {
    LeafSet out = 0;
    while (s) {
        const int i = std::countr_zero(s);
        s &= s - 1;
        out |= LeafSet{1} << g[static_cast<std::size_t>(i)];
    }
    return out;
}

std::string perm_str(const Perm& g) {
    std::string out;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (seen[i] || g[i] == static_cast<int>(i)) continue;
        out += '(';
        bool first = true;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(g[j])) {
            seen[j] = true;
            if (!first) out += ' ';
            out += std::to_string(j + 1);
            first = false;
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

// ------------------------------------------------------------------------ Tree

namespace {

void sort_clusters(std::vector<LeafSet>& c) { std::sort(c.begin(), c.end(), cluster_less); }

bool laminar_pair(LeafSet a, LeafSet b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; }

}  // namespace

Tree::Tree(int n, std::vector<LeafSet> clusters) : n_(n), clusters_(std::move(clusters)) {
    if (n < 1 || n > kMaxLeaves) throw UsageError("tree leaf count out of range: " + std::to_string(n));
    sort_clusters(clusters_);
    if (n == 1) {
        if (!clusters_.empty()) throw UsageError("a one-leaf tree has no internal vertices");
        return;
    }
    const LeafSet full = full_set(n);
    if (clusters_.empty() || clusters_.front() != full) throw UsageError("tree is missing its top vertex");
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
        const LeafSet c = clusters_[i];
        if ((c & ~full) != 0 || leaf_count(c) < 2) throw UsageError("invalid vertex leaf set");
        if (i > 0 && c == clusters_[i - 1]) throw UsageError("duplicate vertex leaf set");
        for (std::size_t j = 0; j < i; ++j)
            if (!laminar_pair(c, clusters_[j])) throw UsageError("vertex leaf sets are not nested");
    }
    for (LeafSet c : clusters_)
        if (children(c).size() < 2) throw UsageError("internal vertex with fewer than two children");
}

Tree Tree::corolla(int n) {
    if (n == 1) return Tree();
    return Tree(n, {full_set(n)});
}

Tree Tree::split_off(int j, int i) {
    if (i < 3 || j < 1 || j > i) throw UsageError("T^{j,i} needs 1 <= j <= i and i >= 3");
    return Tree(i, {full_set(i), full_set(i) & ~(LeafSet{1} << (j - 1))});
}

bool Tree::has_cluster(LeafSet s) const { return std::find(clusters_.begin(), clusters_.end(), s) != clusters_.end(); }

std::vector<LeafSet> Tree::children(LeafSet cluster) const {
    std::vector<LeafSet> out;
    LeafSet covered = 0;
    // Preorder: the first sub-cluster not already covered is maximal.
    for (LeafSet d : clusters_) {
        if (d == cluster || (d & cluster) != d || (d & covered) != 0) continue;
        out.push_back(d);
        covered |= d;
    }
    LeafSet rest = cluster & ~covered;
    while (rest) {
        out.push_back(rest & (~rest + 1));
        rest &= rest - 1;
    }
    std::sort(out.begin(), out.end(), [](LeafSet a, LeafSet b) { return min_leaf(a) < min_leaf(b); });
    return out;
}

Tree Tree::relabeled(const Perm& g) const {
    if (static_cast<int>(g.size()) != n_) throw UsageError("permutation degree does not match leaf count");
    std::vector<LeafSet> out;
    out.reserve(clusters_.size());
    for (LeafSet c : clusters_) out.push_back(apply(g, c));
    Tree t;
    t.n_ = n_;
    t.clusters_ = std::move(out);
    sort_clusters(t.clusters_);
    return t;
}

Tree Tree::collapsed(LeafSet cluster) const {
    if (n_ > 1 && cluster == full_set(n_)) throw UsageError("the top vertex has no internal edge above it");
    auto it = std::find(clusters_.begin(), clusters_.end(), cluster);
    if (it == clusters_.end()) throw UsageError("tree has no such vertex");
    Tree t = *this;
    t.clusters_.erase(t.clusters_.begin() + (it - clusters_.begin()));
    return t;
}

std::string Tree::str() const {
    if (n_ == 1) return "1";
    std::function<void(LeafSet, std::string&)> render = [&](LeafSet c, std::string& out) {
        out += '(';
        bool first = true;
        for (LeafSet child : children(c)) {
            if (!first) out += ',';
            first = false;
            if (leaf_count(child) == 1)
                out += std::to_string(min_leaf(child));
            else
                render(child, out);
        }
        out += ')';
    };
    std::string out;
    render(clusters_.front(), out);
    return out;
}

namespace {

struct Parser {
    std::string_view s;
    std::size_t pos = 0;
    std::vector<LeafSet> clusters;
    LeafSet seen = 0;
    int max_label = 0;
    int leaves = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw UsageError("cannot parse tree \"" + std::string(s) + "\" at offset " + std::to_string(pos) + ": " + why);
    }

    LeafSet item() {
        if (pos >= s.size()) fail("unexpected end");
        if (s[pos] == '(') {
            ++pos;
            LeafSet acc = 0;
            int count = 0;
            while (true) {
                acc |= item();
                ++count;
                if (pos >= s.size()) fail("unclosed parenthesis");
                if (s[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (s[pos] == ')') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ')'");
            }
            if (count < 2) fail("vertex with fewer than two children");
            clusters.push_back(acc);
            return acc;
        }
        int label = 0;
        auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), label);
        if (ec != std::errc() || label < 1 || label > kMaxLeaves) fail("expected a leaf label");
        pos = static_cast<std::size_t>(ptr - s.data());
        const LeafSet bit = LeafSet{1} << (label - 1);
        if (seen & bit) fail("repeated leaf label");
        seen |= bit;
        max_label = std::max(max_label, label);
        ++leaves;
        return bit;
    }
};

}  // namespace

Tree Tree::parse(std::string_view text) {
    Parser p;
    p.s = text;
    p.item();
    if (p.pos != text.size()) p.fail("trailing characters");
    if (p.leaves != p.max_label) p.fail("leaf labels must be exactly 1..n");
    return Tree(p.max_label, std::move(p.clusters));
}

bool operator<(const Tree& a, const Tree& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return std::lexicographical_compare(a.clusters_.begin(), a.clusters_.end(), b.clusters_.begin(),
                                        b.clusters_.end(), cluster_less);
}

std::size_t TreeHash::operator()(const Tree& t) const noexcept {
    std::size_t h = static_cast<std::size_t>(t.leaves());
    for (LeafSet c : t.clusters()) h = h * 1000003u ^ std::hash<LeafSet>{}(c);
    return h;
}

// ----------------------------------------------------------------- enumeration

namespace {

// Calls f with each set partition of the elements of s (as a list of blocks).
void for_each_partition(LeafSet s, const std::function<void(const std::vector<LeafSet>&)>& f) {
    std::vector<int> elems;
    for (LeafSet r = s; r; r &= r - 1) elems.push_back(std::countr_zero(r));
    std::vector<LeafSet> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == elems.size()) {
            f(blocks);
            return;
        }
        const LeafSet bit = LeafSet{1} << elems[i];
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b] |= bit;
            rec(i + 1);
            blocks[b] &= ~bit;
        }
        blocks.push_back(bit);
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

// All cluster families of trees on the leaf set s (including s itself).
std::vector<std::vector<LeafSet>> families(LeafSet s) {
    std::vector<std::vector<LeafSet>> out;
    if (leaf_count(s) < 2) {
        out.emplace_back();
        return out;
    }
    for_each_partition(s, [&](const std::vector<LeafSet>& blocks) {
        if (blocks.size() < 2) return;
        std::vector<std::vector<LeafSet>> acc{{s}};
        for (LeafSet b : blocks) {
            if (leaf_count(b) < 2) continue;
            auto sub = families(b);
            std::vector<std::vector<LeafSet>> next;
            next.reserve(acc.size() * sub.size());
            for (const auto& a : acc)
                for (const auto& f : sub) {
                    auto merged = a;
                    merged.insert(merged.end(), f.begin(), f.end());
                    next.push_back(std::move(merged));
                }
            acc = std::move(next);
        }
        for (auto& a : acc) out.push_back(std::move(a));
    });
    return out;
}

}  // namespace

namespace {

std::mutex& memo_mutex() {
    static std::mutex mu;
    return mu;
}

std::map<int, std::vector<Tree>>& memo() {
    static std::map<int, std::vector<Tree>> m;
    return m;
}

}  // namespace

std::size_t tree_count(int n) {
    static constexpr std::size_t counts[] = {0, 1, 1, 4, 26, 236, 2752, 39208, 660032, 12818912};
    if (n < 1 || n > 9) throw UnsupportedError("tree counts are tabulated for 1 <= n <= 9");
    return counts[n];
}

void install_trees(int n, std::vector<Tree> trees) {
    if (trees.size() != tree_count(n)) throw IntegrityError("tree list for n = " + std::to_string(n) + " is incomplete");
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (trees[i].leaves() != n) throw IntegrityError("tree list has a tree with the wrong leaf count");
        if (i > 0 && !(trees[i - 1] < trees[i])) throw IntegrityError("tree list is not in canonical order");
    }
    std::lock_guard lock(memo_mutex());
    memo()[n] = std::move(trees);
}

std::vector<Tree> enumerate_all_trees(int n) {
    if (n < 1 || n > 9) throw UnsupportedError("tree enumeration is limited to 1 <= n <= 9, got " + std::to_string(n));
    auto& mu = memo_mutex();
    auto& cache = memo();
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    std::vector<Tree> out;
    if (n == 1) {
        out.emplace_back();
    } else {
        for (auto& f : families(full_set(n))) out.emplace_back(n, std::move(f));
    }
    std::sort(out.begin(), out.end());
    std::lock_guard lock(mu);
    cache.emplace(n, out);
    return out;
}

std::vector<Tree> enumerate_trees(int n, int k) {
    if (n < 2 || k < 1 || k > n - 1) return {};
    std::vector<Tree> out;
    for (const auto& t : enumerate_all_trees(n))
        if (t.internal_vertices() == k) out.push_back(t);
    return out;
}

std::vector<Expansion> expansions(const Tree& t) {
    std::vector<Expansion> out;
    for (LeafSet c : t.clusters()) {
        const auto blocks = t.children(c);
        const std::size_t m = blocks.size();
        if (m < 3) continue;
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
            const int size = std::popcount(mask);
            if (size < 2) continue;
            LeafSet u = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1) u |= blocks[i];
            auto cl = t.clusters();
            cl.push_back(u);
            out.push_back({Tree(t.leaves(), std::move(cl)), u});
        }
    }
    std::sort(out.begin(), out.end(), [](const Expansion& a, const Expansion& b) { return a.tree < b.tree; });
    return out;
}

Tree graft(const Tree& base, const std::vector<Tree>& parts) {
    if (static_cast<int>(parts.size()) != base.leaves())
        throw UsageError("graft arity mismatch: base has " + std::to_string(base.leaves()) + " leaves but " +
                         std::to_string(parts.size()) + " parts were given");
    std::vector<int> offset(parts.size() + 1, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) offset[i + 1] = offset[i] + parts[i].leaves();
    const int total = offset.back();
    if (total > kMaxLeaves) throw UnsupportedError("grafted tree exceeds the leaf limit");
    std::vector<LeafSet> block(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) block[i] = full_set(parts[i].leaves()) << offset[i];
    std::vector<LeafSet> clusters;
    for (LeafSet c : base.clusters()) {
        LeafSet u = 0;
        for (LeafSet r = c; r; r &= r - 1) u |= block[static_cast<std::size_t>(std::countr_zero(r))];
        clusters.push_back(u);
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (LeafSet c : parts[i].clusters()) clusters.push_back(c << offset[i]);
    if (total == 1) return Tree();
    return Tree(total, std::move(clusters));
}

// ------------------------------------------------------------------ PermGroup

PermGroup::PermGroup(int degree, std::vector<Perm> generators) : degree_(degree), generators_(std::move(generators)) {
    if (degree < 1 || degree > kMaxLeaves) throw UsageError("group degree out of range");
    for (const auto& g : generators_) {
        if (static_cast<int>(g.size()) != degree) throw UsageError("generator has the wrong degree");
        std::vector<bool> hit(g.size(), false);
        for (int v : g) {
            if (v < 0 || v >= degree || hit[static_cast<std::size_t>(v)]) throw UsageError("generator is not a permutation");
            hit[static_cast<std::size_t>(v)] = true;
        }
    }
    // Close over an irredundant subset; element lists passed as generators would cost |G|^2.
    std::set<Perm> seen{identity_perm(degree)};
    auto& basis = basis_;
    for (const auto& g : generators_) {
        if (seen.count(g)) continue;
        basis.push_back(g);
        std::vector<Perm> frontier(seen.begin(), seen.end());
        while (!frontier.empty()) {
            std::vector<Perm> next;
            for (const auto& e : frontier)
                for (const auto& b : basis) {
                    Perm h = compose(b, e);
                    if (seen.insert(h).second) next.push_back(std::move(h));
                }
            frontier = std::move(next);
        }
    }
    elements_.assign(seen.begin(), seen.end());
}

PermGroup PermGroup::symmetric(int n) {
    std::vector<Perm> gens;
    if (n >= 2) {
        Perm swap = identity_perm(n);
        std::swap(swap[0], swap[1]);
        gens.push_back(swap);
    }
    if (n >= 3) {
        Perm cycle(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
        gens.push_back(cycle);
    }
    return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::trivial(int n) { return PermGroup(n, {}); }

PermGroup PermGroup::fixing_first(int n) {
    std::vector<Perm> gens;
    if (n >= 3) {
        Perm swap = identity_perm(n);
        std::swap(swap[1], swap[2]);
        gens.push_back(swap);
    }
    if (n >= 4) {
        Perm cycle = identity_perm(n);
        for (int i = 1; i < n; ++i) cycle[static_cast<std::size_t>(i)] = i + 1 < n ? i + 1 : 1;
        gens.push_back(cycle);
    }
    return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::parse(std::string_view name) {
    auto number = [&](std::string_view digits) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || v < 1)
            throw UsageError("unknown group \"" + std::string(name) + "\"");
        return v;
    };
    constexpr std::string_view fix = "-fixing-1";
    if (name.starts_with("sigma") && name.ends_with(fix) && name.size() > 5 + fix.size())
        return fixing_first(number(name.substr(5, name.size() - 5 - fix.size())) + 1);
    if (name.starts_with("sigma")) return symmetric(number(name.substr(5)));
    if (name.starts_with("trivial")) return trivial(number(name.substr(7)));
    throw UsageError("unknown group \"" + std::string(name) + "\" (expected sigma<n>, sigma<m>-fixing-1 or trivial<n>)");
}

bool PermGroup::contains(const Perm& g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
    if (degree_ != other.degree_) return false;
    return std::all_of(elements_.begin(), elements_.end(), [&](const Perm& g) { return other.contains(g); });
}

PermGroup symmetry_group(const Tree& t, const PermGroup& g) {
    if (g.degree() != t.leaves())
        throw UsageError("group degree " + std::to_string(g.degree()) + " does not match leaf count " +
                         std::to_string(t.leaves()));
    std::vector<Perm> fixing;
    for (const auto& e : g.elements())
        if (t.relabeled(e) == t) fixing.push_back(e);
    return PermGroup(t.leaves(), std::move(fixing));
}

int edge_orientation(const Tree& t, const Perm& g) {
    const auto& c = t.clusters();
    Perm induced;
    for (std::size_t i = 1; i < c.size(); ++i) {
        const LeafSet image = apply(g, c[i]);
        auto it = std::find(c.begin() + 1, c.end(), image);
        if (it == c.end()) throw UsageError("permutation does not preserve the tree");
        induced.push_back(static_cast<int>(it - c.begin() - 1));
    }
    return perm_sign(induced);
}

std::vector<OrbitRow> orbit_census(const std::vector<Tree>& trees, const PermGroup& g) {
    std::vector<Tree> sorted = trees;
    std::sort(sorted.begin(), sorted.end());
    std::unordered_set<Tree, TreeHash> visited;
    std::vector<OrbitRow> rows;
    for (const auto& t : sorted) {
        if (visited.count(t)) continue;
        if (g.degree() != t.leaves()) throw UsageError("group degree does not match leaf count");
        std::unordered_set<Tree, TreeHash> orbit;
        std::vector<Perm> stab;
        for (const auto& e : g.elements()) {
            Tree image = t.relabeled(e);
            if (image == t) stab.push_back(e);
            orbit.insert(std::move(image));
        }
        for (const auto& o : orbit) visited.insert(o);
        PermGroup stabilizer(t.leaves(), std::move(stab));
        rows.push_back({t, stabilizer.order(), orbit.size(), std::move(stabilizer)});
    }
    return rows;
}

std::vector<OrbitRow> orbit_census(int n, int k, const PermGroup& g) {
    if (g.degree() != n) throw UsageError("group degree does not match leaf count");
    return orbit_census(enumerate_trees(n, k), g);
}

// -------------------------------------------------------------- LevelledTree

LevelledTree::LevelledTree(Tree tree, std::vector<int> levels) : tree_(std::move(tree)), levels_(std::move(levels)) {
    const auto& c = tree_.clusters();
    if (levels_.size() != c.size()) throw UsageError("one level per internal vertex is required");
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            if (i != j && (c[j] & c[i]) == c[j] && levels_[i] >= levels_[j])
                throw UsageError("levels must increase from the root towards the leaves");
    std::set<int> distinct(levels_.begin(), levels_.end());
    int expect = 1;
    for (int l : distinct)
        if (l != expect++) throw UsageError("levels must be exactly 1..k");
}

LevelledTree LevelledTree::uniform(int arity, int levels) {
    if (arity < 2 || levels < 1) throw UsageError("T_{n,k} needs n >= 2 and k >= 1");
    long long leaves = 1;
    for (int i = 0; i < levels; ++i) leaves *= arity;
    if (leaves > kMaxLeaves) throw UnsupportedError("T_{n,k} exceeds the leaf limit");
    std::vector<LeafSet> clusters;
    std::vector<std::pair<LeafSet, int>> tagged;
    long long block = leaves;
    for (int d = 0; d < levels; ++d) {
        for (long long start = 0; start < leaves; start += block)
            tagged.emplace_back(full_set(static_cast<int>(block)) << start, d + 1);
        block /= arity;
    }
    std::sort(tagged.begin(), tagged.end(), [](auto& a, auto& b) { return cluster_less(a.first, b.first); });
    std::vector<int> lv;
    for (auto& [c, l] : tagged) {
        clusters.push_back(c);
        lv.push_back(l);
    }
    return LevelledTree(Tree(static_cast<int>(leaves), std::move(clusters)), std::move(lv));
}

int LevelledTree::level_count() const noexcept {
    return levels_.empty() ? 0 : *std::max_element(levels_.begin(), levels_.end());
}

std::string LevelledTree::str() const {
    if (tree_.leaves() == 1) return "1";
    const auto& c = tree_.clusters();
    std::function<void(LeafSet, std::string&)> render = [&](LeafSet v, std::string& out) {
        out += '(';
        bool first = true;
        for (LeafSet child : tree_.children(v)) {
            if (!first) out += ',';
            first = false;
            if (leaf_count(child) == 1)
                out += std::to_string(min_leaf(child));
            else
                render(child, out);
        }
        out += "):";
        out += std::to_string(levels_[static_cast<std::size_t>(std::find(c.begin(), c.end(), v) - c.begin())]);
    };
    std::string out;
    render(c.front(), out);
    return out;
}

bool operator<(const LevelledTree& a, const LevelledTree& b) {
    if (a.tree_ != b.tree_) return a.tree_ < b.tree_;
    return a.levels_ < b.levels_;
}

std::vector<LevelledTree> enumerate_levelled(int n, int k) {
    if (n < 2 || k < 1 || k > n - 1) return {};
    if (n > 12) throw UnsupportedError("levelled enumeration is limited to n <= 12");
    // A levelled tree with k levels is a strict chain of partitions from {all} down to singletons;
    // the vertices at level L are the blocks split at step L.
    std::vector<LevelledTree> out;
    std::vector<std::pair<LeafSet, int>> vertices;
    std::function<void(const std::vector<LeafSet>&, int)> rec = [&](const std::vector<LeafSet>& blocks, int level) {
        const int remaining = k - level + 1;  // steps still to take, including this one
        if (remaining == 0) {
            if (static_cast<int>(blocks.size()) == n) {
                std::sort(vertices.begin(), vertices.end(), [](auto& a, auto& b) { return cluster_less(a.first, b.first); });
                std::vector<LeafSet> cl;
                std::vector<int> lv;
                for (auto& [c, l] : vertices) {
                    cl.push_back(c);
                    lv.push_back(l);
                }
                out.emplace_back(Tree(n, std::move(cl)), std::move(lv));
            }
            return;
        }
        // Refine each block independently; at least one must split.
        std::vector<std::vector<std::vector<LeafSet>>> options(blocks.size());
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for_each_partition(blocks[i], [&](const std::vector<LeafSet>& parts) { options[i].push_back(parts); });
        std::vector<LeafSet> next;
        const auto saved = vertices;
        std::function<void(std::size_t, bool)> choose = [&](std::size_t i, bool split_any) {
            if (i == blocks.size()) {
                if (!split_any) return;
                if (n - static_cast<int>(next.size()) < remaining - 1) return;
                if (remaining == 1 && static_cast<int>(next.size()) != n) return;
                rec(next, level + 1);
                return;
            }
            for (const auto& parts : options[i]) {
                const bool splits = parts.size() > 1;
                next.insert(next.end(), parts.begin(), parts.end());
                if (splits) vertices.emplace_back(blocks[i], level);
                choose(i + 1, split_any || splits);
                if (splits) vertices.pop_back();
                next.resize(next.size() - parts.size());
            }
        };
        choose(0, false);
        vertices = saved;
    };
    rec({full_set(n)}, 1);
    std::sort(out.begin(), out.end());
    return out;
}

LevelledTree graft_levelled(const LevelledTree& base, const std::vector<LevelledTree>& parts) {
    std::vector<Tree> plain;
    for (const auto& p : parts) plain.push_back(p.tree());
    const Tree grafted = graft(base.tree(), plain);
    const int shift = base.level_count();
    std::vector<int> offset(parts.size() + 1, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) offset[i + 1] = offset[i] + parts[i].tree().leaves();
    std::map<LeafSet, int> level_of;
    const auto& bc = base.tree().clusters();
    for (std::size_t i = 0; i < bc.size(); ++i) {
        LeafSet u = 0;
        for (LeafSet r = bc[i]; r; r &= r - 1) {
            const auto leaf = static_cast<std::size_t>(std::countr_zero(r));
            u |= full_set(parts[leaf].tree().leaves()) << offset[leaf];
        }
        level_of[u] = base.levels()[i];
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& pc = parts[i].tree().clusters();
        for (std::size_t j = 0; j < pc.size(); ++j) level_of[pc[j] << offset[i]] = parts[i].levels()[j] + shift;
    }
    std::vector<int> levels;
    for (LeafSet c : grafted.clusters()) levels.push_back(level_of.at(c));
    // Parts with fewer levels than others can leave gaps; compress to 1..k.
    std::set<int> used(levels.begin(), levels.end());
    std::map<int, int> rank;
    int r = 0;
    for (int l : used) rank[l] = ++r;
    for (int& l : levels) l = rank[l];
    return LevelledTree(grafted, std::move(levels));
}

}  // namespace slk
