#pragma once

// Labelled rooted trees indexing the cells of the derivatives of the identity.
//
// A tree on leaves {1..n} is stored as the family of leaf sets ("clusters") of
// its internal vertices. The family is laminar, contains the full leaf set (the
// vertex above the root edge) and every cluster has at least two children.
// Clusters are kept in depth-first preorder, which with children sorted by
// minimal leaf is the order (min leaf ascending, size descending).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slk {

using LeafSet = std::uint64_t;
inline constexpr int kMaxLeaves = 64;

int min_leaf(LeafSet s) noexcept;
int leaf_count(LeafSet s) noexcept;
LeafSet full_set(int n) noexcept;
/// Total order on clusters agreeing with depth-first preorder inside any tree.
bool cluster_less(LeafSet a, LeafSet b) noexcept;

/// A permutation of {1..n}, stored 0-based: image[i] is the image of leaf i+1, minus one.
using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b);  // a after b
Perm inverse(const Perm& a);
Perm identity_perm(int n);
int perm_sign(const Perm& a);
int perm_order(const Perm& a);
LeafSet apply(const Perm& g, LeafSet s);
std::string perm_str(const Perm& g);  // cycle notation, 1-based

class Tree {
public:
    /// The single-leaf tree on {1}; the operadic unit.
    Tree() = default;
    /// Validates and canonicalizes. Throws UsageError on a malformed family.
    Tree(int n, std::vector<LeafSet> clusters);

    /// T_n: one internal vertex carrying all n leaves.
    static Tree corolla(int n);
    /// T^{j,i}: leaf j beside a vertex carrying the other i-1 leaves.
    static Tree split_off(int j, int i);
    /// Parses the nested-parenthesis form, e.g. "((1,2),3)".
    static Tree parse(std::string_view text);

    int leaves() const noexcept { return n_; }
    int internal_vertices() const noexcept { return static_cast<int>(clusters_.size()); }
    const std::vector<LeafSet>& clusters() const noexcept { return clusters_; }
    bool has_cluster(LeafSet s) const;

    /// Child blocks of a cluster: maximal sub-clusters and leftover single leaves, by minimal leaf.
    std::vector<LeafSet> children(LeafSet cluster) const;

    Tree relabeled(const Perm& g) const;
    /// Removes the internal edge above a non-root cluster.
    Tree collapsed(LeafSet cluster) const;

    std::string str() const;

    friend bool operator==(const Tree& a, const Tree& b) { return a.n_ == b.n_ && a.clusters_ == b.clusters_; }
    friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
    /// Canonical order used by every enumeration.
    friend bool operator<(const Tree& a, const Tree& b);

private:
    int n_ = 1;
    std::vector<LeafSet> clusters_;
};

struct TreeHash {
    std::size_t operator()(const Tree& t) const noexcept;
};

/// Trees with n leaves and exactly k internal vertices, sorted canonically.
std::vector<Tree> enumerate_trees(int n, int k);
std::vector<Tree> enumerate_all_trees(int n);
/// Seeds the in-process enumeration memo, e.g. from a disk cache. The list must be the
/// complete canonical enumeration; a wrong count throws IntegrityError.
void install_trees(int n, std::vector<Tree> trees);
/// Known tree counts for n = 1..9.
std::size_t tree_count(int n);

struct Expansion {
    Tree tree;
    LeafSet new_cluster;  // collapsing the edge above it gives back the source
};

/// All trees with one more internal vertex that collapse onto t.
std::vector<Expansion> expansions(const Tree& t);

/// Operadic composition: leaf i of base is replaced by parts[i-1], whose labels are shifted
/// by the total leaf count of parts[0..i-2].
Tree graft(const Tree& base, const std::vector<Tree>& parts);

/// A finite permutation group given by generators; the element list is closed on construction.
class PermGroup {
public:
    PermGroup(int degree, std::vector<Perm> generators);

    static PermGroup symmetric(int n);
    static PermGroup trivial(int n);
    /// 1 x Sigma_{n-1}: permutations of {2..n} fixing leaf 1.
    static PermGroup fixing_first(int n);
    /// Parses "sigma<n>", "sigma<m>-fixing-1" (degree m+1) or "trivial<n>".
    static PermGroup parse(std::string_view name);

    int degree() const noexcept { return degree_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<Perm>& generators() const noexcept { return generators_; }
    /// An irredundant subset of generators() that still generates the group.
    const std::vector<Perm>& basis() const noexcept { return basis_; }
    /// Sorted; the identity comes first.
    const std::vector<Perm>& elements() const noexcept { return elements_; }
    bool contains(const Perm& g) const;
    bool is_subgroup_of(const PermGroup& other) const;

    friend bool operator==(const PermGroup& a, const PermGroup& b) {
        return a.degree_ == b.degree_ && a.elements_ == b.elements_;
    }

private:
    int degree_;
    std::vector<Perm> generators_;
    std::vector<Perm> basis_;
    std::vector<Perm> elements_;
};

/// Sigma_T' = G intersected with the label permutations fixing t.
PermGroup symmetry_group(const Tree& t, const PermGroup& g);

/// Sign of the permutation an automorphism induces on the internal edges of t, in preorder.
int edge_orientation(const Tree& t, const Perm& g);

struct OrbitRow {
    Tree representative;  // canonically least member
    std::size_t stabilizer_order;
    std::size_t orbit_size;
    PermGroup stabilizer;
};

std::vector<OrbitRow> orbit_census(int n, int k, const PermGroup& g);
/// Orbits of an explicit tree list (which must be G-stable).
std::vector<OrbitRow> orbit_census(const std::vector<Tree>& trees, const PermGroup& g);

/// A tree with strictly increasing levels 1..k along every root-to-leaf path.
class LevelledTree {
public:
    /// levels[i] belongs to tree.clusters()[i]; values must be exactly {1..k}.
    LevelledTree(Tree tree, std::vector<int> levels);

    /// T_{n,k}: every vertex has n children, k levels, n^k leaves.
    static LevelledTree uniform(int arity, int levels);

    const Tree& tree() const noexcept { return tree_; }
    const std::vector<int>& levels() const noexcept { return levels_; }
    int level_count() const noexcept;
    /// Like Tree::str with ":level" after each vertex, e.g. "((1,2):2,3):1".
    std::string str() const;

    friend bool operator==(const LevelledTree& a, const LevelledTree& b) {
        return a.tree_ == b.tree_ && a.levels_ == b.levels_;
    }
    friend bool operator<(const LevelledTree& a, const LevelledTree& b);

private:
    Tree tree_;
    std::vector<int> levels_;
};

/// Isomorphism classes of levelled trees with n leaves and k levels.
std::vector<LevelledTree> enumerate_levelled(int n, int k);

/// Grafting of levelled trees with the level-by-level reading: base levels first, then
/// level i of every part becomes level (base levels + i).
LevelledTree graft_levelled(const LevelledTree& base, const std::vector<LevelledTree>& parts);

}  // namespace slk
