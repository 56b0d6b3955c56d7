#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "slk/error.hpp"
#include "slk/forest.hpp"

using namespace slk;

namespace {

// Leaf insertion: a tree on n+1 leaves with k vertices comes from one on n leaves either by
// hanging the new leaf on one of k vertices or by subdividing one of the n+k-1 edges of a
// tree with k-1 vertices.
std::size_t insertion_count(int n, int k) {
    std::map<std::pair<int, int>, std::size_t> t;
    t[{1, 0}] = 1;
    for (int m = 1; m < n; ++m)
        for (int j = 0; j <= m; ++j) {
            const std::size_t keep = j >= 1 ? static_cast<std::size_t>(j) * t[{m, j}] : 0;
            const std::size_t split = j >= 1 ? static_cast<std::size_t>(m + j - 1) * t[{m, j - 1}] : 0;
            t[{m + 1, j}] = keep + split;
        }
    return t[{n, k}];
}

std::multiset<std::size_t> stabilizer_orders(const std::vector<OrbitRow>& rows) {
    std::multiset<std::size_t> out;
    for (const auto& r : rows) out.insert(r.stabilizer_order);
    return out;
}

}  // namespace

TEST_CASE("tree strings round trip") {
    for (const char* s : {"(1,2)", "((1,2),3)", "(1,(2,3,4))", "((1,2),(3,4,5))"}) CHECK(Tree::parse(s).str() == s);
    CHECK(Tree::parse("(3,(2,1))").str() == "((1,2),3)");
    CHECK(Tree::parse("((2,1),3)") == Tree::parse("(3,(1,2))"));
    CHECK_THROWS_AS(Tree::parse("(1,1)"), UsageError);
    CHECK_THROWS_AS(Tree::parse("(1,3)"), UsageError);
    CHECK_THROWS_AS(Tree::parse("((1),2)"), UsageError);
    CHECK_THROWS_AS(Tree::parse("(1,2"), UsageError);
    CHECK(Tree::split_off(1, 3).str() == "(1,(2,3))");
    CHECK(Tree::corolla(3).str() == "(1,2,3)");
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_trees(2, 1).size() == 1);
    CHECK(enumerate_trees(3, 2).size() == 3);
    CHECK(enumerate_trees(4, 2).size() == 10);
    CHECK(enumerate_trees(4, 3).size() == 15);
    CHECK(enumerate_trees(4, 4).empty());
    CHECK(enumerate_trees(4, 0).empty());
    for (int n = 2; n <= 7; ++n) {
        std::size_t total = 0;
        for (int k = 1; k < n; ++k) {
            const auto trees = enumerate_trees(n, k);
            CHECK(trees.size() == insertion_count(n, k));
            CHECK(std::is_sorted(trees.begin(), trees.end()));
            CHECK(std::adjacent_find(trees.begin(), trees.end()) == trees.end());
            total += trees.size();
        }
        CHECK(total == tree_count(n));
    }
}

TEST_CASE("canonical form is invariant under relabeling round trips") {
    std::mt19937 rng(11);
    for (const auto& t : enumerate_all_trees(5)) {
        Perm g = identity_perm(5);
        std::shuffle(g.begin(), g.end(), rng);
        const Tree u = t.relabeled(g);
        CHECK(Tree::parse(u.str()) == u);
        CHECK(u.relabeled(inverse(g)) == t);
    }
}

TEST_CASE("symmetry groups") {
    CHECK(symmetry_group(Tree::corolla(2), PermGroup::symmetric(2)).order() == 2);
    CHECK(symmetry_group(Tree::split_off(1, 3), PermGroup::symmetric(3)).order() == 2);
    CHECK(symmetry_group(Tree::corolla(5), PermGroup::symmetric(5)).order() == 120);
    CHECK_THROWS_AS(symmetry_group(Tree::corolla(3), PermGroup::symmetric(4)), UsageError);
}

TEST_CASE("census of d_4 under 1 x Sigma_3") {
    const PermGroup g = PermGroup::parse("sigma3-fixing-1");
    CHECK(g.order() == 6);
    CHECK(g == PermGroup::fixing_first(4));
    const auto c1 = orbit_census(4, 1, g);
    const auto c2 = orbit_census(4, 2, g);
    const auto c3 = orbit_census(4, 3, g);
    CHECK(c1.size() == 1);
    CHECK(c2.size() == 4);
    CHECK(c3.size() == 4);
    CHECK(stabilizer_orders(c1) == std::multiset<std::size_t>{6});
    CHECK(stabilizer_orders(c2) == std::multiset<std::size_t>{6, 2, 2, 2});
    CHECK(stabilizer_orders(c3) == std::multiset<std::size_t>{2, 2, 1, 2});
}

TEST_CASE("orbit-stabilizer on every census row") {
    for (const char* name : {"sigma5", "sigma4-fixing-1", "trivial5"}) {
        const PermGroup g = PermGroup::parse(name);
        for (int k = 1; k < 5; ++k) {
            std::size_t covered = 0;
            for (const auto& r : orbit_census(5, k, g)) {
                CHECK(r.orbit_size * r.stabilizer_order == g.order());
                CHECK(r.stabilizer == symmetry_group(r.representative, g));
                covered += r.orbit_size;
            }
            CHECK(covered == enumerate_trees(5, k).size());
        }
    }
}

TEST_CASE("expansions") {
    const auto e3 = expansions(Tree::corolla(3));
    REQUIRE(e3.size() == 3);
    std::set<std::string> got;
    for (const auto& e : e3) got.insert(e.tree.str());
    CHECK(got == std::set<std::string>{"(1,(2,3))", "((1,3),2)", "((1,2),3)"});
    CHECK(expansions(Tree::corolla(2)).empty());
    CHECK(expansions(Tree::corolla(4)).size() == 10);
    for (int n = 3; n <= 5; ++n)
        for (const auto& t : enumerate_all_trees(n))
            for (const auto& e : expansions(t)) {
                CHECK(e.tree.internal_vertices() == t.internal_vertices() + 1);
                CHECK(e.tree.collapsed(e.new_cluster) == t);
            }
}

TEST_CASE("collapse and expansion are dual") {
    const int n = 5;
    for (int k = 2; k < n; ++k)
        for (const auto& big : enumerate_trees(n, k))
            for (LeafSet c : big.clusters()) {
                if (c == full_set(n)) continue;
                const Tree small = big.collapsed(c);
                const auto ex = expansions(small);
                CHECK(std::any_of(ex.begin(), ex.end(),
                                  [&](const Expansion& e) { return e.tree == big && e.new_cluster == c; }));
            }
}

TEST_CASE("grafting") {
    const Tree g = graft(Tree::corolla(2), {Tree::corolla(2), Tree::corolla(3)});
    CHECK(g.str() == "((1,2),(3,4,5))");
    CHECK(g.internal_vertices() == 3);
    CHECK(g.leaves() == 5);
    for (const auto& t : enumerate_all_trees(4))
        CHECK(graft(t, std::vector<Tree>(4, Tree())) == t);
    CHECK_THROWS_AS(graft(Tree::corolla(3), {Tree(), Tree()}), UsageError);
}

TEST_CASE("grafting is equivariant") {
    std::mt19937 rng(3);
    const std::vector<Tree> pool = {Tree(), Tree::corolla(2), Tree::parse("((1,2),3)"), Tree::parse("(1,2,3)")};
    for (const auto& base : enumerate_all_trees(3)) {
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<Tree> parts;
            for (int i = 0; i < 3; ++i) parts.push_back(pool[rng() % pool.size()]);
            Perm s = identity_perm(3);
            std::shuffle(s.begin(), s.end(), rng);
            // New leaf s(i) carries the old part i.
            std::vector<Tree> moved(3);
            for (int i = 0; i < 3; ++i) moved[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] = parts[static_cast<std::size_t>(i)];
            std::vector<int> old_off(3, 0), new_off(3, 0);
            for (int i = 1; i < 3; ++i) {
                old_off[static_cast<std::size_t>(i)] = old_off[static_cast<std::size_t>(i - 1)] + parts[static_cast<std::size_t>(i - 1)].leaves();
                new_off[static_cast<std::size_t>(i)] = new_off[static_cast<std::size_t>(i - 1)] + moved[static_cast<std::size_t>(i - 1)].leaves();
            }
            const Tree before = graft(base, parts);
            Perm block(static_cast<std::size_t>(before.leaves()));
            for (int i = 0; i < 3; ++i)
                for (int a = 0; a < parts[static_cast<std::size_t>(i)].leaves(); ++a)
                    block[static_cast<std::size_t>(old_off[static_cast<std::size_t>(i)] + a)] =
                        new_off[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] + a;
            CHECK(graft(base.relabeled(s), moved) == before.relabeled(block));
        }
    }
}

TEST_CASE("levelled trees") {
    CHECK(enumerate_levelled(3, 1).size() == 1);
    CHECK(enumerate_levelled(3, 2).size() == 3);
    const auto t32 = LevelledTree::uniform(3, 2);
    CHECK(t32.tree().leaves() == 9);
    CHECK(t32.level_count() == 2);
    const auto l92 = enumerate_levelled(9, 2);
    CHECK(std::find(l92.begin(), l92.end(), t32) != l92.end());
    for (int k = 1; k <= 2; ++k) {
        const auto tp = LevelledTree::uniform(3, 1);
        const auto tk = LevelledTree::uniform(3, k);
        CHECK(graft_levelled(tp, {tk, tk, tk}) == LevelledTree::uniform(3, k + 1));
    }
    CHECK(graft_levelled(LevelledTree::uniform(2, 1), std::vector<LevelledTree>(2, LevelledTree::uniform(2, 1))) ==
          LevelledTree::uniform(2, 2));
}

TEST_CASE("group parsing") {
    CHECK(PermGroup::parse("sigma4").order() == 24);
    CHECK(PermGroup::parse("trivial3").order() == 1);
    CHECK_THROWS_AS(PermGroup::parse("alt4"), UsageError);
    CHECK_THROWS_AS(PermGroup::parse("sigma0"), UsageError);
    CHECK(perm_sign(Perm{1, 0, 2}) == -1);
    CHECK(perm_order(Perm{1, 2, 0}) == 3);
}
