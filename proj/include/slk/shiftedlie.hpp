#pragma once

// Free shifted Lie algebra: a degree -1 bracket with [x,y] = (-1)^{|x||y|}[y,x], the
// cyclic Jacobi identity and, at p = 3, [x,[x,x]] = 0.
//
// Normal forms go through the tensor algebra. With super-parity |x|-1 the map
// [x,y] -> (-1)^{|y|}(xy - (-1)^{(|x|-1)(|y|-1)} yx) is an injective Lie map, so a
// combination is reduced by repeatedly peeling off its least monomial, which is
// always a Lyndon word or the square of an odd Lyndon word.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slk/fieldlin.hpp"

namespace slk {

struct Generator {
    std::string name;
    int degree;
};

/// Ordered generator list with distinct names.
class GradedVS {
public:
    GradedVS() = default;
    explicit GradedVS(std::vector<Generator> gens);
    /// "x:2,y:3"
    static GradedVS parse(const std::string& spec);

    std::size_t size() const noexcept { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const noexcept { return gens_; }

private:
    std::vector<Generator> gens_;
};

class LieWord {
public:
    static LieWord leaf(const GradedVS& m, int gen);
    /// A generator carrying a power operation; brackets with it vanish.
    static LieWord op_leaf(int gen, int degree, std::string label);
    static LieWord bracket(const LieWord& a, const LieWord& b);

    bool is_leaf() const noexcept { return kids_.empty(); }
    bool has_op() const noexcept;
    int gen() const noexcept { return gen_; }
    int degree() const noexcept { return degree_; }
    int weight() const noexcept { return weight_; }
    const LieWord& left() const { return kids_.at(0); }
    const LieWord& right() const { return kids_.at(1); }
    /// Generator indices of the leaves, left to right.
    std::vector<int> letters() const;

    /// Nested "[a,[a,b]]" over generator names.
    std::string str(const GradedVS& m) const;

    friend bool operator==(const LieWord& a, const LieWord& b);
    friend bool operator<(const LieWord& a, const LieWord& b);

private:
    int gen_ = -1;
    int degree_ = 0;
    int weight_ = 1;
    std::string op_;  // nonempty on operation-decorated leaves
    std::vector<LieWord> kids_;
};

/// Formal F_p-combination of bracket words; zero coefficients are never stored.
using LieCombination = std::map<LieWord, std::uint32_t>;

void add_term(LieCombination& c, const LieWord& w, long long coeff, Prime p);

/// Rewrites onto the basis of lie_basis. Linear and idempotent.
LieCombination normalize(const LieCombination& w, const GradedVS& m, Prime p);
LieCombination normalize(const LieWord& w, const GradedVS& m, Prime p);

struct LieBasisWord {
    LieWord word;
    int weight;
    int degree;
};

/// Standard bracketings of Lyndon words (letters ordered by degree, then index) through
/// max_weight, plus [b,b] for each such b of even degree. Sorted by weight, then word.
std::vector<LieBasisWord> lie_basis(const GradedVS& m, int max_weight, Prime p);

/// The cyclic Jacobi combination of three words.
LieCombination jacobi(const LieWord& x, const LieWord& y, const LieWord& z, Prime p);

inline constexpr int kBruteForceMaxWeight = 6;

/// Degree -> dimension of the weight-w part, from the span of all bracket words modulo
/// every single-node instance of the defining relations.
std::map<int, std::size_t> brute_force_dims(const GradedVS& m, int weight, Prime p);

/// Same, restricted to words using each listed generator exactly once.
std::size_t brute_force_multilinear(const GradedVS& m, Prime p);

}  // namespace slk
