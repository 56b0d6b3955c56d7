#pragma once

// Mod-p homology of small permutation groups with one-dimensional coefficients.
// Every group in scope has a trivial or cyclic order-p Sylow subgroup P, so
// H_s(G; chi) is the part of H_s(P; F_p) fixed by the normalizer of P.

#include <map>
#include <string>
#include <vector>

#include "slk/fieldlin.hpp"
#include "slk/forest.hpp"
#include "slk/graded.hpp"

namespace slk {

/// A group together with a multiplicative character G -> {+1, -1}.
class CharacterModule {
public:
    /// gen_values[i] is the value on group.generators()[i]. Throws UsageError if the
    /// assignment does not extend to a homomorphism.
    CharacterModule(PermGroup group, std::vector<int> gen_values);

    static CharacterModule trivial(PermGroup group);
    /// sgn(g)^j, the Koszul sign of permuting j-dimensional sphere coordinates.
    static CharacterModule sign_power(PermGroup group, int j);
    /// Values on every element; must be multiplicative.
    static CharacterModule from_values(PermGroup group, const std::map<Perm, int>& values);

    const PermGroup& group() const noexcept { return group_; }
    int value(const Perm& g) const;
    bool is_trivial() const;
    /// The same character restricted to a subgroup.
    CharacterModule restricted(const PermGroup& h) const;
    /// Pointwise product with another character of the same group.
    CharacterModule operator*(const CharacterModule& other) const;

private:
    CharacterModule(PermGroup group, std::map<Perm, int> values);
    PermGroup group_;
    std::map<Perm, int> values_;
};

/// Dimension of the coinvariants; requires p not dividing |G|.
int coinvariant_dim(const CharacterModule& m, Prime p);

/// Ranks of H_s(G; chi) for 0 <= s <= max_degree.
GradedDims small_group_homology(const CharacterModule& m, Prime p, int max_degree);

/// Single degree of the above; negative s gives 0.
int group_homology_rank(const CharacterModule& m, Prime p, int s);

/// (eps, s) with degree = base + 2(p-1)s - eps.
struct OpLabel {
    int eps;
    int s;
};
OpLabel solve_label(int degree, int base, Prime p);
std::string op_label_string(int eps, int s, int inner_degree);

/// Dyer-Lashof instability: Q^s needs 2s >= |x|, beta Q^s needs 2s > |x|.
bool instability_ok(int eps, int s, int inner_degree);

/// H_*((S^j)^{smash p}_{h Sigma_p}) in degrees <= max_degree, labelled "Q^s i(j)" / "bQ^s i(j)".
GradedDims extended_power_sphere(Prime p, int j, int max_degree);

struct TransferResult {
    Matrix map;  // target_dim x source_dim, at most 1 x 1
    std::string rule;
};

/// Transfer H_s(G; chi) -> H_s(H; chi|H) in bases corestricted from a Sylow subgroup.
/// Rules: identity (H = G), index-divisible (p | [G:H], zero), coset-sum (p does not
/// divide |G|), sylow-retaining (H contains a Sylow p-subgroup, multiplication by [G:H]).
TransferResult transfer_map(const CharacterModule& from, const PermGroup& to, Prime p, int s);

/// The scalar [G:H] mod p used by every nonzero rule, with the rule name.
std::pair<std::uint32_t, std::string> transfer_scalar(const PermGroup& g, const PermGroup& h,
                                                      const CharacterModule& chi, Prime p, int s);

}  // namespace slk
