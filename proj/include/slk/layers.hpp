#pragma once

// Spectral sequence from the G-equivariant arboreal filtration of the n-th derivative,
// converging to H_*((∂_n ∧ (S^j)^{∧n})_{hG}). Column T carries H_*(G_T; chi) placed in
// total degree ambient - k(T) + s.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "slk/fieldlin.hpp"
#include "slk/forest.hpp"
#include "slk/graded.hpp"
#include "slk/grouphom.hpp"

namespace slk {

enum class Twist {
    /// chi = sgn^j on each stabilizer.
    Koszul,
    /// chi = sgn^j times the sign of the permutation induced on internal edges.
    KoszulOriented,
};

struct SSColumn {
    Tree representative;
    int k;  // internal vertices
    PermGroup stabilizer;
    CharacterModule coefficients;
    std::size_t orbit_size;
    GradedDims entries;  // total degree -> rank (0 or 1)
};

struct D1Entry {
    std::size_t source;  // column indices
    std::size_t target;
    int degree;  // total degree of the source entry; the target sits one lower
    std::uint32_t scalar;
};

struct SSPage {
    int n = 0;
    PermGroup group{1, {}};
    int j = 0;
    Prime p{3};
    int ambient = 0;
    int min_degree = 0;  // lowest total degree with a possible entry
    int max_degree = 0;  // requested window; entries are computed two degrees further
    Twist twist = Twist::KoszulOriented;
    int page = 1;
    std::vector<SSColumn> columns;  // ordered by k, then canonical representative
    std::vector<D1Entry> d1;        // nonzero entries only
    std::map<std::pair<int, int>, std::size_t> e2;  // (k, total degree) -> rank, page 2 only
    bool certified = false;

    std::size_t e1_rank(int k, int degree) const;
    std::size_t e2_rank(int k, int degree) const;
    /// The d1 block between two columns at a source degree, as a field element.
    std::uint32_t d1_scalar(std::size_t source, std::size_t target, int degree) const;
};

/// One column per G-orbit of trees; ambient defaults to j*n.
SSPage e1_page(int n, const PermGroup& g, int j, Prime p, int max_degree, Twist twist = Twist::KoszulOriented,
               std::optional<int> ambient = std::nullopt);

/// Fills in d1 (sums of transfers along expansions) and the E2 ranks; certifies collapse
/// when no d_r, r >= 2, can connect two nonzero E2 entries that reach the window.
SSPage d1_matrices(const SSPage& page);

/// H_* of the n-th layer evaluated on S^j, through max_degree.
GradedDims layer_dims(int n, int j, Prime p, int max_degree, Twist twist = Twist::KoszulOriented);

/// Upper end of the supported n for G = Sigma_n.
int layer_scope(Prime p);

}  // namespace slk
