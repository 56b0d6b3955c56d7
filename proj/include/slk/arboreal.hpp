#pragma once

// Cellular chain complex of the n-th derivative built from arboreal cells.
// A tree with k internal vertices is a cell in degree -k; the differential sends
// a cell to the signed sum of its expansions.

#include <string>
#include <vector>

#include "slk/fieldlin.hpp"
#include "slk/forest.hpp"
#include "slk/graded.hpp"

namespace slk {

enum class SignConvention {
    /// (-1)^pos, pos = position of the new vertex among the non-root vertices of the
    /// expanded tree in depth-first order. Default.
    Preorder,
    /// Same rule with vertices ordered by leaf-set bitmask. Used as an independent check.
    MaskOrder,
    /// (-1)^(i+1) for splitting the i-th vertex of the source in depth-first order.
    /// Kept for comparison; it does not square to zero from n = 4 on.
    SplitVertex,
};

/// Sign attached to the expansion e of the source tree under a convention.
int expansion_sign(const Tree& source, const Expansion& e, SignConvention conv);

struct ChainComplex {
    int n = 0;
    Prime p{3};
    SignConvention convention = SignConvention::Preorder;
    /// cells[k-1]: trees with k internal vertices, canonical order (degree -k).
    std::vector<std::vector<Tree>> cells;
    /// differential[k-1]: degree -k to degree -(k+1); rows index cells[k], columns cells[k-1].
    std::vector<SparseMatrix> differential;

    int min_degree() const noexcept { return -(n - 1); }
    const std::vector<Tree>& basis(int degree) const;
    std::vector<std::string> labels(int degree) const;
};

inline constexpr int kDefaultComplexBound = 7;

/// Throws IntegrityError if d∘d is nonzero under the chosen convention.
ChainComplex build_complex(int n, Prime p, SignConvention conv = SignConvention::Preorder,
                           int max_n = kDefaultComplexBound);

GradedDims homology(const ChainComplex& c);

struct GraftCheck {
    Tree target;
    int degree;  // -(internal vertices)
    std::string label;
};

/// Grafts cells and confirms the result is a basis cell of the target complex whose
/// vertex count is the sum of the inputs'.
GraftCheck graft_chain_map(const Tree& base, const std::vector<Tree>& parts);

}  // namespace slk
