#pragma once

#include "twist/box_forms.hpp"
#include "twist/dyadic.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace twist {

class TreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite convex tree of dyadic cells (squares or cubes). Convexity is
/// equivalent to every non-root cell having its parent in the tree, which is
/// what make() checks.
template <class Cell>
class BasicConvexTree {
public:
    static BasicConvexTree make(std::span<const Cell> cells)
    {
        if (cells.empty())
            throw TreeError("tree: empty collection");
        BasicConvexTree t;
        t.cells_.insert(cells.begin(), cells.end());
        int top = cells.front().scale();
        for (const auto& c : t.cells_)
            top = std::min(top, c.scale());
        int at_top = 0;
        for (const auto& c : t.cells_)
            if (c.scale() == top) {
                t.root_ = c;
                ++at_top;
            }
        if (at_top != 1)
            throw TreeError("tree: no unique maximal cell");
        for (const auto& c : t.cells_) {
            if (!t.root_.contains(c))
                throw TreeError("tree: cell " + to_string(c) + " lies outside the root");
            if (c != t.root_ && !t.cells_.contains(c.parent()))
                throw TreeError("tree: convexity violated at " + to_string(c));
        }
        t.ordered_.assign(t.cells_.begin(), t.cells_.end());
        std::sort(t.ordered_.begin(), t.ordered_.end());
        return t;
    }

    static BasicConvexTree make(const std::vector<Cell>& cells)
    {
        return make(std::span<const Cell>(cells));
    }

    const Cell& root() const { return root_; }
    const std::unordered_set<Cell>& cells() const { return cells_; }
    /// Cells in a fixed (lexicographic) order, used for summation.
    const std::vector<Cell>& ordered() const { return ordered_; }
    std::size_t size() const { return cells_.size(); }
    bool contains(const Cell& c) const { return cells_.contains(c); }

    int deepest_scale() const
    {
        int s = root_.scale();
        for (const auto& c : ordered_)
            s = std::max(s, c.scale());
        return s;
    }

    /// Cells outside the tree whose parent is inside; they partition the root.
    std::vector<Cell> leaves(int N) const
    {
        if (deepest_scale() + 1 > N)
            throw ResolutionError("tree leaves would exceed resolution " + std::to_string(N));
        std::vector<Cell> out;
        for (const auto& c : ordered_)
            for (const auto& child : c.children())
                if (!cells_.contains(child))
                    out.push_back(child);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Cell root_{};
    std::unordered_set<Cell> cells_;
    std::vector<Cell> ordered_;
};

using ConvexTree = BasicConvexTree<DyadicSquare>;

ConvexTree make_tree(std::span<const DyadicSquare> squares);
std::vector<DyadicSquare> leaves(const ConvexTree& tree, int N);

/// Every square of scale 0..N-1; its leaves are the cells of the grid.
ConvexTree full_tree(int N);

/// Sum over I x J in the tree and j in {left,right} of the form with kernel
/// psi_I(u) psi_I(x) phi_{J_j}(v) phi_{J_j}(y).
BoxFormResult theta1(const ConvexTree& tree, const StepFunction2D& F1, const StepFunction2D& F2,
                     const StepFunction2D& F3, const StepFunction2D& F4,
                     bool keep_per_square = false);

/// Sum over I x J in the tree of the form with kernel
/// phi_I(u) phi_I(x) psi_J(v) psi_J(y).
BoxFormResult theta2(const ConvexTree& tree, const StepFunction2D& F1, const StepFunction2D& F2,
                     const StepFunction2D& F3, const StepFunction2D& F4,
                     bool keep_per_square = false);

/// Local trilinear form; equals theta2(tree, 1, G, F, H). Inputs must be
/// nonnegative.
double lambda_tree(const ConvexTree& tree, const StepFunction2D& F, const StepFunction2D& G,
                   const StepFunction2D& H);

/// |Q_T| * prod_j max|F_j|, the magnitude telescoping residuals are measured against.
double input_scale(const DyadicSquare& root, const StepFunction2D& F1, const StepFunction2D& F2,
                   const StepFunction2D& F3, const StepFunction2D& F4);

/// |theta1 + theta2 - Xi_leaves + Xi_root| for a convex tree.
double telescoping_residual(const ConvexTree& tree, const StepFunction2D& F1,
                            const StepFunction2D& F2, const StepFunction2D& F3,
                            const StepFunction2D& F4);

/// All squares of scales 0..N-1 at once:
/// |theta1 + theta2 - (int F1 F2 F3 F4 - Xi_{[0,1)^2})|.
/// The Xi_{[0,1)^2} term is the coarse boundary contribution of the finite grid.
double global_telescoping_residual(const StepFunction2D& F1, const StepFunction2D& F2,
                                   const StepFunction2D& F3, const StepFunction2D& F4);

/// |theta2_T| / (|Q_T| prod_j max_{leaves} ||F_j||_box). Bounded by 2.
double single_tree_ratio(const ConvexTree& tree, const StepFunction2D& F1,
                         const StepFunction2D& F2, const StepFunction2D& F3,
                         const StepFunction2D& F4);

/// |Lambda_T(F,G,H)| / (|Q_T| max||F|| max||G|| max||H||) over the leaves.
double lambda_tree_ratio(const ConvexTree& tree, const StepFunction2D& F,
                         const StepFunction2D& G, const StepFunction2D& H);

/// max over leaves of the box norm.
double max_leaf_box_norm(const ConvexTree& tree, const StepFunction2D& F);

} // namespace twist
