#pragma once

#include "twist/dyadic.hpp"
#include "twist/trees.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace twist {

using SquareValues = std::unordered_map<DyadicSquare, double>;

/// Every dyadic square of scale 0..N-1, coarse to fine.
std::vector<DyadicSquare> all_squares(int N);

/// box_norm(F, Q) for every square of scale 0..N-1.
SquareValues box_norm_map(const StepFunction2D& F);

/// sup of box_norm(F, Q') over Q' containing Q (Q included), scales 0..N-1.
SquareValues sup_box_norm_map(const StepFunction2D& F);

/// floor(log2 v) for v > 0, exact for powers of two.
int level_of(double v);

/// P_k groups squares by floor(log2 of the running sup); M_k holds the
/// maximal squares of P_k. Squares whose running sup is 0 go to `zero`.
struct LevelFamilies {
    std::map<int, std::vector<DyadicSquare>> P;
    std::map<int, std::vector<DyadicSquare>> M;
    std::vector<DyadicSquare> zero;
    SquareValues sup;

    /// sum of |Q| over M_k (0 for unrealized levels).
    double maximal_measure(int k) const;
};

/// Requires F nonnegative and not identically 0.
LevelFamilies level_families(const StepFunction2D& F);

struct TreeEntry {
    int k1 = 0;
    int k2 = 0;
    int k3 = 0;
    ConvexTree tree;

    const DyadicSquare& root() const { return tree.root(); }
};

struct TreeDecomposition {
    std::vector<TreeEntry> entries;
    /// Squares where at least one running sup is 0; they carry no level triple.
    std::vector<DyadicSquare> unassigned;
    LevelFamilies F;
    LevelFamilies G;
    LevelFamilies H;
};

/// Splits all squares of scale 0..N-1 into the trees T_Q, one per maximal
/// square Q of each nonempty P_{k1} ∩ P_{k2} ∩ P_{k3}.
TreeDecomposition triple_decomposition(const StepFunction2D& F, const StepFunction2D& G,
                                       const StepFunction2D& H);

/// Sum over entries of lambda_tree(T_Q, F, G, H).
double tree_sum(const TreeDecomposition& dec, const StepFunction2D& F, const StepFunction2D& G,
                const StepFunction2D& H);

/// |lambda_d(F,G,H) - sum over entries of lambda_tree(T_Q,F,G,H)|.
double resummation_residual(const StepFunction2D& F, const StepFunction2D& G,
                            const StepFunction2D& H);

struct DecompositionAudit {
    bool partition_ok = true;  ///< every square in exactly one tree or unassigned
    bool convex_ok = true;
    bool disjoint_roots_ok = true;  ///< roots with the same level triple never nest
    /// max over leaves of box(leaf) / (2 box(parent)); <= 1 for nonnegative input.
    double max_doubling_ratio = 0.0;
    /// max over tree squares of box / 2^{k+1}; < 1 by construction.
    double max_level_ratio = 0.0;
    /// max over entries of the single tree ratio.
    double max_single_tree_ratio = 0.0;
    /// |Lambda contribution| of unassigned squares.
    double unassigned_contribution = 0.0;

    bool ok() const
    {
        return partition_ok && convex_ok && disjoint_roots_ok && max_doubling_ratio <= 1.0 + 1e-12
               && max_level_ratio < 1.0 && max_single_tree_ratio <= 2.0 + 1e-9;
    }
};

DecompositionAudit audit_decomposition(const TreeDecomposition& dec, const StepFunction2D& F,
                                       const StepFunction2D& G, const StepFunction2D& H);

struct LevelRow {
    int k = 0;
    double maximal_measure = 0.0;    ///< sum of |Q| over M_k
    double weighted = 0.0;           ///< 2^{pk} times the above
    double maximal_superlevel = 0.0; ///< |{M2 F >= 2^k}|
};

struct SummationReport {
    double p = 0, q = 0, r = 0;
    double norm_product = 0.0;  ///< ||F||_p ||G||_q ||H||_r
    double tree_sum = 0.0;      ///< sum 2^{k1+k2+k3} |Q| over all roots
    double min_form = 0.0;      ///< sum over level triples of 2^{k1+k2+k3} min(...)
    double ratio_trees = 0.0;   ///< tree_sum / norm_product
    double ratio_min = 0.0;     ///< min_form / norm_product
    /// sum_k 2^{pk} sum_{M_k}|Q| divided by ||F||_p^p, and likewise for G, H.
    double single_ratio[3] = {0, 0, 0};
    /// min_form split by which normalized level 2^{pk1}/||F||_p^p etc. is largest;
    /// ties go to the lowest index. Each part is divided by norm_product.
    double region_ratio[3] = {0, 0, 0};
    std::vector<LevelRow> levels[3];
};

/// Needs 1/p + 1/q + 1/r = 1 and 2 < p, q, r < inf; throws std::invalid_argument otherwise.
SummationReport summation_bound_report(const StepFunction2D& F, const StepFunction2D& G,
                                       const StepFunction2D& H, double p, double q, double r);

/// CSV with columns function,k,maximal_measure,weighted,maximal_superlevel.
std::string level_table_csv(const SummationReport& report);

} // namespace twist
