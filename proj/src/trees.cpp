#include "twist/trees.hpp"

#include "kernel_forms.hpp"

#include <cmath>

namespace twist {

namespace {

void require_shared(const StepFunction2D& F1, const StepFunction2D& F2, const StepFunction2D& F3,
                    const StepFunction2D& F4)
{
    require_same_resolution(F1, F2);
    require_same_resolution(F1, F3);
    require_same_resolution(F1, F4);
}

void require_wavelet_room(const ConvexTree& tree, int N)
{
    if (tree.deepest_scale() >= N)
        throw ResolutionError("tree squares must have scale < N = " + std::to_string(N));
}

enum class ThetaKind { first, second };

BoxFormResult theta(ThetaKind kind, const ConvexTree& tree, const StepFunction2D& F1,
                    const StepFunction2D& F2, const StepFunction2D& F3, const StepFunction2D& F4,
                    bool keep)
{
    require_shared(F1, F2, F3, F4);
    const int N = F1.resolution();
    require_wavelet_room(tree, N);
    const double h = F1.cell_width();
    BoxFormResult out;
    if (keep)
        out.per_square.emplace();
    for (const auto& Q : tree.ordered()) {
        const int m = Q.x_side.cell_count(N);
        const double len = Q.x_side.length();
        const auto b1 = detail::block(F1, Q);
        const auto b2 = detail::block(F2, Q);
        const auto b3 = detail::block(F3, Q);
        const auto b4 = detail::block(F4, Q);
        const auto psi = detail::wavelet_profile(m, len);
        double c = 0.0;
        if (kind == ThetaKind::second) {
            const auto W = detail::full_weight(m, len);
            c = detail::four_form({&b1, &b2, &b3, &b4}, m, h, Axis::y, psi, W);
        } else {
            const auto W = detail::halves_weight(m, len);
            c = detail::four_form({&b1, &b2, &b3, &b4}, m, h, Axis::x, psi, W);
        }
        out.value += c;
        ++out.square_count;
        if (keep)
            out.per_square->emplace_back(Q, c);
    }
    return out;
}

} // namespace

ConvexTree make_tree(std::span<const DyadicSquare> squares) { return ConvexTree::make(squares); }

std::vector<DyadicSquare> leaves(const ConvexTree& tree, int N) { return tree.leaves(N); }

ConvexTree full_tree(int N)
{
    if (N < 1)
        throw ResolutionError("full_tree needs N >= 1");
    std::vector<DyadicSquare> all;
    for (int s = 0; s < N; ++s)
        for (int i = 0; i < (1 << s); ++i)
            for (int j = 0; j < (1 << s); ++j)
                all.push_back(DyadicSquare::make(s, i, j));
    return ConvexTree::make(all);
}

BoxFormResult theta1(const ConvexTree& tree, const StepFunction2D& F1, const StepFunction2D& F2,
                     const StepFunction2D& F3, const StepFunction2D& F4, bool keep_per_square)
{
    return theta(ThetaKind::first, tree, F1, F2, F3, F4, keep_per_square);
}

BoxFormResult theta2(const ConvexTree& tree, const StepFunction2D& F1, const StepFunction2D& F2,
                     const StepFunction2D& F3, const StepFunction2D& F4, bool keep_per_square)
{
    return theta(ThetaKind::second, tree, F1, F2, F3, F4, keep_per_square);
}

double lambda_tree(const ConvexTree& tree, const StepFunction2D& F, const StepFunction2D& G,
                   const StepFunction2D& H)
{
    if (!F.is_nonnegative() || !G.is_nonnegative() || !H.is_nonnegative())
        throw std::invalid_argument("lambda_tree: inputs must be nonnegative");
    const StepFunction2D one(F.resolution(), 1.0);
    return theta2(tree, one, G, F, H).value;
}

double input_scale(const DyadicSquare& root, const StepFunction2D& F1, const StepFunction2D& F2,
                   const StepFunction2D& F3, const StepFunction2D& F4)
{
    return root.area() * F1.max_abs() * F2.max_abs() * F3.max_abs() * F4.max_abs();
}

double telescoping_residual(const ConvexTree& tree, const StepFunction2D& F1,
                            const StepFunction2D& F2, const StepFunction2D& F3,
                            const StepFunction2D& F4)
{
    const int N = F1.resolution();
    const auto lv = tree.leaves(N);
    const double t1 = theta1(tree, F1, F2, F3, F4).value;
    const double t2 = theta2(tree, F1, F2, F3, F4).value;
    const double xl = xi_form(lv, F1, F2, F3, F4).value;
    const std::array<DyadicSquare, 1> top{tree.root()};
    const double xr = xi_form(top, F1, F2, F3, F4).value;
    return std::abs(t1 + t2 - xl + xr);
}

double global_telescoping_residual(const StepFunction2D& F1, const StepFunction2D& F2,
                                   const StepFunction2D& F3, const StepFunction2D& F4)
{
    require_shared(F1, F2, F3, F4);
    const int N = F1.resolution();
    const auto all = full_tree(N);
    const double t1 = theta1(all, F1, F2, F3, F4).value;
    const double t2 = theta2(all, F1, F2, F3, F4).value;
    double product = 0.0;
    for (std::size_t t = 0; t < F1.values().size(); ++t)
        product += F1.values()[t] * F2.values()[t] * F3.values()[t] * F4.values()[t];
    product *= F1.cell_area();
    const std::array<DyadicSquare, 1> top{DyadicSquare::unit()};
    const double coarse = xi_form(top, F1, F2, F3, F4).value;
    return std::abs(t1 + t2 - (product - coarse));
}

double max_leaf_box_norm(const ConvexTree& tree, const StepFunction2D& F)
{
    double m = 0.0;
    for (const auto& L : tree.leaves(F.resolution()))
        m = std::max(m, box_norm(F, L));
    return m;
}

namespace {

double guarded_ratio(double numerator, double denominator, double scale)
{
    if (denominator > 0.0)
        return numerator / denominator;
    if (numerator <= 1e-14 * std::max(scale, 1e-300))
        return 0.0;
    throw std::domain_error("single tree ratio: zero leaf box norm with nonzero form");
}

} // namespace

double single_tree_ratio(const ConvexTree& tree, const StepFunction2D& F1,
                         const StepFunction2D& F2, const StepFunction2D& F3,
                         const StepFunction2D& F4)
{
    const double num = std::abs(theta2(tree, F1, F2, F3, F4).value);
    const double den = tree.root().area() * max_leaf_box_norm(tree, F1) * max_leaf_box_norm(tree, F2)
                       * max_leaf_box_norm(tree, F3) * max_leaf_box_norm(tree, F4);
    return guarded_ratio(num, den, input_scale(tree.root(), F1, F2, F3, F4));
}

double lambda_tree_ratio(const ConvexTree& tree, const StepFunction2D& F, const StepFunction2D& G,
                         const StepFunction2D& H)
{
    const double num = std::abs(lambda_tree(tree, F, G, H));
    const double den = tree.root().area() * max_leaf_box_norm(tree, F) * max_leaf_box_norm(tree, G)
                       * max_leaf_box_norm(tree, H);
    const StepFunction2D one(F.resolution(), 1.0);
    return guarded_ratio(num, den, input_scale(tree.root(), one, F, G, H));
}

} // namespace twist
