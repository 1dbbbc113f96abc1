#pragma once

#include "twist/dyadic.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace twist {

/// Value of a square-indexed form, optionally with each square's share.
struct BoxFormResult {
    double value = 0.0;
    std::size_t square_count = 0;
    std::optional<std::vector<std::pair<DyadicSquare, double>>> per_square;
};

/// Gowers box inner-product
///   |Q|^-2 int_I int_I int_J int_J F1(u,v) F2(x,v) F3(u,y) F4(x,y),
/// evaluated by contracting v and y first (O(m^3) on an m x m block).
double box_inner_product(const StepFunction2D& F1, const StepFunction2D& F2,
                         const StepFunction2D& F3, const StepFunction2D& F4,
                         const DyadicSquare& Q);

/// [F,F,F,F]^(1/4). Equals the normalized Schatten 4-norm of F restricted to Q.
double box_norm(const StepFunction2D& F, const DyadicSquare& Q);

/// (|Q|^-1 int_Q |F|^2)^(1/2), the L^2 average that dominates the box norm.
double l2_average(const StepFunction2D& F, const DyadicSquare& Q);

/// Xi over a collection: sum of |Q| [F1,F2,F3,F4]_Q.
BoxFormResult xi_form(std::span<const DyadicSquare> collection, const StepFunction2D& F1,
                      const StepFunction2D& F2, const StepFunction2D& F3,
                      const StepFunction2D& F4, bool keep_per_square = false);

} // namespace twist
