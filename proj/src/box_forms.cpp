#include "twist/box_forms.hpp"

#include "kernel_forms.hpp"

#include <algorithm>
#include <cmath>

namespace twist {

namespace {

// |Q| [F1,F2,F3,F4]_Q as the phi phi phi phi kernel form.
double xi_single(const StepFunction2D& F1, const StepFunction2D& F2, const StepFunction2D& F3,
                 const StepFunction2D& F4, const DyadicSquare& Q)
{
    require_same_resolution(F1, F2);
    require_same_resolution(F1, F3);
    require_same_resolution(F1, F4);
    const int N = F1.resolution();
    const auto b1 = detail::block(F1, Q);
    const auto b2 = detail::block(F2, Q);
    const auto b3 = detail::block(F3, Q);
    const auto b4 = detail::block(F4, Q);
    const int m = Q.x_side.cell_count(N);
    const double len = Q.x_side.length();
    const auto phi = detail::scaling_profile(m, len);
    const auto W = detail::full_weight(m, len);
    return detail::four_form({&b1, &b2, &b3, &b4}, m, F1.cell_width(), Axis::y, phi, W);
}

} // namespace

double box_inner_product(const StepFunction2D& F1, const StepFunction2D& F2,
                         const StepFunction2D& F3, const StepFunction2D& F4,
                         const DyadicSquare& Q)
{
    return xi_single(F1, F2, F3, F4, Q) / Q.area();
}

double box_norm(const StepFunction2D& F, const DyadicSquare& Q)
{
    const double v = box_inner_product(F, F, F, F, Q);
    if (v < 0.0) {
        // The inner contractions are identical, so only round-off in the
        // outer sum can produce a negative value.
        const double scale = std::pow(l2_average(F, Q), 4);
        if (v < -1e-12 * scale)
            throw ConsistencyError("box_norm: [F,F,F,F] = " + std::to_string(v) + " on "
                                   + to_string(Q));
        return 0.0;
    }
    return std::sqrt(std::sqrt(v));
}

double l2_average(const StepFunction2D& F, const DyadicSquare& Q)
{
    const auto b = detail::block(F, Q);
    double s = 0.0;
    for (double v : b)
        s += v * v;
    return std::sqrt(s / static_cast<double>(b.size()));
}

BoxFormResult xi_form(std::span<const DyadicSquare> collection, const StepFunction2D& F1,
                      const StepFunction2D& F2, const StepFunction2D& F3,
                      const StepFunction2D& F4, bool keep_per_square)
{
    BoxFormResult out;
    if (keep_per_square)
        out.per_square.emplace();
    for (const auto& Q : collection) {
        const double c = xi_single(F1, F2, F3, F4, Q);
        out.value += c;
        ++out.square_count;
        if (keep_per_square)
            out.per_square->emplace_back(Q, c);
    }
    return out;
}

} // namespace twist
