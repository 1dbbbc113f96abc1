#include "twist/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twist {

namespace {

void accumulate_product(StepFunction2D& out, const StepFunction2D& a, const StepFunction2D& b,
                        double c)
{
    const int n = out.side();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) += c * a(i, j) * b(i, j);
}

} // namespace

StepFunction2D t_d(const StepFunction2D& F, const StepFunction2D& G)
{
    return t_d_shifted(F, G, 0);
}

double lambda_d(const StepFunction2D& F, const StepFunction2D& G, const StepFunction2D& H)
{
    require_same_resolution(F, H);
    return integral(pointwise_product(t_d(F, G), H));
}

StepFunction2D t_d_shifted(const StepFunction2D& F, const StepFunction2D& G, int k0)
{
    require_same_resolution(F, G);
    const int N = F.resolution();
    StepFunction2D out(N);
    for (int k = 0; k < N; ++k) {
        const int a = k + k0;
        if (a < 0 || a > N)
            continue;
        accumulate_product(out, martingale_average(F, Axis::x, a),
                           martingale_difference(G, Axis::y, k), 1.0);
    }
    return out;
}

StepFunction2D t_d_coeff(const StepFunction2D& F, const StepFunction2D& G,
                         std::span<const double> c)
{
    require_same_resolution(F, G);
    const int N = F.resolution();
    if (c.size() != static_cast<std::size_t>(N))
        throw std::invalid_argument("t_d_coeff: expected N coefficients");
    for (double ck : c)
        if (!(std::abs(ck) <= 1.0))
            throw std::invalid_argument("t_d_coeff: coefficients must satisfy |c_k| <= 1");
    StepFunction2D out(N);
    for (int k = 0; k < N; ++k) {
        const double ck = c[static_cast<std::size_t>(k)];
        if (ck == 0.0)
            continue;
        accumulate_product(out, martingale_average(F, Axis::x, k),
                           martingale_difference(G, Axis::y, k), ck);
    }
    return out;
}

StepFunction2D companion_sum(const StepFunction2D& F, const StepFunction2D& G)
{
    require_same_resolution(F, G);
    const int N = F.resolution();
    StepFunction2D out(N);
    for (int k = 0; k < N; ++k)
        accumulate_product(out, martingale_difference(F, Axis::x, k),
                           martingale_average(G, Axis::y, k + 1), 1.0);
    return out;
}

double product_identity_residual(const StepFunction2D& F, const StepFunction2D& G)
{
    StepFunction2D lhs = t_d(F, G) + companion_sum(F, G);
    accumulate_product(lhs, martingale_average(F, Axis::x, 0), martingale_average(G, Axis::y, 0),
                       1.0);
    accumulate_product(lhs, F, G, -1.0);
    return lhs.max_abs();
}

StepFunction2D dilate_x(const StepFunction2D& F, int shift)
{
    const int N = F.resolution();
    const int n = F.side();
    if (std::abs(shift) > N)
        throw std::invalid_argument("dilate_x: shift exceeds resolution");
    if (shift >= 0) {
        const int limit = n >> shift;
        for (int i = limit; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (F(i, j) != 0.0)
                    throw std::invalid_argument("dilate_x: stretched support leaves [0,1)");
        return StepFunction2D::from_cells(N, [&](int i, int j) { return F(i >> shift, j); });
    }
    const int s = -shift;
    const int block = 1 << s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (F(i, j) != F(i - i % block, j))
                throw std::invalid_argument("dilate_x: compression would merge distinct cells");
    return StepFunction2D::from_cells(N, [&](int i, int j) {
        return (i < (n >> s)) ? F(i << s, j) : 0.0;
    });
}

} // namespace twist
