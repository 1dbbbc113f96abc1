#include "kernel_forms.hpp"

#include <cmath>

namespace twist::detail {

std::vector<double> block(const StepFunction2D& F, const DyadicSquare& Q)
{
    const int N = F.resolution();
    if (Q.scale() > N)
        throw ResolutionError("square " + to_string(Q) + " is finer than resolution "
                              + std::to_string(N));
    const int m = Q.x_side.cell_count(N);
    const int i0 = Q.x_side.first_cell(N);
    const int j0 = Q.y_side.first_cell(N);
    std::vector<double> out(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
            out[static_cast<std::size_t>(u * m + v)] = F(i0 + u, j0 + v);
    return out;
}

double four_form(const BlockRefs& f, int m, double h, Axis inner, std::span<const double> b,
                 std::span<const double> W)
{
    const auto& f1 = *f[0];
    const auto& f2 = *f[1];
    const auto& f3 = *f[2];
    const auto& f4 = *f[3];
    const auto at = [m](const std::vector<double>& g, int r, int c) {
        return g[static_cast<std::size_t>(r * m + c)];
    };
    double total = 0.0;
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
            const double w = W[static_cast<std::size_t>(p * m + q)];
            if (w == 0.0)
                continue;
            double a = 0.0;
            double c = 0.0;
            if (inner == Axis::y) {
                // (p, q) = (u, x); contract v and y.
                for (int t = 0; t < m; ++t) {
                    a += at(f1, p, t) * at(f2, q, t) * b[static_cast<std::size_t>(t)];
                    c += at(f3, p, t) * at(f4, q, t) * b[static_cast<std::size_t>(t)];
                }
            } else {
                // (p, q) = (v, y); contract u and x.
                for (int t = 0; t < m; ++t) {
                    a += at(f1, t, p) * at(f3, t, q) * b[static_cast<std::size_t>(t)];
                    c += at(f2, t, p) * at(f4, t, q) * b[static_cast<std::size_t>(t)];
                }
            }
            total += w * (a * c);
        }
    }
    return total * h * h * h * h;
}

std::vector<double> scaling_profile(int m, double len)
{
    return std::vector<double>(static_cast<std::size_t>(m), 1.0 / std::sqrt(len));
}

std::vector<double> wavelet_profile(int m, double len)
{
    std::vector<double> out(static_cast<std::size_t>(m));
    const double amp = 1.0 / std::sqrt(len);
    for (int t = 0; t < m; ++t)
        out[static_cast<std::size_t>(t)] = (t < m / 2) ? amp : -amp;
    return out;
}

std::vector<double> full_weight(int m, double len)
{
    return std::vector<double>(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 1.0 / len);
}

std::vector<double> halves_weight(int m, double len)
{
    std::vector<double> out(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    const double w = 2.0 / len;
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t)
            if ((s < m / 2) == (t < m / 2))
                out[static_cast<std::size_t>(s * m + t)] = w;
    return out;
}

} // namespace twist::detail
