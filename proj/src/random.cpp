#include "twist/random.hpp"

#include <algorithm>

namespace twist {

namespace {

double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace

StepFunction2D random_uniform(int N, Rng& rng)
{
    return StepFunction2D::from_cells(N, [&](int, int) { return uniform(rng, 0.0, 1.0); });
}

StepFunction2D random_signed(int N, Rng& rng)
{
    return StepFunction2D::from_cells(N, [&](int, int) { return uniform(rng, -1.0, 1.0); });
}

StepFunction2D random_rank_one(int N, Rng& rng, bool is_signed)
{
    const double lo = is_signed ? -1.0 : 0.0;
    StepFunction1D a(N), b(N);
    for (int i = 0; i < a.size(); ++i) {
        a[i] = uniform(rng, lo, 1.0);
        b[i] = uniform(rng, lo, 1.0);
    }
    return StepFunction2D::tensor(a, b);
}

StepFunction2D random_multiscale(int N, Rng& rng)
{
    StepFunction2D F(N, 0.0);
    const int n = F.side();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            F(i, j) = 0.05 * uniform(rng, 0.0, 1.0);
    const int bumps = uniform_int(rng, 1, 2 * N + 2);
    for (int b = 0; b < bumps; ++b) {
        const int s = uniform_int(rng, 0, N);
        const int ix = uniform_int(rng, 0, (1 << s) - 1);
        const int iy = uniform_int(rng, 0, (1 << s) - 1);
        // Taller bumps on smaller squares.
        const double height = uniform(rng, 0.2, 1.0) * std::ldexp(1.0, s / 2);
        const int w = 1 << (N - s);
        for (int i = ix * w; i < (ix + 1) * w; ++i)
            for (int j = iy * w; j < (iy + 1) * w; ++j)
                F(i, j) += height;
    }
    return F;
}

StepFunction2D random_nonnegative(int N, Rng& rng)
{
    switch (uniform_int(rng, 0, 3)) {
    case 0:
        return random_uniform(N, rng);
    case 1:
        return random_multiscale(N, rng);
    case 2:
        return random_rank_one(N, rng, false);
    default: {
        const double density = uniform(rng, 0.1, 0.5);
        return StepFunction2D::from_cells(N, [&](int, int) {
            return uniform(rng, 0.0, 1.0) < density ? uniform(rng, 0.0, 4.0) : 0.0;
        });
    }
    }
}

ConvexTree random_convex_tree(int max_scale, Rng& rng)
{
    if (max_scale < 1)
        throw ResolutionError("random_convex_tree needs max_scale >= 1");
    const int s0 = uniform_int(rng, 0, max_scale - 1);
    const auto root = DyadicSquare::make(s0, uniform_int(rng, 0, (1 << s0) - 1),
                                         uniform_int(rng, 0, (1 << s0) - 1));
    const double keep = uniform(rng, 0.3, 0.9);
    std::vector<DyadicSquare> cells{root};
    std::vector<DyadicSquare> frontier{root};
    while (!frontier.empty()) {
        std::vector<DyadicSquare> next;
        for (const auto& Q : frontier) {
            if (Q.scale() + 1 >= max_scale)
                continue;
            for (const auto& c : Q.children())
                if (uniform(rng, 0.0, 1.0) < keep) {
                    cells.push_back(c);
                    next.push_back(c);
                }
        }
        frontier = std::move(next);
    }
    return ConvexTree::make(cells);
}

StepFunction2D normalized(const StepFunction2D& F, double p)
{
    const double n = lp_norm(F, p);
    if (n == 0.0)
        return F;
    return F * (1.0 / n);
}

} // namespace twist
