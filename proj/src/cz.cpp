#include "twist/cz.hpp"

#include "twist/paraproduct.hpp"

#include <cmath>
#include <stdexcept>

namespace twist {

namespace {

void scan(const StepFunction2D& G, int i, const DyadicInterval& J, double lambda, int N,
          std::vector<DyadicInterval>& out)
{
    const int first = J.first_cell(N);
    const int count = J.cell_count(N);
    double s = 0.0;
    for (int j = first; j < first + count; ++j)
        s += std::abs(G(i, j));
    if (s / count > lambda) {
        out.push_back(J);
        return;
    }
    if (J.scale < N) {
        scan(G, i, J.left_half(), lambda, N, out);
        scan(G, i, J.right_half(), lambda, N, out);
    }
}

} // namespace

FiberCZ fiber_cz(const StepFunction2D& G, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("fiber_cz: lambda must be positive");
    if (!G.is_nonnegative())
        throw std::invalid_argument("fiber_cz: G must be nonnegative");
    const int N = G.resolution();
    const int n = G.side();
    FiberCZ cz;
    cz.lambda = lambda;
    cz.bad.resize(static_cast<std::size_t>(n));
    cz.exceptional = StepFunction2D(N, 0.0);
    cz.good = G;
    for (int i = 0; i < n; ++i) {
        auto& list = cz.bad[static_cast<std::size_t>(i)];
        scan(G, i, DyadicInterval{}, lambda, N, list);
        for (const auto& J : list) {
            const int first = J.first_cell(N);
            const int count = J.cell_count(N);
            double s = 0.0;
            for (int j = first; j < first + count; ++j)
                s += G(i, j);
            const double mean = s / count;
            for (int j = first; j < first + count; ++j) {
                cz.good(i, j) = mean;
                cz.exceptional(i, j) = 1.0;
            }
        }
    }
    return cz;
}

double vanishing_residual(const StepFunction2D& F, const StepFunction2D& G, const FiberCZ& cz)
{
    const auto T = t_d(F, G - cz.good);
    double worst = 0.0;
    for (int i = 0; i < T.side(); ++i)
        for (int j = 0; j < T.side(); ++j)
            if (!cz.in_exceptional(i, j))
                worst = std::max(worst, std::abs(T(i, j)));
    return worst;
}

double vanishing_residual(const StepFunction2D& F, const StepFunction2D& G, double lambda)
{
    return vanishing_residual(F, G, fiber_cz(G, lambda));
}

namespace {

double superlevel(const StepFunction2D& T, double level)
{
    std::size_t c = 0;
    for (double v : T.values())
        if (std::abs(v) > level)
            ++c;
    return static_cast<double>(c) * T.cell_area();
}

} // namespace

WeakEndpointReport weak_endpoint_experiment(double p, int trials, int N, std::uint64_t seed)
{
    if (!(p > 2.0) || !std::isfinite(p))
        throw std::invalid_argument("weak_endpoint_experiment: needs 2 < p < inf");
    if (trials < 1)
        throw std::invalid_argument("weak_endpoint_experiment: trials must be positive");
    WeakEndpointReport rep;
    rep.p = p;
    rep.N = N;
    rep.trials = trials;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto F = normalized(random_nonnegative(N, rng), p);
        const auto G = normalized(random_multiscale(N, rng), 1.0);
        const auto T = t_d(F, G);
        const auto cz = fiber_cz(G, 1.0);
        const auto Tg = t_d(F, cz.good);
        rep.max_superlevel = std::max(rep.max_superlevel, superlevel(T, 1.0));
        rep.max_exceptional = std::max(rep.max_exceptional, cz.exceptional_measure());
        rep.max_good_superlevel = std::max(rep.max_good_superlevel, superlevel(Tg, 1.0));
        rep.max_vanishing_residual = std::max(rep.max_vanishing_residual, vanishing_residual(F, G, cz));
        for (int i = 0; i < T.side(); ++i)
            for (int j = 0; j < T.side(); ++j)
                if (std::abs(T(i, j)) > 1.0 && !cz.in_exceptional(i, j) && !(std::abs(Tg(i, j)) > 1.0))
                    rep.inclusion_ok = false;
    }
    return rep;
}

} // namespace twist
