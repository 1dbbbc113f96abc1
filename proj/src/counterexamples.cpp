#include "twist/counterexamples.hpp"

#include "twist/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twist {

FunctionPair counterexample_linfty_lq(int n, int N)
{
    if (n < 1 || n > N)
        throw std::invalid_argument("counterexample_linfty_lq: need 1 <= n <= N");
    std::vector<StepFunction1D> R;
    R.emplace_back(N);  // unused slot so that R[k] is R_k
    for (int k = 1; k <= n; ++k)
        R.push_back(rademacher(k, N));
    const int side = 1 << N;
    FunctionPair out{StepFunction2D(N), StepFunction2D(N)};
    for (int i = 0; i < side; ++i) {
        // x in [2^-j, 2^-j+1) iff 2^(N-j) <= i < 2^(N-j+1)
        int j = 0;
        for (int jj = 1; jj <= n - 1; ++jj)
            if (i >= (side >> jj) && i < (side >> (jj - 1)))
                j = jj;
        for (int y = 0; y < side; ++y) {
            out.F(i, y) = j > 0 ? 2.0 * R[static_cast<std::size_t>(j)][y]
                                      - R[static_cast<std::size_t>(j + 1)][y]
                                : R[static_cast<std::size_t>(n)][y];
            if (i < (side >> n)) {
                double s = 0.0;
                for (int k = 1; k <= n; ++k)
                    s += R[static_cast<std::size_t>(k)][y];
                out.G(i, y) = s;
            }
        }
    }
    return out;
}

FunctionPair counterexample_linfty_linfty(int n, int N)
{
    if (n < 1 || 2 * n > N)
        throw std::invalid_argument("counterexample_linfty_linfty: need 1 <= 2n <= N");
    const int side = 1 << N;
    StepFunction1D f(N);
    for (int j = 0; j < n; ++j)
        for (int i = side >> (2 * j + 1); i < (side >> (2 * j)); ++i)
            f[i] = 1.0;
    StepFunction1D one(N, 1.0);
    const auto F = StepFunction2D::tensor(f, one);
    return {F, F.transposed()};
}

CornerValue counterexample_corner_value(int n)
{
    if (n < 1 || n > 6)
        throw std::invalid_argument("counterexample_corner_value: need 1 <= n <= 6");
    const int N = 2 * n;
    const auto [F, G] = counterexample_linfty_linfty(n, N);
    const auto T = t_d(F, G);
    CornerValue out;
    out.n = n;
    out.min = inf;
    out.max = -inf;
    const int corner = (1 << N) >> (2 * n);
    for (int i = 0; i < corner; ++i)
        for (int j = 0; j < corner; ++j) {
            out.min = std::min(out.min, T(i, j));
            out.max = std::max(out.max, T(i, j));
        }
    return out;
}

std::vector<GrowthRow> growth_report(int n_max, double q)
{
    if (!(q >= 1.0) || !std::isfinite(q))
        throw std::invalid_argument("growth_report: need 1 <= q < inf");
    if (n_max < 1 || n_max > 14)
        throw std::invalid_argument("growth_report: need 1 <= n_max <= 14");
    std::vector<GrowthRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        const auto [F, G] = counterexample_linfty_lq(n, n);
        GrowthRow r;
        r.n = n;
        r.weak_norm = weak_lp(t_d(F, G), q);
        r.sup_F = F.max_abs();
        r.norm_G = lp_norm(G, q);
        r.ratio = r.weak_norm / (r.sup_F * r.norm_G);
        r.ratio_over_sqrt_n = r.ratio / std::sqrt(static_cast<double>(n));
        rows.push_back(r);
    }
    return rows;
}

std::string growth_csv(const std::vector<GrowthRow>& rows)
{
    std::ostringstream os;
    os.precision(17);
    os << "n,weak_norm,sup_F,norm_G,ratio,ratio_over_sqrt_n\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.weak_norm << ',' << r.sup_F << ',' << r.norm_G << ',' << r.ratio << ','
           << r.ratio_over_sqrt_n << '\n';
    return os.str();
}

} // namespace twist
