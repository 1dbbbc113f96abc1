#pragma once

#include "twist/dyadic.hpp"

#include <string>
#include <utility>
#include <vector>

namespace twist {

struct FunctionPair {
    StepFunction2D F;
    StepFunction2D G;
};

/// G = 1_{[0,2^-n)}(x) sum_{k=1}^{n} R_k(y); F = 2R_j - R_{j+1} on x in [2^-j, 2^-j+1)
/// for j = 1..n-1 and R_n on x in [0, 2^-n+1). Needs 1 <= n <= N.
FunctionPair counterexample_linfty_lq(int n, int N);

/// F = 1 on x in the union of [2^-2j-1, 2^-2j), j = 0..n-1, and G(x,y) = F(y,x).
/// Needs 1 <= 2n <= N.
FunctionPair counterexample_linfty_linfty(int n, int N);

/// min and max of T_d(F,G) over [0,2^-2n)^2 for the second construction at N = 2n, 1 <= n <= 6.
struct CornerValue {
    int n = 0;
    double min = 0.0;
    double max = 0.0;
};
CornerValue counterexample_corner_value(int n);

struct GrowthRow {
    int n = 0;
    double weak_norm = 0.0;  ///< ||T_d(F,G)||_{L^{q,inf}}
    double sup_F = 0.0;
    double norm_G = 0.0;     ///< ||G||_q
    double ratio = 0.0;
    double ratio_over_sqrt_n = 0.0;
};

/// Rows n = 1..n_max of the first construction at N = n; needs 1 <= q < inf
/// and 1 <= n_max <= 14.
std::vector<GrowthRow> growth_report(int n_max, double q);

/// CSV with header n,weak_norm,sup_F,norm_G,ratio,ratio_over_sqrt_n.
std::string growth_csv(const std::vector<GrowthRow>& rows);

} // namespace twist
