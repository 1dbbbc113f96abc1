#pragma once

#include "twist/dyadic.hpp"
#include "twist/random.hpp"

#include <cstdint>
#include <vector>

namespace twist {

/// Calderon-Zygmund decomposition of each fiber y -> G(x, y) at height lambda.
struct FiberCZ {
    double lambda = 0.0;
    /// bad[i]: maximal dyadic J with fiber average of |G(x_i, .)| over J > lambda,
    /// in increasing order. A fiber whose full average exceeds lambda has the
    /// single bad interval [0,1).
    std::vector<std::vector<DyadicInterval>> bad;
    /// 1 on the exceptional set E (the union of {x} x J), 0 elsewhere.
    StepFunction2D exceptional;
    /// Fiber average on each bad J, G elsewhere.
    StepFunction2D good;

    double exceptional_measure() const { return integral(exceptional); }
    bool in_exceptional(int i, int j) const { return exceptional(i, j) != 0.0; }
};

/// Needs G nonnegative and lambda > 0 (std::invalid_argument otherwise).
FiberCZ fiber_cz(const StepFunction2D& G, double lambda);

/// max over cells outside E of |T_d(F, G - G_good)|.
double vanishing_residual(const StepFunction2D& F, const StepFunction2D& G, double lambda);
double vanishing_residual(const StepFunction2D& F, const StepFunction2D& G, const FiberCZ& cz);

struct WeakEndpointReport {
    double p = 0.0;
    int N = 0;
    int trials = 0;
    /// max over trials of |{|T_d(F,G)| > 1}| with ||F||_p = ||G||_1 = 1.
    double max_superlevel = 0.0;
    /// max over trials of |E| for the decomposition at height 1.
    double max_exceptional = 0.0;
    /// max over trials of |{|T_d(F,G_good)| > 1}|.
    double max_good_superlevel = 0.0;
    /// {|T_d(F,G)| > 1} lies in E union {|T_d(F,G_good)| > 1} in every trial.
    bool inclusion_ok = true;
    double max_vanishing_residual = 0.0;
};

/// Random normalized pairs at resolution N; needs 2 < p < inf.
WeakEndpointReport weak_endpoint_experiment(double p, int trials, int N, std::uint64_t seed);

} // namespace twist
