#pragma once

#include "twist/dyadic.hpp"
#include "twist/trees.hpp"

#include <random>
#include <vector>

namespace twist {

using Rng = std::mt19937_64;

/// Cell values uniform in [0,1).
StepFunction2D random_uniform(int N, Rng& rng);
/// Cell values uniform in [-1,1).
StepFunction2D random_signed(int N, Rng& rng);
/// a(x) b(y) with a, b uniform in [0,1) (or [-1,1) when signed).
StepFunction2D random_rank_one(int N, Rng& rng, bool is_signed = false);
/// Sum of a few random multiples of indicators of random dyadic squares,
/// plus a small uniform floor. Its box norms vary across scales.
StepFunction2D random_multiscale(int N, Rng& rng);
/// One of uniform, multiscale, rank-one or sparse, picked at random.
StepFunction2D random_nonnegative(int N, Rng& rng);

/// Convex tree grown downward from a random root of scale < max_scale;
/// every square has scale < max_scale.
ConvexTree random_convex_tree(int max_scale, Rng& rng);

/// F / ||F||_p (F unchanged if its norm is 0).
StepFunction2D normalized(const StepFunction2D& F, double p);

} // namespace twist
