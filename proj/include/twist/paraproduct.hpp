#pragma once

#include "twist/dyadic.hpp"

#include <span>

namespace twist {

/// Dyadic twisted paraproduct on the unit square:
///   T_d(F,G) = sum_{k=0}^{N-1} (E_k^(1) F) (Delta_k^(2) G).
/// Coarser scales do not exist on [0,1)^2 and finer ones vanish at resolution N.
StepFunction2D t_d(const StepFunction2D& F, const StepFunction2D& G);

/// int T_d(F,G) H.
double lambda_d(const StepFunction2D& F, const StepFunction2D& G, const StepFunction2D& H);

/// sum_k (E_{k+k0}^(1) F) (Delta_k^(2) G) over k in 0..N-1. Terms whose
/// average index k+k0 falls outside 0..N are dropped.
StepFunction2D t_d_shifted(const StepFunction2D& F, const StepFunction2D& G, int k0);

/// sum_k c_k (E_k^(1) F) (Delta_k^(2) G); needs N coefficients with |c_k| <= 1.
StepFunction2D t_d_coeff(const StepFunction2D& F, const StepFunction2D& G,
                         std::span<const double> c);

/// sum_{k=0}^{N-1} (Delta_k^(1) F) (E_{k+1}^(2) G), the companion sum of the
/// product identity.
StepFunction2D companion_sum(const StepFunction2D& F, const StepFunction2D& G);

/// max |T_d(F,G) + companion_sum(F,G) + (E_0^(1) F)(E_0^(2) G) - F G|.
double product_identity_residual(const StepFunction2D& F, const StepFunction2D& G);

/// Non-isotropic dilation F(x,y) -> F(2^-shift x, y) restricted to [0,1)^2.
/// shift > 0 stretches (needs F supported in x < 2^-shift and x-cells that
/// stay on the grid), shift < 0 compresses (needs F constant on x-blocks of
/// 2^|shift| cells). Violations raise std::invalid_argument.
StepFunction2D dilate_x(const StepFunction2D& F, int shift);

} // namespace twist
