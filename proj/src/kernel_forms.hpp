#pragma once

// Shared evaluation kernel for the quadrilinear forms
//   int F1(u,v) F2(x,v) F3(u,y) F4(x,y) K(u,x,v,y)
// restricted to one dyadic square, where K factors as
//   W(outer pair) * b(inner first) * b(inner second).
// The inner pair is contracted first, so when (F1,F2) and (F3,F4) are
// mirrored the two partial contractions are bit-identical and the result is
// a weighted sum of squares.

#include "twist/dyadic.hpp"

#include <array>
#include <span>
#include <vector>

namespace twist::detail {

/// Values of F on Q as an m x m row-major block (m = cells per side).
std::vector<double> block(const StepFunction2D& F, const DyadicSquare& Q);

using BlockRefs = std::array<const std::vector<double>*, 4>;

double four_form(const BlockRefs& f, int m, double h, Axis inner, std::span<const double> b,
                 std::span<const double> W);

// Local kernel profiles on an interval of m cells and length len.
std::vector<double> scaling_profile(int m, double len);
std::vector<double> wavelet_profile(int m, double len);
/// phi_I(s) phi_I(t): constant 1/len.
std::vector<double> full_weight(int m, double len);
/// sum over halves H of phi_H(s) phi_H(t).
std::vector<double> halves_weight(int m, double len);

} // namespace twist::detail
