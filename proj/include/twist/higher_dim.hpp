#pragma once

#include "twist/dyadic.hpp"
#include "twist/random.hpp"
#include "twist/trees.hpp"

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twist {

/// Piecewise constant function on [0,1)^3 with 2^N cells per side; cell
/// (i1, i2, i3) stored at (i1 * n + i2) * n + i3.
class StepFunction3D {
public:
    StepFunction3D() = default;
    explicit StepFunction3D(int resolution, double fill = 0.0);

    template <class Fn>
    static StepFunction3D from_cells(int resolution, Fn&& fn)
    {
        StepFunction3D f(resolution);
        const int n = f.side();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    f(a, b, c) = fn(a, b, c);
        return f;
    }

    static StepFunction3D tensor(const StepFunction1D& a, const StepFunction1D& b,
                                 const StepFunction1D& c);

    int resolution() const { return resolution_; }
    int side() const { return 1 << resolution_; }
    double cell_width() const { return std::ldexp(1.0, -resolution_); }
    double cell_volume() const { return std::ldexp(1.0, -3 * resolution_); }

    double operator()(int a, int b, int c) const { return values_[index(a, b, c)]; }
    double& operator()(int a, int b, int c) { return values_[index(a, b, c)]; }
    std::span<const double> values() const { return values_; }

    bool is_nonnegative() const;
    double max_abs() const;

private:
    std::size_t index(int a, int b, int c) const
    {
        const auto n = static_cast<std::size_t>(side());
        return (static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n
               + static_cast<std::size_t>(c);
    }

    int resolution_ = 0;
    std::vector<double> values_ = {0.0};
};

struct DyadicCube {
    std::array<DyadicInterval, 3> side{};

    static DyadicCube make(int scale, int i1, int i2, int i3);
    static DyadicCube unit() { return {}; }

    int scale() const { return side[0].scale; }
    double volume() const { return std::ldexp(1.0, -3 * scale()); }
    /// Child c takes the (c >> a) & 1 half along axis a.
    std::array<DyadicCube, 8> children() const;
    DyadicCube parent() const;
    bool contains(const DyadicCube& other) const;

    friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
    friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

std::string to_string(const DyadicCube& Q);

} // namespace twist

template <>
struct std::hash<twist::DyadicCube> {
    std::size_t operator()(const twist::DyadicCube& Q) const noexcept
    {
        std::size_t h = static_cast<std::size_t>(Q.scale());
        for (const auto& I : Q.side)
            h = h * 1000003u ^ static_cast<std::size_t>(I.index);
        return h;
    }
};

namespace twist {

using ConvexTree3D = BasicConvexTree<DyadicCube>;
using Octuple = std::array<StepFunction3D, 8>;

/// Every cube of scale 0..N-1.
ConvexTree3D full_tree3d(int N);

/// Mean over (x1^0, x1^1, x2^0, x2^1, x3^0, x3^1) in Q's sides of
/// prod_j F_j(x1^{j1}, x2^{j2}, x3^{j3}), j = j1 + 2 j2 + 4 j3.
double box3_inner_product(const Octuple& F, const DyadicCube& Q);

/// Theta^(i) over a tree. Per axis the kernel is psi psi on axis i, phi_I phi_I
/// on the axes before it and the sum over halves H of phi_H phi_H on the axes
/// after it. The three forms telescope to Xi_leaves - Xi_root.
double theta3d(const ConvexTree3D& tree, int i, const Octuple& F);

/// sum over cubes of |Q| [F]_Q.
double xi3d(std::span<const DyadicCube> cubes, const Octuple& F);

/// |Theta1 + Theta2 + Theta3 - Xi_leaves + Xi_root|.
double telescoping3d_residual(const ConvexTree3D& tree, const Octuple& F);

/// Theta^(3) over all cubes of scale 0..N-1, with F_j = 1 for j not in S.
/// `functions` lists the F_j for j in S, in the order of S.
double lambda_S(std::span<const int> S, std::span<const StepFunction3D> functions);

/// (box norm, (|Q|^-1 int_Q |F|^4)^(1/4)); the first never exceeds the second.
std::pair<double, double> box3_l4_check(const StepFunction3D& F, const DyadicCube& Q);

/// F'_j = F_{j with bit (i - 1) set to s}.
Octuple mirror(const Octuple& F, int i, int s);

/// Cauchy-Schwarz step along the psi axis of Theta^(i):
/// (|Theta^(i)(F)|, sqrt(Theta^(i)(mirror(F,i,0)) Theta^(i)(mirror(F,i,1)))).
std::pair<double, double> cauchy_schwarz_step(const ConvexTree3D& tree, int i, const Octuple& F);

struct ArrowCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// The three solid arrows of the reduction chain, from the general octuple
/// down to the diagonal forms.
std::vector<ArrowCheck> reduction_chain(const ConvexTree3D& tree, const Octuple& F);

StepFunction3D random_function3d(int N, Rng& rng, bool is_signed = false);
Octuple random_octuple(int N, Rng& rng, bool is_signed = false);
ConvexTree3D random_convex_tree3d(int max_scale, Rng& rng);

} // namespace twist
