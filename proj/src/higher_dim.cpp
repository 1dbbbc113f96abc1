#include "twist/higher_dim.hpp"

#include "kernel_forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twist {

StepFunction3D::StepFunction3D(int resolution, double fill) : resolution_(resolution)
{
    if (resolution < 0 || resolution > 8)
        throw ResolutionError("StepFunction3D: resolution must lie in 0..8");
    values_.assign(static_cast<std::size_t>(1) << (3 * resolution), fill);
}

StepFunction3D StepFunction3D::tensor(const StepFunction1D& a, const StepFunction1D& b,
                                      const StepFunction1D& c)
{
    if (a.resolution() != b.resolution() || a.resolution() != c.resolution())
        throw ResolutionError("StepFunction3D::tensor: resolution mismatch");
    return from_cells(a.resolution(), [&](int i, int j, int k) { return a[i] * b[j] * c[k]; });
}

bool StepFunction3D::is_nonnegative() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double StepFunction3D::max_abs() const
{
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

DyadicCube DyadicCube::make(int scale, int i1, int i2, int i3)
{
    return {{DyadicInterval::make(scale, i1), DyadicInterval::make(scale, i2),
             DyadicInterval::make(scale, i3)}};
}

std::array<DyadicCube, 8> DyadicCube::children() const
{
    std::array<DyadicCube, 8> out{};
    for (int c = 0; c < 8; ++c)
        for (int a = 0; a < 3; ++a) {
            const auto& I = side[static_cast<std::size_t>(a)];
            out[static_cast<std::size_t>(c)].side[static_cast<std::size_t>(a)] =
                ((c >> a) & 1) ? I.right_half() : I.left_half();
        }
    return out;
}

DyadicCube DyadicCube::parent() const
{
    return {{side[0].parent(), side[1].parent(), side[2].parent()}};
}

bool DyadicCube::contains(const DyadicCube& other) const
{
    return side[0].contains(other.side[0]) && side[1].contains(other.side[1])
           && side[2].contains(other.side[2]);
}

std::string to_string(const DyadicCube& Q)
{
    return to_string(Q.side[0]) + "x" + to_string(Q.side[1]) + "x" + to_string(Q.side[2]);
}

namespace {

enum class Kernel { full, wavelet, halves };

void require_octuple(const Octuple& F)
{
    for (const auto& f : F)
        if (f.resolution() != F[0].resolution())
            throw ResolutionError("octuple: resolution mismatch");
}

std::vector<double> block3(const StepFunction3D& F, const DyadicCube& Q)
{
    const int N = F.resolution();
    const int m = Q.side[0].cell_count(N);
    const int a0 = Q.side[0].first_cell(N), b0 = Q.side[1].first_cell(N),
              c0 = Q.side[2].first_cell(N);
    std::vector<double> out(static_cast<std::size_t>(m) * m * m);
    std::size_t t = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                out[t++] = F(a0 + a, b0 + b, c0 + c);
    return out;
}

// Integral of prod_j F_j against the product of per-axis pair kernels over Q.
// The axis `inner` must carry a separable kernel b(s) b(t); it is contracted
// first, so mirrored groups give bit-identical partial sums.
double form3(const Octuple& F, const DyadicCube& Q, const std::array<Kernel, 3>& kind, int inner)
{
    require_octuple(F);
    const int N = F[0].resolution();
    if (Q.scale() > N)
        throw ResolutionError("cube finer than the grid: " + to_string(Q));
    const int m = Q.side[0].cell_count(N);
    const double len = Q.side[0].length();
    const double h = F[0].cell_width();
    std::array<std::vector<double>, 8> blk;
    for (int j = 0; j < 8; ++j)
        blk[static_cast<std::size_t>(j)] = block3(F[static_cast<std::size_t>(j)], Q);

    const auto b = kind[static_cast<std::size_t>(inner)] == Kernel::wavelet
                       ? detail::wavelet_profile(m, len)
                       : detail::scaling_profile(m, len);
    std::array<int, 2> other{};
    {
        int t = 0;
        for (int a = 0; a < 3; ++a)
            if (a != inner)
                other[static_cast<std::size_t>(t++)] = a;
    }
    auto weight = [&](Kernel k) {
        return k == Kernel::halves ? detail::halves_weight(m, len) : detail::full_weight(m, len);
    };
    const auto Wp = weight(kind[static_cast<std::size_t>(other[0])]);
    const auto Wq = weight(kind[static_cast<std::size_t>(other[1])]);
    if (kind[static_cast<std::size_t>(other[0])] == Kernel::wavelet
        || kind[static_cast<std::size_t>(other[1])] == Kernel::wavelet)
        throw std::logic_error("form3: only the inner axis may carry the wavelet pair");

    const std::size_t mm = static_cast<std::size_t>(m);
    auto at = [&](const std::vector<double>& v, std::array<int, 3> x) {
        return v[(static_cast<std::size_t>(x[0]) * mm + static_cast<std::size_t>(x[1])) * mm
                 + static_cast<std::size_t>(x[2])];
    };
    // A[s](p0, p1, q0, q1) for the half s of the functions along `inner`.
    std::array<std::vector<double>, 2> A;
    for (int s = 0; s < 2; ++s) {
        auto& out = A[static_cast<std::size_t>(s)];
        out.assign(mm * mm * mm * mm, 0.0);
        std::size_t t = 0;
        for (int p0 = 0; p0 < m; ++p0)
            for (int p1 = 0; p1 < m; ++p1)
                for (int q0 = 0; q0 < m; ++q0)
                    for (int q1 = 0; q1 < m; ++q1) {
                        double acc = 0.0;
                        for (int z = 0; z < m; ++z) {
                            double prod = b[static_cast<std::size_t>(z)];
                            for (int pat = 0; pat < 4; ++pat) {
                                const int bp = pat & 1, bq = (pat >> 1) & 1;
                                const int j = (s << inner) | (bp << other[0]) | (bq << other[1]);
                                std::array<int, 3> x{};
                                x[static_cast<std::size_t>(inner)] = z;
                                x[static_cast<std::size_t>(other[0])] = bp ? p1 : p0;
                                x[static_cast<std::size_t>(other[1])] = bq ? q1 : q0;
                                prod *= at(blk[static_cast<std::size_t>(j)], x);
                            }
                            acc += prod;
                        }
                        out[t++] = acc;
                    }
    }
    double total = 0.0;
    std::size_t t = 0;
    for (int p0 = 0; p0 < m; ++p0)
        for (int p1 = 0; p1 < m; ++p1) {
            const double wp = Wp[static_cast<std::size_t>(p0) * mm + static_cast<std::size_t>(p1)];
            for (int q0 = 0; q0 < m; ++q0)
                for (int q1 = 0; q1 < m; ++q1, ++t)
                    total += wp * Wq[static_cast<std::size_t>(q0) * mm + static_cast<std::size_t>(q1)]
                             * A[0][t] * A[1][t];
        }
    return total * std::pow(h, 6);
}

std::array<Kernel, 3> theta_kernels(int i)
{
    std::array<Kernel, 3> k{};
    for (int a = 0; a < 3; ++a)
        k[static_cast<std::size_t>(a)] =
            a + 1 < i ? Kernel::full : (a + 1 == i ? Kernel::wavelet : Kernel::halves);
    return k;
}

double xi_single3(const Octuple& F, const DyadicCube& Q)
{
    return form3(F, Q, {Kernel::full, Kernel::full, Kernel::full}, 2);
}

} // namespace

ConvexTree3D full_tree3d(int N)
{
    if (N < 1)
        throw ResolutionError("full_tree3d needs N >= 1");
    std::vector<DyadicCube> all;
    for (int s = 0; s < N; ++s)
        for (int a = 0; a < (1 << s); ++a)
            for (int b = 0; b < (1 << s); ++b)
                for (int c = 0; c < (1 << s); ++c)
                    all.push_back(DyadicCube::make(s, a, b, c));
    return ConvexTree3D::make(all);
}

double box3_inner_product(const Octuple& F, const DyadicCube& Q)
{
    return xi_single3(F, Q) / Q.volume();
}

double theta3d(const ConvexTree3D& tree, int i, const Octuple& F)
{
    if (i < 1 || i > 3)
        throw std::invalid_argument("theta3d: i must be 1, 2 or 3");
    require_octuple(F);
    if (tree.deepest_scale() >= F[0].resolution())
        throw ResolutionError("theta3d: tree cubes must have scale < N");
    const auto k = theta_kernels(i);
    double s = 0.0;
    for (const auto& Q : tree.ordered())
        s += form3(F, Q, k, i - 1);
    return s;
}

double xi3d(std::span<const DyadicCube> cubes, const Octuple& F)
{
    double s = 0.0;
    for (const auto& Q : cubes)
        s += xi_single3(F, Q);
    return s;
}

double telescoping3d_residual(const ConvexTree3D& tree, const Octuple& F)
{
    const auto lv = tree.leaves(F[0].resolution());
    const std::array<DyadicCube, 1> top{tree.root()};
    return std::abs(theta3d(tree, 1, F) + theta3d(tree, 2, F) + theta3d(tree, 3, F) - xi3d(lv, F)
                    + xi3d(top, F));
}

double lambda_S(std::span<const int> S, std::span<const StepFunction3D> functions)
{
    if (S.empty() || S.size() != functions.size())
        throw std::invalid_argument("lambda_S: need one function per index of a nonempty S");
    const int N = functions[0].resolution();
    Octuple F;
    F.fill(StepFunction3D(N, 1.0));
    std::array<bool, 8> used{};
    for (std::size_t t = 0; t < S.size(); ++t) {
        const int j = S[t];
        if (j < 0 || j > 7 || used[static_cast<std::size_t>(j)])
            throw std::invalid_argument("lambda_S: S must hold distinct indices in 0..7");
        used[static_cast<std::size_t>(j)] = true;
        F[static_cast<std::size_t>(j)] = functions[t];
    }
    return theta3d(full_tree3d(N), 3, F);
}

std::pair<double, double> box3_l4_check(const StepFunction3D& F, const DyadicCube& Q)
{
    Octuple all;
    all.fill(F);
    const double v = box3_inner_product(all, Q);
    const int N = F.resolution();
    double s = 0.0;
    int count = 0;
    const int m = Q.side[0].cell_count(N);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                const double x = F(Q.side[0].first_cell(N) + a, Q.side[1].first_cell(N) + b,
                                   Q.side[2].first_cell(N) + c);
                s += x * x * x * x;
                ++count;
            }
    const double rhs = std::sqrt(std::sqrt(s / count));
    if (v < 0.0) {
        if (v < -1e-12 * std::pow(rhs, 8))
            throw ConsistencyError("box3: negative diagonal value on " + to_string(Q));
        return {0.0, rhs};
    }
    return {std::pow(v, 0.125), rhs};
}

Octuple mirror(const Octuple& F, int i, int s)
{
    if (i < 1 || i > 3 || (s != 0 && s != 1))
        throw std::invalid_argument("mirror: need i in 1..3 and s in {0,1}");
    const int bit = 1 << (i - 1);
    Octuple out;
    for (int j = 0; j < 8; ++j)
        out[static_cast<std::size_t>(j)] = F[static_cast<std::size_t>(s ? (j | bit) : (j & ~bit))];
    return out;
}

std::pair<double, double> cauchy_schwarz_step(const ConvexTree3D& tree, int i, const Octuple& F)
{
    const double lhs = std::abs(theta3d(tree, i, F));
    const double a = theta3d(tree, i, mirror(F, i, 0));
    const double b = theta3d(tree, i, mirror(F, i, 1));
    return {lhs, std::sqrt(std::max(a, 0.0) * std::max(b, 0.0))};
}

std::vector<ArrowCheck> reduction_chain(const ConvexTree3D& tree, const Octuple& F)
{
    std::vector<ArrowCheck> out;
    auto add = [&](std::string name, int i, const Octuple& G) {
        const auto [l, r] = cauchy_schwarz_step(tree, i, G);
        out.push_back({std::move(name), l, r});
    };
    add("theta3(F0..F7)", 3, F);
    const auto G = mirror(F, 3, 0);
    add("theta1(F0,F1,F2,F3,F0,F1,F2,F3)", 1, G);
    const auto H = mirror(G, 1, 0);
    add("theta2(F0,F0,F2,F2,F0,F0,F2,F2)", 2, H);
    return out;
}

StepFunction3D random_function3d(int N, Rng& rng, bool is_signed)
{
    std::uniform_real_distribution<double> d(is_signed ? -1.0 : 0.0, 1.0);
    return StepFunction3D::from_cells(N, [&](int, int, int) { return d(rng); });
}

Octuple random_octuple(int N, Rng& rng, bool is_signed)
{
    Octuple F;
    for (auto& f : F)
        f = random_function3d(N, rng, is_signed);
    return F;
}

ConvexTree3D random_convex_tree3d(int max_scale, Rng& rng)
{
    if (max_scale < 1)
        throw ResolutionError("random_convex_tree3d needs max_scale >= 1");
    std::uniform_int_distribution<int> pick(0, max_scale - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int s0 = pick(rng);
    std::uniform_int_distribution<int> idx(0, (1 << s0) - 1);
    const auto root = DyadicCube::make(s0, idx(rng), idx(rng), idx(rng));
    const double keep = 0.2 + 0.6 * u(rng);
    std::vector<DyadicCube> cells{root}, frontier{root};
    while (!frontier.empty()) {
        std::vector<DyadicCube> next;
        for (const auto& Q : frontier) {
            if (Q.scale() + 1 >= max_scale)
                continue;
            for (const auto& c : Q.children())
                if (u(rng) < keep) {
                    cells.push_back(c);
                    next.push_back(c);
                }
        }
        frontier = std::move(next);
    }
    return ConvexTree3D::make(cells);
}

} // namespace twist
