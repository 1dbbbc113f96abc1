#include "twist/continuous.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twist {

struct PeriodicGrid::Plans {
    int n = 0;
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Plans(int size) : n(size)
    {
        buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Plans()
    {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

PeriodicGrid::PeriodicGrid(int L) : L_(L)
{
    if (L < 1 || L > 14)
        throw ResolutionError("PeriodicGrid: L must lie in 1..14");
    plans_ = std::make_shared<Plans>(1 << L);
}

Symbol PeriodicGrid::radial_symbol(const std::function<double(double)>& profile) const
{
    Symbol s(static_cast<std::size_t>(size()));
    for (int m = 0; m < size(); ++m)
        s[static_cast<std::size_t>(m)] = profile(std::abs(static_cast<double>(frequency(m))));
    return s;
}

void PeriodicGrid::apply(std::span<double> line, const Symbol& symbol) const
{
    const int n = size();
    if (line.size() != static_cast<std::size_t>(n) || symbol.size() != line.size())
        throw std::invalid_argument("PeriodicGrid::apply: size mismatch");
    auto* b = plans_->buf;
    for (int m = 0; m < n; ++m) {
        b[m][0] = line[static_cast<std::size_t>(m)];
        b[m][1] = 0.0;
    }
    fftw_execute(plans_->fwd);
    for (int m = 0; m < n; ++m) {
        const double s = symbol[static_cast<std::size_t>(m)];
        b[m][0] *= s;
        b[m][1] *= s;
    }
    fftw_execute(plans_->bwd);
    const double inv = 1.0 / n;
    for (int m = 0; m < n; ++m)
        line[static_cast<std::size_t>(m)] = b[m][0] * inv;
}

std::vector<double> PeriodicGrid::round_trip(std::span<const double> line) const
{
    std::vector<double> out(line.begin(), line.end());
    apply(out, Symbol(static_cast<std::size_t>(size()), 1.0));
    return out;
}

namespace {

void require_grid(const PeriodicGrid& grid, int resolution)
{
    if (grid.L() != resolution)
        throw std::invalid_argument("multiplier_apply: sample grid does not match the periodic grid");
}

} // namespace

StepFunction1D multiplier_apply(const PeriodicGrid& grid, const StepFunction1D& f,
                                const Symbol& symbol)
{
    require_grid(grid, f.resolution());
    std::vector<double> v(f.values().begin(), f.values().end());
    grid.apply(v, symbol);
    return StepFunction1D(f.resolution(), std::move(v));
}

StepFunction2D multiplier_apply(const PeriodicGrid& grid, const StepFunction2D& F,
                                const Symbol& symbol, Axis axis)
{
    require_grid(grid, F.resolution());
    const int n = F.side();
    StepFunction2D out = F;
    std::vector<double> line(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            line[static_cast<std::size_t>(b)] = axis == Axis::x ? F(b, a) : F(a, b);
        grid.apply(line, symbol);
        for (int b = 0; b < n; ++b)
            (axis == Axis::x ? out(b, a) : out(a, b)) = line[static_cast<std::size_t>(b)];
    }
    return out;
}

double plateau_profile(double t)
{
    constexpr double lo = -0.6, hi = -0.4;
    if (t <= std::exp2(lo))
        return 1.0;
    if (t >= std::exp2(hi))
        return 0.0;
    const double u = (std::log2(t) - lo) / (hi - lo);
    const double smooth = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    return std::ldexp(std::round(std::ldexp(1.0 - smooth, 40)), -40);
}

double bump_profile(double t)
{
    if (!(t > 0.5) || !(t < 2.0))
        return 0.0;
    const double s = std::log2(t);
    const double w = 1.0 - s * s;
    return w * w * w;
}

double bump_log_derivative(double t)
{
    if (!(t > 0.5) || !(t < 2.0))
        return 0.0;
    const double s = std::log2(t);
    const double w = 1.0 - s * s;
    return -6.0 * s * w * w / std::numbers::ln2;
}

MollifierFamily::MollifierFamily(int L, int kmin, int kmax) : grid_(L), kmin_(kmin), kmax_(kmax) {}

Symbol MollifierFamily::phi(int tenths) const
{
    const double scale = std::exp2(-tenths / 10.0);
    return grid_.radial_symbol([scale](double xi) { return plateau_profile(scale * xi); });
}

Symbol MollifierFamily::vartheta(int tenths) const
{
    Symbol a = phi(tenths + 10);
    const Symbol b = phi(tenths);
    for (std::size_t m = 0; m < a.size(); ++m)
        a[m] -= b[m];
    return a;
}

Symbol MollifierFamily::rho(int tenths) const
{
    Symbol a = phi(tenths + 6);
    const Symbol b = phi(tenths + 5);
    for (std::size_t m = 0; m < a.size(); ++m)
        a[m] -= b[m];
    return a;
}

Symbol MollifierFamily::psi_k(int k) const
{
    const double scale = std::ldexp(1.0, -k);
    return grid_.radial_symbol([scale](double xi) { return bump_profile(scale * xi); });
}

Symbol MollifierFamily::Psi(int l) const
{
    if (l < 0 || l > 9)
        throw std::invalid_argument("Psi: l must lie in 0..9");
    Symbol s(static_cast<std::size_t>(grid_.size()), 0.0);
    for (int k = kmin_; k <= kmax_; ++k)
        if (((k % 10) + 10) % 10 == l) {
            const auto p = psi_k(k);
            for (std::size_t m = 0; m < s.size(); ++m)
                s[m] += p[m];
        }
    return s;
}

MollifierFamily build_mollifiers(int L, int kmin, int kmax)
{
    if (kmin < 0 || kmin > kmax || kmax > L - 3)
        throw std::invalid_argument("build_mollifiers: need 0 <= kmin <= kmax <= L - 3");
    return MollifierFamily(L, kmin, kmax);
}

SupportIdentityReport check_support_identities(const MollifierFamily& fam)
{
    SupportIdentityReport rep;
    const int L = fam.grid().L();
    const std::size_t n = static_cast<std::size_t>(fam.grid().size());
    auto record = [&](int which, double got, double want) {
        ++rep.checked[which];
        const double d = std::abs(got - want);
        rep.max_deviation[which] = std::max(rep.max_deviation[which], d);
        if (got != want)
            ++rep.violations[which];
    };
    for (int t = -20; t <= 10 * L + 20; ++t) {
        const auto th = fam.vartheta(t);
        const auto r = fam.rho(t);
        for (std::size_t m = 0; m < n; ++m)
            if (r[m] != 0.0)
                record(0, th[m] * r[m], r[m]);
    }
    auto rho_sum = [&](int k) {
        Symbol s(n, 0.0);
        for (int i = -20; i <= 20; ++i) {
            const auto r = fam.rho(10 * k + i);
            for (std::size_t m = 0; m < n; ++m)
                s[m] += r[m];
        }
        return s;
    };
    for (int k = -10; k <= L + 10; ++k) {
        const auto s = rho_sum(k);
        for (int kp = -10; kp <= L + 10; ++kp) {
            const int gap = std::abs(kp - k);
            if (gap != 0 && gap < 10)
                continue;
            const auto p = fam.psi_k(kp);
            for (std::size_t m = 0; m < n; ++m)
                if (p[m] != 0.0)
                    record(gap == 0 ? 1 : 2, s[m], gap == 0 ? 1.0 : 0.0);
        }
    }
    return rep;
}

int shift_tenths(double b)
{
    const double t = std::round(b * 10.0);
    if (std::abs(b * 10.0 - t) > 1e-9 || t < -20 || t > 20)
        throw std::invalid_argument("shift must be a multiple of 0.1 in [-2, 2]");
    return static_cast<int>(t);
}

namespace {

void require_family(const StepFunction2D& F, const MollifierFamily& fam)
{
    if (F.resolution() != fam.grid().L())
        throw std::invalid_argument("sample grid does not match the mollifier family");
}

void check_l(int l)
{
    if (l < 0 || l > 9)
        throw std::invalid_argument("l must lie in 0..9");
}

bool in_class(int k, int l) { return ((k % 10) + 10) % 10 == l; }

void add_product(StepFunction2D& out, const StepFunction2D& a, const StepFunction2D& b)
{
    for (int i = 0; i < out.side(); ++i)
        for (int j = 0; j < out.side(); ++j)
            out(i, j) += a(i, j) * b(i, j);
}

StepFunction2D sparse_with(const std::vector<StepFunction2D>& PF, const StepFunction2D& G, int bt,
                           int l, const MollifierFamily& fam)
{
    StepFunction2D out(G.resolution());
    for (int k = fam.kmin(); k <= fam.kmax(); ++k)
        if (in_class(k, l))
            add_product(out, PF[static_cast<std::size_t>(k - fam.kmin())],
                        multiplier_apply(fam.grid(), G, fam.rho(10 * k + bt), Axis::y));
    return out;
}

std::vector<StepFunction2D> phi_images(const StepFunction2D& F, const MollifierFamily& fam)
{
    std::vector<StepFunction2D> PF;
    for (int k = fam.kmin(); k <= fam.kmax(); ++k)
        PF.push_back(multiplier_apply(fam.grid(), F, fam.phi_k(k), Axis::x));
    return PF;
}

} // namespace

StepFunction2D t_c(const StepFunction2D& F, const StepFunction2D& G, const MollifierFamily& fam)
{
    require_family(F, fam);
    require_same_resolution(F, G);
    StepFunction2D out(F.resolution());
    for (int k = fam.kmin(); k <= fam.kmax(); ++k)
        add_product(out, multiplier_apply(fam.grid(), F, fam.phi_k(k), Axis::x),
                    multiplier_apply(fam.grid(), G, fam.psi_k(k), Axis::y));
    return out;
}

StepFunction2D t_phi_theta_b(const StepFunction2D& F, const StepFunction2D& G, double b,
                             const MollifierFamily& fam)
{
    require_family(F, fam);
    require_same_resolution(F, G);
    const int bt = shift_tenths(b);
    StepFunction2D out(F.resolution());
    for (int k = fam.kmin(); k <= fam.kmax(); ++k)
        add_product(out, multiplier_apply(fam.grid(), F, fam.phi_k(k), Axis::x),
                    multiplier_apply(fam.grid(), G, fam.vartheta(10 * k + bt), Axis::y));
    return out;
}

StepFunction2D sparse_paraproduct(const StepFunction2D& F, const StepFunction2D& G, double b,
                                  int l, const MollifierFamily& fam)
{
    require_family(F, fam);
    require_same_resolution(F, G);
    check_l(l);
    return sparse_with(phi_images(F, fam), G, shift_tenths(b), l, fam);
}

StepFunction2D g_tilde(const StepFunction2D& G, double b, int l, const MollifierFamily& fam)
{
    require_family(G, fam);
    check_l(l);
    const int bt = shift_tenths(b);
    StepFunction2D out(G.resolution());
    for (int k = fam.kmin(); k <= fam.kmax(); ++k)
        if (in_class(k, l))
            out += multiplier_apply(fam.grid(), G, fam.rho(10 * k + bt), Axis::y);
    return out;
}

StepFunction2D t_aux(const StepFunction2D& F, const StepFunction2D& G, double b,
                     const MollifierFamily& fam)
{
    require_family(F, fam);
    require_same_resolution(F, G);
    const int bt = shift_tenths(b);
    StepFunction2D out(F.resolution());
    for (int k = fam.kmin(); k <= fam.kmax(); ++k)
        add_product(out, martingale_average(F, Axis::x, k),
                    multiplier_apply(fam.grid(), G, fam.vartheta(10 * k + bt), Axis::y));
    return out;
}

double decomposition_identity_residual(const StepFunction2D& F, const StepFunction2D& G,
                                       const MollifierFamily& fam)
{
    const auto lhs = t_c(F, G, fam);
    const auto PF = phi_images(F, fam);
    StepFunction2D rhs(F.resolution());
    for (int l = 0; l <= 9; ++l) {
        bool any = false;
        for (int k = fam.kmin(); k <= fam.kmax(); ++k)
            any = any || in_class(k, l);
        if (!any)
            continue;
        const auto PG = multiplier_apply(fam.grid(), G, fam.Psi(l), Axis::y);
        for (int i = -20; i <= 20; ++i)
            rhs += sparse_with(PF, PG, i, l, fam);
    }
    return (lhs - rhs).max_abs();
}

namespace {

void require_profile(const std::function<double(double)>& profile)
{
    if (!(std::abs(profile(0.0) - 1.0) <= 1e-12))
        throw std::invalid_argument("jsw_square_function: the averaging kernel must have integral 1");
}

} // namespace

StepFunction1D jsw_square_function(const StepFunction1D& f, int kmin, int kmax,
                                   const std::function<double(double)>& profile)
{
    require_profile(profile);
    const int L = f.resolution();
    if (kmin < 0 || kmin > kmax || kmax > L)
        throw std::invalid_argument("jsw_square_function: need 0 <= kmin <= kmax <= L");
    const PeriodicGrid grid(L);
    std::vector<double> acc(static_cast<std::size_t>(f.size()), 0.0);
    for (int k = kmin; k <= kmax; ++k) {
        const double scale = std::ldexp(1.0, -k);
        const auto P = multiplier_apply(
            grid, f, grid.radial_symbol([&](double xi) { return profile(scale * xi); }));
        const auto E = martingale_average(f, k);
        for (int i = 0; i < f.size(); ++i) {
            const double d = P[i] - E[i];
            acc[static_cast<std::size_t>(i)] += d * d;
        }
    }
    for (double& v : acc)
        v = std::sqrt(v);
    return StepFunction1D(L, std::move(acc));
}

StepFunction2D jsw_square_function(const StepFunction2D& F, Axis axis, int kmin, int kmax,
                                   const std::function<double(double)>& profile)
{
    require_profile(profile);
    const int L = F.resolution();
    if (kmin < 0 || kmin > kmax || kmax > L)
        throw std::invalid_argument("jsw_square_function: need 0 <= kmin <= kmax <= L");
    const PeriodicGrid grid(L);
    StepFunction2D acc(L);
    for (int k = kmin; k <= kmax; ++k) {
        const double scale = std::ldexp(1.0, -k);
        const auto P = multiplier_apply(
            grid, F, grid.radial_symbol([&](double xi) { return profile(scale * xi); }), axis);
        const auto d = P - martingale_average(F, axis, k);
        acc += pointwise_product(d, d);
    }
    return StepFunction2D::from_cells(L, [&](int i, int j) { return std::sqrt(acc(i, j)); });
}

StepFunction2D square_function(const StepFunction2D& F, Axis axis, const std::vector<Symbol>& symbols,
                               const PeriodicGrid& grid)
{
    StepFunction2D acc(F.resolution());
    for (const auto& s : symbols) {
        const auto P = multiplier_apply(grid, F, s, axis);
        acc += pointwise_product(P, P);
    }
    return StepFunction2D::from_cells(F.resolution(), [&](int i, int j) { return std::sqrt(acc(i, j)); });
}

double aux_difference_excess(const StepFunction2D& F, const StepFunction2D& G, double b,
                             const MollifierFamily& fam)
{
    const int bt = shift_tenths(b);
    const auto diff = t_phi_theta_b(F, G, b, fam) - t_aux(F, G, b, fam);
    const auto S1 = jsw_square_function(F, Axis::x, fam.kmin(), fam.kmax());
    std::vector<Symbol> th;
    for (int k = fam.kmin(); k <= fam.kmax(); ++k)
        th.push_back(fam.vartheta(10 * k + bt));
    const auto S2 = square_function(G, Axis::y, th, fam.grid());
    double worst = -inf;
    for (int i = 0; i < F.side(); ++i)
        for (int j = 0; j < F.side(); ++j)
            worst = std::max(worst, std::abs(diff(i, j)) - S1(i, j) * S2(i, j));
    return worst;
}

double mean_zero_branch_excess(const StepFunction2D& F, const StepFunction2D& G,
                               const MollifierFamily& fam)
{
    require_family(F, fam);
    std::vector<Symbol> a, c;
    StepFunction2D T(F.resolution());
    for (int k = fam.kmin(); k <= fam.kmax(); ++k) {
        a.push_back(fam.vartheta(10 * k));
        c.push_back(fam.psi_k(k));
        add_product(T, multiplier_apply(fam.grid(), F, a.back(), Axis::x),
                    multiplier_apply(fam.grid(), G, c.back(), Axis::y));
    }
    const auto S1 = square_function(F, Axis::x, a, fam.grid());
    const auto S2 = square_function(G, Axis::y, c, fam.grid());
    double worst = -inf;
    for (int i = 0; i < F.side(); ++i)
        for (int j = 0; j < F.side(); ++j)
            worst = std::max(worst, std::abs(T(i, j)) - S1(i, j) * S2(i, j));
    return worst;
}

PsiBounds psi_symbol_bounds(const MollifierFamily& fam)
{
    PsiBounds out;
    const auto& grid = fam.grid();
    for (int l = 0; l <= 9; ++l) {
        const auto P = fam.Psi(l);
        for (int m = 0; m < grid.size(); ++m) {
            out.max_abs = std::max(out.max_abs, std::abs(P[static_cast<std::size_t>(m)]));
            const double xi = std::abs(static_cast<double>(grid.frequency(m)));
            double d = 0.0;
            for (int k = fam.kmin(); k <= fam.kmax(); ++k)
                if (in_class(k, l))
                    d += bump_log_derivative(std::ldexp(xi, -k));
            out.max_log_derivative = std::max(out.max_log_derivative, std::abs(d));
        }
    }
    return out;
}

StepFunction1D random_band_limited_1d(int L, int max_freq, int modes, Rng& rng)
{
    std::uniform_int_distribution<int> freq(0, max_freq);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * std::numbers::pi);
    StepFunction1D f(L);
    const double h = f.cell_width();
    for (int t = 0; t < modes; ++t) {
        const int a = freq(rng);
        const double c = amp(rng), th = phase(rng);
        for (int i = 0; i < f.size(); ++i)
            f[i] += c * std::cos(2.0 * std::numbers::pi * a * i * h + th);
    }
    return f;
}

StepFunction2D random_band_limited(int L, int max_freq, int modes, Rng& rng)
{
    std::uniform_int_distribution<int> freq(-max_freq, max_freq);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * std::numbers::pi);
    StepFunction2D F(L);
    const double h = F.cell_width();
    for (int t = 0; t < modes; ++t) {
        const int a = freq(rng), b = freq(rng);
        const double c = amp(rng), th = phase(rng);
        for (int i = 0; i < F.side(); ++i)
            for (int j = 0; j < F.side(); ++j)
                F(i, j) += c * std::cos(2.0 * std::numbers::pi * (a * i + b * j) * h + th);
    }
    return F;
}

} // namespace twist
