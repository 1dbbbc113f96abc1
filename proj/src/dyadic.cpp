#include "twist/dyadic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace twist {

namespace {

void require_scale(int scale, int N, const char* what)
{
    if (scale < 0 || scale > N)
        throw ResolutionError(std::string(what) + ": scale " + std::to_string(scale)
                              + " outside 0.." + std::to_string(N));
}

void require_resolution(int N)
{
    if (N < 0 || N > 14)
        throw ResolutionError("resolution " + std::to_string(N) + " outside 0..14");
}

} // namespace

DyadicInterval DyadicInterval::make(int scale, int index)
{
    if (scale < 0 || scale > 30)
        throw std::invalid_argument("dyadic interval scale out of range");
    if (index < 0 || index >= (1 << scale))
        throw std::invalid_argument("dyadic interval index outside [0, 2^scale)");
    return {scale, index};
}

DyadicInterval DyadicInterval::parent() const
{
    if (scale == 0)
        throw std::logic_error("[0,1) has no parent inside the unit interval");
    return {scale - 1, index / 2};
}

bool DyadicInterval::contains(const DyadicInterval& other) const
{
    if (other.scale < scale)
        return false;
    return (other.index >> (other.scale - scale)) == index;
}

DyadicSquare DyadicSquare::make(int scale, int ix, int iy)
{
    return {DyadicInterval::make(scale, ix), DyadicInterval::make(scale, iy)};
}

std::array<DyadicSquare, 4> DyadicSquare::children() const
{
    return {DyadicSquare{x_side.left_half(), y_side.left_half()},
            DyadicSquare{x_side.left_half(), y_side.right_half()},
            DyadicSquare{x_side.right_half(), y_side.left_half()},
            DyadicSquare{x_side.right_half(), y_side.right_half()}};
}

DyadicSquare DyadicSquare::parent() const { return {x_side.parent(), y_side.parent()}; }

bool DyadicSquare::contains(const DyadicSquare& other) const
{
    return x_side.contains(other.x_side) && y_side.contains(other.y_side);
}

std::string to_string(const DyadicInterval& I)
{
    std::ostringstream os;
    os << "[" << I.index << "/2^" << I.scale << ", " << (I.index + 1) << "/2^" << I.scale << ")";
    return os.str();
}

std::string to_string(const DyadicSquare& Q)
{
    return to_string(Q.x_side) + "x" + to_string(Q.y_side);
}

// StepFunction1D -------------------------------------------------------------

StepFunction1D::StepFunction1D(int resolution, double fill)
    : resolution_(resolution)
{
    require_resolution(resolution);
    values_.assign(std::size_t{1} << resolution, fill);
}

StepFunction1D::StepFunction1D(int resolution, std::vector<double> values)
    : resolution_(resolution), values_(std::move(values))
{
    require_resolution(resolution);
    if (values_.size() != (std::size_t{1} << resolution))
        throw std::invalid_argument("StepFunction1D: expected 2^N values");
}

// StepFunction2D -------------------------------------------------------------

StepFunction2D::StepFunction2D(int resolution, double fill)
    : resolution_(resolution)
{
    require_resolution(resolution);
    values_.assign(std::size_t{1} << (2 * resolution), fill);
}

StepFunction2D::StepFunction2D(int resolution, std::vector<double> values)
    : resolution_(resolution), values_(std::move(values))
{
    require_resolution(resolution);
    if (values_.size() != (std::size_t{1} << (2 * resolution)))
        throw std::invalid_argument("StepFunction2D: expected 4^N values");
}

StepFunction2D StepFunction2D::tensor(const StepFunction1D& a, const StepFunction1D& b)
{
    if (a.resolution() != b.resolution())
        throw std::invalid_argument("tensor: factors must share a resolution");
    return from_cells(a.resolution(), [&](int i, int j) { return a[i] * b[j]; });
}

StepFunction2D StepFunction2D::transposed() const
{
    return from_cells(resolution_, [&](int i, int j) { return (*this)(j, i); });
}

bool StepFunction2D::is_nonnegative() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double StepFunction2D::max_abs() const
{
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

StepFunction2D& StepFunction2D::operator+=(const StepFunction2D& other)
{
    require_same_resolution(*this, other);
    for (std::size_t t = 0; t < values_.size(); ++t)
        values_[t] += other.values_[t];
    return *this;
}

StepFunction2D& StepFunction2D::operator-=(const StepFunction2D& other)
{
    require_same_resolution(*this, other);
    for (std::size_t t = 0; t < values_.size(); ++t)
        values_[t] -= other.values_[t];
    return *this;
}

StepFunction2D& StepFunction2D::operator*=(double c)
{
    for (double& v : values_)
        v *= c;
    return *this;
}

StepFunction2D pointwise_product(const StepFunction2D& a, const StepFunction2D& b)
{
    require_same_resolution(a, b);
    return StepFunction2D::from_cells(a.resolution(), [&](int i, int j) { return a(i, j) * b(i, j); });
}

void require_same_resolution(const StepFunction2D& a, const StepFunction2D& b)
{
    if (a.resolution() != b.resolution())
        throw std::invalid_argument("step functions have different resolutions ("
                                    + std::to_string(a.resolution()) + " vs "
                                    + std::to_string(b.resolution()) + ")");
}

// Haar system ---------------------------------------------------------------

StepFunction1D haar_scaling(const DyadicInterval& I, int N)
{
    require_scale(I.scale, N, "haar_scaling");
    StepFunction1D f(N);
    const double amp = 1.0 / std::sqrt(I.length());
    const int first = I.first_cell(N);
    for (int c = 0; c < I.cell_count(N); ++c)
        f[first + c] = amp;
    return f;
}

StepFunction1D haar_wavelet(const DyadicInterval& I, int N)
{
    if (I.scale >= N)
        throw ResolutionError("haar_wavelet: scale " + std::to_string(I.scale)
                              + " needs a finer level than resolution " + std::to_string(N));
    require_scale(I.scale, N, "haar_wavelet");
    StepFunction1D f(N);
    const double amp = 1.0 / std::sqrt(I.length());
    const int first = I.first_cell(N);
    const int half = I.cell_count(N) / 2;
    for (int c = 0; c < half; ++c) {
        f[first + c] = amp;
        f[first + half + c] = -amp;
    }
    return f;
}

StepFunction1D rademacher(int k, int N)
{
    if (k < 1 || k > N)
        throw ResolutionError("rademacher: k must lie in 1..N");
    StepFunction1D r(N);
    const int run = 1 << (N - k);
    for (int c = 0; c < r.size(); ++c)
        r[c] = ((c / run) % 2 == 0) ? 1.0 : -1.0;
    return r;
}

// Martingale operators -------------------------------------------------------

namespace {

// Replaces each of `blocks` groups of `len` strided entries by its mean.
void average_runs(std::vector<double>& v, std::size_t offset, std::size_t stride, int n, int len)
{
    for (int start = 0; start < n; start += len) {
        double s = 0.0;
        for (int t = 0; t < len; ++t)
            s += v[offset + static_cast<std::size_t>(start + t) * stride];
        const double mean = s / len;
        for (int t = 0; t < len; ++t)
            v[offset + static_cast<std::size_t>(start + t) * stride] = mean;
    }
}

void require_average_index(int k, int N)
{
    if (k < 0 || k > N)
        throw ResolutionError("martingale_average: k=" + std::to_string(k) + " outside 0..N");
}

void require_difference_index(int k, int N)
{
    if (k < 0 || k > N - 1)
        throw ResolutionError("martingale_difference: k=" + std::to_string(k)
                              + " outside 0..N-1");
}

} // namespace

StepFunction1D martingale_average(const StepFunction1D& f, int k)
{
    const int N = f.resolution();
    require_average_index(k, N);
    std::vector<double> v(f.values().begin(), f.values().end());
    average_runs(v, 0, 1, f.size(), 1 << (N - k));
    return StepFunction1D(N, std::move(v));
}

StepFunction1D martingale_difference(const StepFunction1D& f, int k)
{
    require_difference_index(k, f.resolution());
    StepFunction1D fine = martingale_average(f, k + 1);
    const StepFunction1D coarse = martingale_average(f, k);
    for (int c = 0; c < f.size(); ++c)
        fine[c] -= coarse[c];
    return fine;
}

StepFunction2D martingale_average(const StepFunction2D& F, Axis axis, int k)
{
    const int N = F.resolution();
    require_average_index(k, N);
    const int n = F.side();
    const int len = 1 << (N - k);
    std::vector<double> v(F.values().begin(), F.values().end());
    const auto un = static_cast<std::size_t>(n);
    for (int line = 0; line < n; ++line) {
        if (axis == Axis::x)
            average_runs(v, static_cast<std::size_t>(line), un, n, len);
        else
            average_runs(v, static_cast<std::size_t>(line) * un, 1, n, len);
    }
    return StepFunction2D(N, std::move(v));
}

StepFunction2D martingale_difference(const StepFunction2D& F, Axis axis, int k)
{
    require_difference_index(k, F.resolution());
    return martingale_average(F, axis, k + 1) - martingale_average(F, axis, k);
}

// Norms ---------------------------------------------------------------------

double integral(std::span<const double> values, double cell_measure)
{
    double s = 0.0;
    for (double v : values)
        s += v;
    return s * cell_measure;
}

double lp_norm(std::span<const double> values, double cell_measure, double p)
{
    if (!(p > 0.0))
        throw std::invalid_argument("lp_norm: p must be positive");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values)
            m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : values)
        s += std::pow(std::abs(v), p);
    return std::pow(s * cell_measure, 1.0 / p);
}

double weak_lp(std::span<const double> values, double cell_measure, double p)
{
    if (!(p > 0.0))
        throw std::invalid_argument("weak_lp: p must be positive");
    std::vector<double> mags;
    mags.reserve(values.size());
    for (double v : values)
        mags.push_back(std::abs(v));
    if (std::isinf(p))
        return mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
    std::sort(mags.begin(), mags.end(), std::greater<>());
    // For a step function the supremum over alpha is approached from below
    // each attained value v, where the superlevel set is {|F| >= v}.
    double best = 0.0;
    std::size_t t = 0;
    while (t < mags.size()) {
        const double v = mags[t];
        std::size_t end = t;
        while (end < mags.size() && mags[end] == v)
            ++end;
        if (v > 0.0) {
            const double measure = static_cast<double>(end) * cell_measure;
            best = std::max(best, v * std::pow(measure, 1.0 / p));
        }
        t = end;
    }
    return best;
}

double integral(const StepFunction1D& f) { return integral(f.values(), f.cell_width()); }
double integral(const StepFunction2D& F) { return integral(F.values(), F.cell_area()); }
double lp_norm(const StepFunction1D& f, double p) { return lp_norm(f.values(), f.cell_width(), p); }
double lp_norm(const StepFunction2D& F, double p) { return lp_norm(F.values(), F.cell_area(), p); }
double weak_lp(const StepFunction1D& f, double p) { return weak_lp(f.values(), f.cell_width(), p); }
double weak_lp(const StepFunction2D& F, double p) { return weak_lp(F.values(), F.cell_area(), p); }

StepFunction2D dyadic_maximal_M2(const StepFunction2D& F)
{
    const int N = F.resolution();
    // level[s] holds the mean of |F|^2 over each scale-s square.
    std::vector<std::vector<double>> level(static_cast<std::size_t>(N) + 1);
    {
        auto& fine = level[static_cast<std::size_t>(N)];
        fine.resize(F.values().size());
        for (std::size_t t = 0; t < fine.size(); ++t)
            fine[t] = F.values()[t] * F.values()[t];
    }
    for (int s = N - 1; s >= 0; --s) {
        const int n = 1 << s;
        const auto& child = level[static_cast<std::size_t>(s) + 1];
        auto& cur = level[static_cast<std::size_t>(s)];
        cur.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto c = [&](int a, int b) {
                    return child[static_cast<std::size_t>(2 * i + a) * static_cast<std::size_t>(2 * n)
                                 + static_cast<std::size_t>(2 * j + b)];
                };
                cur[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]
                    = 0.25 * (c(0, 0) + c(0, 1) + c(1, 0) + c(1, 1));
            }
    }
    return StepFunction2D::from_cells(N, [&](int i, int j) {
        double best = 0.0;
        for (int s = 0; s <= N; ++s) {
            const int shift = N - s;
            const std::size_t n = std::size_t{1} << s;
            best = std::max(best, level[static_cast<std::size_t>(s)]
                                       [static_cast<std::size_t>(i >> shift) * n
                                        + static_cast<std::size_t>(j >> shift)]);
        }
        return std::sqrt(best);
    });
}

} // namespace twist
