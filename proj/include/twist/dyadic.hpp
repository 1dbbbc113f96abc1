#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twist {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Thrown when a dyadic object is finer than the grid it is evaluated on.
class ResolutionError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Thrown when a quantity that is nonnegative analytically comes out
/// negative beyond round-off.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Axis { x = 1, y = 2 };

/// [index * 2^-scale, (index + 1) * 2^-scale), a subinterval of [0,1).
struct DyadicInterval {
    int scale = 0;
    int index = 0;

    static DyadicInterval make(int scale, int index);

    double length() const { return std::ldexp(1.0, -scale); }
    double left_end() const { return std::ldexp(static_cast<double>(index), -scale); }

    DyadicInterval left_half() const { return {scale + 1, 2 * index}; }
    DyadicInterval right_half() const { return {scale + 1, 2 * index + 1}; }
    DyadicInterval parent() const;

    /// True when `other` is a subset of this interval.
    bool contains(const DyadicInterval& other) const;

    /// First grid cell covered at resolution N, and the number of cells.
    int first_cell(int N) const { return index << (N - scale); }
    int cell_count(int N) const { return 1 << (N - scale); }

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
    friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

/// I x J with |I| = |J|. `x_side` runs along the first variable.
struct DyadicSquare {
    DyadicInterval x_side;
    DyadicInterval y_side;

    static DyadicSquare make(int scale, int ix, int iy);
    static DyadicSquare unit() { return {}; }

    int scale() const { return x_side.scale; }
    double area() const { return x_side.length() * y_side.length(); }

    /// Ordered (left,left), (left,right), (right,left), (right,right) in (x,y).
    std::array<DyadicSquare, 4> children() const;
    DyadicSquare parent() const;
    bool contains(const DyadicSquare& other) const;

    friend bool operator==(const DyadicSquare&, const DyadicSquare&) = default;
    friend auto operator<=>(const DyadicSquare&, const DyadicSquare&) = default;
};

std::string to_string(const DyadicInterval& I);
std::string to_string(const DyadicSquare& Q);

/// Piecewise constant function on [0,1) with 2^N cells.
class StepFunction1D {
public:
    StepFunction1D() = default;
    explicit StepFunction1D(int resolution, double fill = 0.0);
    StepFunction1D(int resolution, std::vector<double> values);

    int resolution() const { return resolution_; }
    int size() const { return static_cast<int>(values_.size()); }
    double cell_width() const { return std::ldexp(1.0, -resolution_); }

    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
    std::span<const double> values() const { return values_; }

    friend bool operator==(const StepFunction1D&, const StepFunction1D&) = default;

private:
    int resolution_ = 0;
    std::vector<double> values_ = {0.0};
};

/// Piecewise constant function on [0,1)^2 with 2^N x 2^N cells.
/// Cell (i, j) is [i 2^-N, (i+1) 2^-N) x [j 2^-N, (j+1) 2^-N); storage is
/// row-major in i.
class StepFunction2D {
public:
    StepFunction2D() = default;
    explicit StepFunction2D(int resolution, double fill = 0.0);
    StepFunction2D(int resolution, std::vector<double> values);

    template <class Fn>
    static StepFunction2D from_cells(int resolution, Fn&& fn)
    {
        StepFunction2D f(resolution);
        const int n = f.side();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                f(i, j) = fn(i, j);
        return f;
    }

    /// Tensor product a(x) b(y).
    static StepFunction2D tensor(const StepFunction1D& a, const StepFunction1D& b);

    int resolution() const { return resolution_; }
    int side() const { return 1 << resolution_; }
    double cell_width() const { return std::ldexp(1.0, -resolution_); }
    double cell_area() const { return std::ldexp(1.0, -2 * resolution_); }

    double operator()(int i, int j) const { return values_[index(i, j)]; }
    double& operator()(int i, int j) { return values_[index(i, j)]; }
    std::span<const double> values() const { return values_; }

    /// Mirror image F(y, x).
    StepFunction2D transposed() const;
    bool is_nonnegative() const;
    double max_abs() const;

    StepFunction2D& operator+=(const StepFunction2D& other);
    StepFunction2D& operator-=(const StepFunction2D& other);
    StepFunction2D& operator*=(double c);

    friend StepFunction2D operator+(StepFunction2D a, const StepFunction2D& b) { return a += b; }
    friend StepFunction2D operator-(StepFunction2D a, const StepFunction2D& b) { return a -= b; }
    friend StepFunction2D operator*(StepFunction2D a, double c) { return a *= c; }
    friend StepFunction2D operator*(double c, StepFunction2D a) { return a *= c; }
    friend bool operator==(const StepFunction2D&, const StepFunction2D&) = default;

private:
    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(side())
               + static_cast<std::size_t>(j);
    }

    int resolution_ = 0;
    std::vector<double> values_ = {0.0};
};

/// Pointwise product.
StepFunction2D pointwise_product(const StepFunction2D& a, const StepFunction2D& b);

void require_same_resolution(const StepFunction2D& a, const StepFunction2D& b);

// Haar system ---------------------------------------------------------------

StepFunction1D haar_scaling(const DyadicInterval& I, int N);
StepFunction1D haar_wavelet(const DyadicInterval& I, int N);

/// R_k: +1/-1 on consecutive intervals of length 2^-k, starting with +1.
StepFunction1D rademacher(int k, int N);

// Martingale operators -------------------------------------------------------

StepFunction1D martingale_average(const StepFunction1D& f, int k);
StepFunction1D martingale_difference(const StepFunction1D& f, int k);
StepFunction2D martingale_average(const StepFunction2D& F, Axis axis, int k);
StepFunction2D martingale_difference(const StepFunction2D& F, Axis axis, int k);

// Norms ---------------------------------------------------------------------

/// Sum of values times cell measure.
double integral(std::span<const double> values, double cell_measure);
/// (sum |v|^p * cell_measure)^(1/p); p = inf gives max |v|.
double lp_norm(std::span<const double> values, double cell_measure, double p);
/// sup_a a * |{|v| > a}|^(1/p); p = inf gives max |v|.
double weak_lp(std::span<const double> values, double cell_measure, double p);

double integral(const StepFunction1D& f);
double integral(const StepFunction2D& F);
double lp_norm(const StepFunction1D& f, double p);
double lp_norm(const StepFunction2D& F, double p);
double weak_lp(const StepFunction1D& f, double p);
double weak_lp(const StepFunction2D& F, double p);

/// sup over dyadic squares Q containing the point of (|Q|^-1 int_Q |F|^2)^(1/2),
/// scales 0..N.
StepFunction2D dyadic_maximal_M2(const StepFunction2D& F);

} // namespace twist

template <>
struct std::hash<twist::DyadicInterval> {
    std::size_t operator()(const twist::DyadicInterval& I) const noexcept
    {
        return std::hash<long long>{}((static_cast<long long>(I.scale) << 40) ^ I.index);
    }
};

template <>
struct std::hash<twist::DyadicSquare> {
    std::size_t operator()(const twist::DyadicSquare& Q) const noexcept
    {
        const auto a = static_cast<unsigned long long>(Q.x_side.index);
        const auto b = static_cast<unsigned long long>(Q.y_side.index);
        const auto s = static_cast<unsigned long long>(Q.x_side.scale);
        return std::hash<unsigned long long>{}((s << 56) ^ (a << 28) ^ b);
    }
};
