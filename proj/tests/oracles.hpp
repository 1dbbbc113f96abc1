#pragma once

// Brute-force reference implementations used only by the tests.

#include "twist/dyadic.hpp"
#include "twist/higher_dim.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using namespace twist;

// One-axis kernel k(s, t) over grid cells s, t.
using Kernel = std::function<double(int, int)>;

inline Kernel full(const DyadicInterval& I, int N)
{
    const auto p = haar_scaling(I, N);
    return [p](int s, int t) { return p[s] * p[t]; };
}

inline Kernel wavelet(const DyadicInterval& I, int N)
{
    const auto h = haar_wavelet(I, N);
    return [h](int s, int t) { return h[s] * h[t]; };
}

inline Kernel halves(const DyadicInterval& I, int N)
{
    const auto a = haar_scaling(I.left_half(), N), b = haar_scaling(I.right_half(), N);
    return [a, b](int s, int t) { return a[s] * a[t] + b[s] * b[t]; };
}

// int kx(u,x) ky(v,y) F1(u,v) F2(x,v) F3(u,y) F4(x,y), full O(m^4) loop.
inline double form2(const Kernel& kx, const Kernel& ky, const StepFunction2D& F1,
                    const StepFunction2D& F2, const StepFunction2D& F3, const StepFunction2D& F4)
{
    const int n = F1.side();
    const double h = F1.cell_width();
    double s = 0.0;
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) {
            const double a = kx(u, x);
            if (a == 0.0)
                continue;
            for (int v = 0; v < n; ++v)
                for (int y = 0; y < n; ++y)
                    s += a * ky(v, y) * F1(u, v) * F2(x, v) * F3(u, y) * F4(x, y);
        }
    return s * h * h * h * h;
}

// Mean over Q^2 directly from the definition.
inline double box_inner(const StepFunction2D& F1, const StepFunction2D& F2, const StepFunction2D& F3,
                        const StepFunction2D& F4, const DyadicSquare& Q)
{
    const int N = F1.resolution();
    return form2(full(Q.x_side, N), full(Q.y_side, N), F1, F2, F3, F4) / Q.area();
}

// Schatten-4 norm^4 of the block cell_width * F|_Q.
inline double schatten4(const StepFunction2D& F, const DyadicSquare& Q)
{
    const int N = F.resolution();
    const int m = Q.x_side.cell_count(N);
    Eigen::MatrixXd B(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            B(a, b) = F.cell_width() * F(Q.x_side.first_cell(N) + a, Q.y_side.first_cell(N) + b);
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(B).singularValues();
    return s.array().pow(4).sum();
}

// Haar expansion of the paraproduct:
// sum_k sum_{|I|=|J|=2^-k} (mean_I F(., y)) <G(x, .), h_J> h_J(y).
inline StepFunction2D t_d(const StepFunction2D& F, const StepFunction2D& G)
{
    const int N = F.resolution(), n = F.side();
    StepFunction2D out(N);
    for (int k = 0; k < N; ++k)
        for (int J = 0; J < (1 << k); ++J) {
            const auto h = haar_wavelet(DyadicInterval{k, J}, N);
            for (int x = 0; x < n; ++x) {
                double c = 0.0;
                for (int v = 0; v < n; ++v)
                    c += G(x, v) * h[v] * F.cell_width();
                const int w = n >> k, x0 = (x / w) * w;
                for (int y = 0; y < n; ++y) {
                    double mean = 0.0;
                    for (int u = x0; u < x0 + w; ++u)
                        mean += F(u, y);
                    out(x, y) += mean / w * c * h[y];
                }
            }
        }
    return out;
}

// Direct O(n^2) DFT multiplier with a radial profile.
inline std::vector<double> dft_multiplier(const std::vector<double>& f,
                                          const std::function<double(double)>& profile)
{
    const int n = static_cast<int>(f.size());
    std::vector<std::complex<double>> hat(n);
    for (int m = 0; m < n; ++m)
        for (int t = 0; t < n; ++t)
            hat[m] += f[t] * std::polar(1.0, -2.0 * std::numbers::pi * m * t / n);
    std::vector<double> out(n, 0.0);
    for (int t = 0; t < n; ++t) {
        std::complex<double> s = 0.0;
        for (int m = 0; m < n; ++m) {
            const int freq = m < n / 2 ? m : m - n;
            s += profile(std::abs(static_cast<double>(freq))) * hat[m]
                 * std::polar(1.0, 2.0 * std::numbers::pi * m * t / n);
        }
        out[t] = s.real() / n;
    }
    return out;
}

// O(m^6) evaluation of the three-dimensional form with one kernel per axis.
inline double form3(const std::array<Kernel, 3>& k, const Octuple& F)
{
    const int n = F[0].side();
    const double h = F[0].cell_width();
    double s = 0.0;
    int x[3][2];
    for (x[0][0] = 0; x[0][0] < n; ++x[0][0])
        for (x[0][1] = 0; x[0][1] < n; ++x[0][1]) {
            const double a = k[0](x[0][0], x[0][1]);
            if (a == 0.0)
                continue;
            for (x[1][0] = 0; x[1][0] < n; ++x[1][0])
                for (x[1][1] = 0; x[1][1] < n; ++x[1][1]) {
                    const double b = a * k[1](x[1][0], x[1][1]);
                    if (b == 0.0)
                        continue;
                    for (x[2][0] = 0; x[2][0] < n; ++x[2][0])
                        for (x[2][1] = 0; x[2][1] < n; ++x[2][1]) {
                            double p = b * k[2](x[2][0], x[2][1]);
                            for (int j = 0; j < 8 && p != 0.0; ++j)
                                p *= F[j](x[0][j & 1], x[1][(j >> 1) & 1], x[2][(j >> 2) & 1]);
                            s += p;
                        }
                }
        }
    return s * std::pow(h, 6);
}

// Axis kernels of theta^(i): full before i, wavelet at i, halves after i.
inline std::array<Kernel, 3> theta3_kernels(const DyadicCube& Q, int i, int N)
{
    std::array<Kernel, 3> k;
    for (int a = 0; a < 3; ++a)
        k[a] = a + 1 < i ? full(Q.side[a], N) : a + 1 == i ? wavelet(Q.side[a], N) : halves(Q.side[a], N);
    return k;
}

} // namespace oracle
