#include "twist/dyadic.hpp"
#include "twist/random.hpp"

#include <doctest.h>

using namespace twist;

TEST_CASE("interval and square geometry")
{
    const auto I = DyadicInterval::make(3, 5);
    CHECK(I.length() == 0.125);
    CHECK(I.left_end() == 0.625);
    CHECK(I.parent() == DyadicInterval::make(2, 2));
    CHECK(I.parent().contains(I));
    CHECK_FALSE(I.contains(I.parent()));
    CHECK_THROWS_AS(DyadicInterval::make(2, 4), std::exception);
    const auto Q = DyadicSquare::make(2, 1, 3);
    for (const auto& c : Q.children()) {
        CHECK(c.parent() == Q);
        CHECK(Q.contains(c));
    }
    CHECK(Q.area() == 1.0 / 16);
}

TEST_CASE("haar system is orthonormal")
{
    const int N = 4;
    std::vector<StepFunction1D> basis;
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < (1 << k); ++i)
            basis.push_back(haar_wavelet({k, i}, N));
    basis.push_back(haar_scaling({0, 0}, N));
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            double s = 0.0;
            for (int t = 0; t < (1 << N); ++t)
                s += basis[a][t] * basis[b][t] / (1 << N);
            CHECK(s == doctest::Approx(a == b ? 1.0 : 0.0));
        }
}

TEST_CASE("martingale averages telescope")
{
    Rng rng(3);
    const auto F = random_signed(5, rng);
    for (Axis axis : {Axis::x, Axis::y}) {
        auto sum = martingale_average(F, axis, 0);
        for (int k = 0; k < 5; ++k)
            sum += martingale_difference(F, axis, k);
        CHECK((sum - F).max_abs() < 1e-14);
        CHECK((martingale_average(F, axis, 5) - F).max_abs() == 0.0);
        CHECK(integral(martingale_difference(F, axis, 2)) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("norms")
{
    StepFunction2D F(1, 0.0);
    F(0, 0) = 2.0;
    CHECK(lp_norm(F, 1) == 0.5);
    CHECK(lp_norm(F, 2) == doctest::Approx(1.0));
    CHECK(lp_norm(F, inf) == 2.0);
    CHECK(weak_lp(F, 1) == doctest::Approx(0.5));
    const auto R = rademacher(3, 5);
    for (int t = 0; t < 32; ++t)
        CHECK(std::abs(R[t]) == 1.0);
    CHECK(R[0] == 1.0);
    CHECK(R[4] == -1.0);
}

TEST_CASE("transposition and resolution checks")
{
    Rng rng(5);
    const auto F = random_uniform(3, rng);
    CHECK(F.transposed().transposed() == F);
    CHECK(F.transposed()(1, 2) == F(2, 1));
    CHECK_THROWS(require_same_resolution(F, StepFunction2D(4)));
}

TEST_CASE("maximal function dominates |F|")
{
    Rng rng(8);
    const auto F = random_signed(4, rng);
    const auto M = dyadic_maximal_M2(F);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(M(i, j) >= std::abs(F(i, j)) - 1e-15);
}
