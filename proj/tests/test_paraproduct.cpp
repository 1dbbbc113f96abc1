#include "oracles.hpp"
#include "twist/paraproduct.hpp"
#include "twist/random.hpp"

#include <doctest.h>

using namespace twist;

TEST_CASE("paraproduct matches the Haar expansion")
{
    Rng rng(31);
    for (int N = 1; N <= 4; ++N) {
        const auto F = random_signed(N, rng), G = random_signed(N, rng);
        CHECK((t_d(F, G) - oracle::t_d(F, G)).max_abs() < 1e-12);
    }
}

TEST_CASE("degenerate inputs")
{
    Rng rng(32);
    const auto F = random_signed(4, rng);
    const auto Gx = StepFunction2D::from_cells(4, [](int i, int) { return i * 0.25; });
    CHECK(t_d(F, Gx).max_abs() == 0.0);
    CHECK(t_d(StepFunction2D(4, 1.0), F).max_abs() > 0.0);
}

TEST_CASE("product identity")
{
    Rng rng(33);
    for (int t = 0; t < 20; ++t) {
        const auto F = random_signed(5, rng), G = random_signed(5, rng);
        CHECK(product_identity_residual(F, G) < 1e-13);
    }
}

TEST_CASE("lambda is the pairing with T")
{
    Rng rng(34);
    const auto F = random_uniform(4, rng), G = random_uniform(4, rng), H = random_uniform(4, rng);
    CHECK(lambda_d(F, G, H) == doctest::Approx(integral(pointwise_product(t_d(F, G), H))));
}

TEST_CASE("coefficients and shifts")
{
    Rng rng(35);
    const auto F = random_signed(4, rng), G = random_signed(4, rng);
    const std::vector<double> ones(4, 1.0), bad(4, 2.0), missing(3, 0.5);
    CHECK((t_d_coeff(F, G, ones) - t_d(F, G)).max_abs() == 0.0);
    CHECK_THROWS_AS(t_d_coeff(F, G, bad), std::invalid_argument);
    CHECK_THROWS_AS(t_d_coeff(F, G, missing), std::invalid_argument);
    CHECK((t_d_shifted(F, G, 0) - t_d(F, G)).max_abs() == 0.0);
    for (int k0 : {1, 4}) {
        StepFunction2D sum(4);
        for (int k = 0; k + k0 <= 4; ++k)
            sum += pointwise_product(martingale_average(F, Axis::x, k + k0), martingale_difference(G, Axis::y, k));
        CHECK((t_d_shifted(F, G, k0) - sum).max_abs() < 1e-13);
    }
}

TEST_CASE("dilation rescales the x variable")
{
    const auto F = StepFunction2D::from_cells(3, [](int i, int j) { return i < 4 ? 1.0 + i + 8 * j : 0.0; });
    const auto S = dilate_x(F, 1);
    CHECK(S(5, 2) == F(2, 2));
    CHECK((dilate_x(S, -1) - F).max_abs() == 0.0);
    CHECK_THROWS_AS(dilate_x(StepFunction2D(3, 1.0), 1), std::invalid_argument);
    CHECK_THROWS_AS(dilate_x(F, 4), std::invalid_argument);
}
