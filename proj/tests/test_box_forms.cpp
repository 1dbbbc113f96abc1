#include "oracles.hpp"
#include "twist/box_forms.hpp"
#include "twist/decomposition.hpp"
#include "twist/random.hpp"

#include <doctest.h>

using namespace twist;

TEST_CASE("box inner product matches the quadruple loop")
{
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        const auto F1 = random_signed(3, rng), F2 = random_signed(3, rng), F3 = random_signed(3, rng),
                   F4 = random_signed(3, rng);
        for (const auto& Q : all_squares(3))
            CHECK(box_inner_product(F1, F2, F3, F4, Q)
                  == doctest::Approx(oracle::box_inner(F1, F2, F3, F4, Q)).epsilon(1e-12));
    }
}

TEST_CASE("box norm of constants and rank-one functions")
{
    const StepFunction2D one(3, 1.0);
    CHECK(box_norm(one, DyadicSquare::unit()) == doctest::Approx(1.0));
    Rng rng(12);
    const auto R = random_rank_one(4, rng);
    for (const auto& Q : all_squares(4))
        CHECK(box_norm(R, Q) == doctest::Approx(l2_average(R, Q)).epsilon(1e-10));
}

TEST_CASE("box norm equals the normalized Schatten 4-norm")
{
    Rng rng(13);
    for (int t = 0; t < 5; ++t) {
        const auto F = random_signed(4, rng);
        for (const auto& Q : all_squares(4))
            CHECK(std::pow(box_norm(F, Q), 4) * Q.area() * Q.area()
                  == doctest::Approx(oracle::schatten4(F, Q)).epsilon(1e-8));
    }
}

TEST_CASE("Cauchy-Schwarz and L2 domination")
{
    Rng rng(14);
    for (int t = 0; t < 20; ++t) {
        const auto F1 = random_signed(3, rng), F2 = random_nonnegative(3, rng),
                   F3 = random_signed(3, rng), F4 = random_uniform(3, rng);
        for (const auto& Q : all_squares(3)) {
            const double lhs = std::abs(box_inner_product(F1, F2, F3, F4, Q));
            const double rhs = box_norm(F1, Q) * box_norm(F2, Q) * box_norm(F3, Q) * box_norm(F4, Q);
            CHECK(lhs <= rhs * (1 + 1e-12) + 1e-15);
            CHECK(box_norm(F1, Q) <= l2_average(F1, Q) * (1 + 1e-12));
        }
    }
}

TEST_CASE("xi form sums weighted box products")
{
    Rng rng(15);
    const auto F = random_uniform(3, rng);
    const auto squares = all_squares(2);
    const auto r = xi_form(squares, F, F, F, F, true);
    double s = 0.0;
    for (const auto& Q : squares)
        s += Q.area() * std::pow(box_norm(F, Q), 4);
    CHECK(r.value == doctest::Approx(s));
    CHECK(r.square_count == squares.size());
    REQUIRE(r.per_square.has_value());
    CHECK(r.per_square->size() == squares.size());
}
