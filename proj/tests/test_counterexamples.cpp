#include "twist/counterexamples.hpp"
#include "twist/paraproduct.hpp"

#include <doctest.h>

using namespace twist;

TEST_CASE("first construction gives n on a thin strip")
{
    for (int n = 1; n <= 6; ++n) {
        const auto [F, G] = counterexample_linfty_lq(n, n);
        const auto T = t_d(F, G);
        for (int i = 0; i < T.side(); ++i)
            for (int j = 0; j < T.side(); ++j)
                CHECK(T(i, j) == (i == 0 ? static_cast<double>(n) : 0.0));
        CHECK(F.max_abs() == (n == 1 ? 1.0 : 3.0));
    }
    CHECK_THROWS(counterexample_linfty_lq(0, 3));
    CHECK_THROWS(counterexample_linfty_lq(4, 3));
}

TEST_CASE("growth table")
{
    const auto rows = growth_report(8, 2.0);
    REQUIRE(rows.size() == 8);
    for (const auto& r : rows)
        if (r.n >= 2)
            CHECK(r.ratio_over_sqrt_n == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    for (double q : {1.0, 4.0}) {
        const auto rq = growth_report(8, q);
        for (std::size_t a = 2; a < rq.size(); ++a)
            CHECK(rq[a].ratio >= rq[a - 1].ratio * (1 - 1e-12));
    }
    CHECK(growth_csv(rows).starts_with("n,weak_norm,sup_F,norm_G,ratio,ratio_over_sqrt_n\n"));
    CHECK_THROWS(growth_report(8, inf));
}

TEST_CASE("second construction")
{
    const auto [F, G] = counterexample_linfty_linfty(2, 4);
    CHECK(G == F.transposed());
    CHECK(F.max_abs() == 1.0);
    // Exact dyadic rationals; the increments tend to -1/9.
    const double want[] = {-0.25, -0.421875, -0.5498046875, -0.66522216796875};
    for (int n = 1; n <= 4; ++n) {
        const auto c = counterexample_corner_value(n);
        CHECK(c.min == c.max);
        CHECK(c.max == want[n - 1]);
    }
    CHECK_THROWS(counterexample_corner_value(7));
    const double late = counterexample_corner_value(5).max - counterexample_corner_value(4).max;
    CHECK(late == doctest::Approx(-1.0 / 9).epsilon(2e-2));
}
