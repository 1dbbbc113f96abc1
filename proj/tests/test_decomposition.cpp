#include "twist/box_forms.hpp"
#include "twist/decomposition.hpp"
#include "twist/paraproduct.hpp"
#include "twist/random.hpp"

#include <doctest.h>

using namespace twist;

TEST_CASE("levels")
{
    CHECK(level_of(1.0) == 0);
    CHECK(level_of(0.75) == -1);
    CHECK(level_of(2.0) == 1);
    CHECK(level_of(std::ldexp(1.0, -30)) == -30);
    CHECK_THROWS_AS(level_of(0.0), std::invalid_argument);
    const auto fam = level_families(StepFunction2D(4, 1.0));
    REQUIRE(fam.P.size() == 1);
    CHECK(fam.P.begin()->first == 0);
    CHECK(fam.M.at(0).size() == 1);
    CHECK(fam.maximal_measure(0) == 1.0);
    CHECK(fam.maximal_measure(3) == 0.0);
    CHECK_THROWS(level_families(StepFunction2D(3, 0.0)));
}

TEST_CASE("running sup is monotone down the tree")
{
    Rng rng(41);
    const auto F = random_multiscale(4, rng);
    const auto sup = sup_box_norm_map(F);
    const auto box = box_norm_map(F);
    for (const auto& Q : all_squares(4)) {
        CHECK(sup.at(Q) >= box.at(Q));
        if (Q.scale() > 0)
            CHECK(sup.at(Q) >= sup.at(Q.parent()));
    }
}

TEST_CASE("re-summation and audits")
{
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
        const auto F = random_nonnegative(4, rng), G = random_nonnegative(4, rng), H = random_nonnegative(4, rng);
        const double scale = F.max_abs() * G.max_abs() * H.max_abs();
        CHECK(resummation_residual(F, G, H) <= 1e-9 * scale);
        const auto dec = triple_decomposition(F, G, H);
        const auto audit = audit_decomposition(dec, F, G, H);
        CHECK(audit.ok());
        CHECK(audit.max_doubling_ratio <= 1.0 + 1e-12);
        CHECK(tree_sum(dec, F, G, H) == doctest::Approx(lambda_d(F, G, H)).epsilon(1e-10));
    }
}

TEST_CASE("summation report")
{
    Rng rng(43);
    const auto F = random_nonnegative(4, rng), G = random_nonnegative(4, rng), H = random_nonnegative(4, rng);
    const auto rep = summation_bound_report(F, G, H, 3, 3, 3);
    CHECK(rep.min_form >= rep.tree_sum * (1 - 1e-12));
    CHECK(rep.region_ratio[0] + rep.region_ratio[1] + rep.region_ratio[2] == doctest::Approx(rep.ratio_min));
    for (const auto& rows : rep.levels)
        for (const auto& row : rows)
            CHECK(row.maximal_measure <= row.maximal_superlevel + 1e-12);
    CHECK_THROWS_AS(summation_bound_report(F, G, H, 2, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(summation_bound_report(F, G, H, 3, 3, 4), std::invalid_argument);
    CHECK(level_table_csv(rep).starts_with("function,k,maximal_measure,weighted,maximal_superlevel\n"));
}
