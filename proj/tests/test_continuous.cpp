#include "oracles.hpp"
#include "twist/continuous.hpp"

#include <doctest.h>

using namespace twist;

TEST_CASE("FFT multiplier matches the direct DFT")
{
    Rng rng(61);
    const PeriodicGrid grid(6);
    const auto f = random_band_limited_1d(6, 20, 5, rng);
    const auto profile = [](double xi) { return bump_profile(xi / 8.0); };
    const auto got = multiplier_apply(grid, f, grid.radial_symbol(profile));
    const auto want = oracle::dft_multiplier({f.values().begin(), f.values().end()}, profile);
    for (int t = 0; t < f.size(); ++t)
        CHECK(got[t] == doctest::Approx(want[t]).epsilon(1e-10).scale(1.0));
    const auto rt = grid.round_trip(f.values());
    for (int t = 0; t < f.size(); ++t)
        CHECK(std::abs(rt[t] - f[t]) < 1e-13);
    CHECK_THROWS(multiplier_apply(PeriodicGrid(5), f, grid.radial_symbol(profile)));
}

TEST_CASE("profiles")
{
    CHECK(plateau_profile(0.0) == 1.0);
    CHECK(plateau_profile(std::exp2(-0.6)) == 1.0);
    CHECK(plateau_profile(std::exp2(-0.4)) == 0.0);
    const double mid = plateau_profile(std::exp2(-0.5));
    CHECK(mid == std::ldexp(std::round(std::ldexp(mid, 40)), -40));
    CHECK(bump_profile(1.0) == 1.0);
    CHECK(bump_profile(0.5) == 0.0);
    CHECK(bump_profile(2.0) == 0.0);
    const double h = 1e-6;
    for (double t : {0.6, 0.9, 1.3, 1.8})
        CHECK(bump_log_derivative(t)
              == doctest::Approx(t * (bump_profile(t + h) - bump_profile(t - h)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("support identities are exact")
{
    const auto rep = check_support_identities(build_mollifiers(7, 0, 4));
    CHECK(rep.exact());
    for (int i = 0; i < 3; ++i)
        CHECK(rep.checked[i] > 0);
    CHECK_THROWS_AS(build_mollifiers(7, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(build_mollifiers(7, 2, 1), std::invalid_argument);
}

TEST_CASE("symbol decomposition and square function bounds")
{
    const auto fam = build_mollifiers(6, 0, 3);
    Rng rng(62);
    for (int t = 0; t < 3; ++t) {
        const auto F = random_band_limited(6, 16, 5, rng), G = random_band_limited(6, 16, 5, rng);
        CHECK(decomposition_identity_residual(F, G, fam) < 1e-10);
        CHECK(mean_zero_branch_excess(F, G, fam) <= 1e-12);
        for (double b : {-2.0, -0.3, 0.0, 1.7})
            CHECK(aux_difference_excess(F, G, b, fam) <= 1e-12);
    }
    CHECK(shift_tenths(-1.3) == -13);
    CHECK_THROWS_AS(shift_tenths(0.05), std::invalid_argument);
    CHECK_THROWS_AS(shift_tenths(2.1), std::invalid_argument);
}

TEST_CASE("JSW square function matches the direct DFT")
{
    Rng rng(63);
    const auto f = random_band_limited_1d(6, 24, 6, rng);
    const auto S = jsw_square_function(f, 0, 6);
    for (int t = 0; t < f.size(); ++t) {
        double want = 0.0;
        for (int k = 0; k <= 6; ++k) {
            const double sc = std::ldexp(1.0, -k);
            const auto P = oracle::dft_multiplier({f.values().begin(), f.values().end()},
                                                  [sc](double xi) { return plateau_profile(sc * xi); });
            const double d = P[t] - martingale_average(f, k)[t];
            want += d * d;
        }
        CHECK(S[t] == doctest::Approx(std::sqrt(want)).epsilon(1e-9).scale(1.0));
    }
    CHECK_THROWS(jsw_square_function(f, 0, 7));
    CHECK_THROWS(jsw_square_function(f, 0, 3, bump_profile));
}

TEST_CASE("Psi symbols are bounded with bounded log derivative")
{
    const auto b = psi_symbol_bounds(build_mollifiers(10, 0, 7));
    CHECK(b.max_abs <= 1.0 + 1e-12);
    CHECK(b.max_log_derivative <= 96.0 / (25.0 * std::sqrt(5.0)) / std::numbers::ln2 + 1e-9);
}
