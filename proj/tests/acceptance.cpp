// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "oracles.hpp"
#include "twist/box_forms.hpp"
#include "twist/continuous.hpp"
#include "twist/counterexamples.hpp"
#include "twist/cz.hpp"
#include "twist/decomposition.hpp"
#include "twist/experiments.hpp"
#include "twist/higher_dim.hpp"
#include "twist/paraproduct.hpp"
#include "twist/random.hpp"
#include "twist/trees.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace twist;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Outcome telescoping()
{
    Rng rng(101);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto tree = random_convex_tree(5, rng);
        const auto F1 = random_nonnegative(5, rng), F2 = random_nonnegative(5, rng),
                   F3 = random_nonnegative(5, rng), F4 = random_nonnegative(5, rng);
        worst = std::max(worst, telescoping_residual(tree, F1, F2, F3, F4)
                                    / input_scale(tree.root(), F1, F2, F3, F4));
    }
    return {worst <= 1e-9, fmt("max residual/scale %.3g over 200 trees", worst)};
}

Outcome single_tree()
{
    Rng rng(102);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto tree = random_convex_tree(5, rng);
        const auto F1 = random_nonnegative(5, rng), F2 = random_nonnegative(5, rng),
                   F3 = random_nonnegative(5, rng), F4 = random_nonnegative(5, rng);
        worst = std::max(worst, single_tree_ratio(tree, F1, F2, F3, F4));
    }
    return {worst <= 2.0 + 1e-9, fmt("max ratio %.6f over 500 pairs (bound 2)", worst)};
}

Outcome box_inequalities()
{
    Rng rng(103);
    const auto squares = all_squares(4);
    double cs = -inf, dom = -inf, eq = 0.0;
    auto draw = [&](int t) { return t % 2 ? random_signed(4, rng) : random_nonnegative(4, rng); };
    for (int t = 0; t < 1000; ++t) {
        const auto F = draw(t), G = draw(t + 1), H = draw(t), K = draw(t + 1);
        for (const auto& Q : squares) {
            const double bF = box_norm(F, Q);
            const double rhs = bF * box_norm(G, Q) * box_norm(H, Q) * box_norm(K, Q);
            cs = std::max(cs, std::abs(box_inner_product(F, G, H, K, Q)) - rhs * (1 + 1e-12));
            dom = std::max(dom, bF - l2_average(F, Q) * (1 + 1e-12));
        }
    }
    for (int t = 0; t < 100; ++t) {
        const auto R = random_rank_one(4, rng);
        for (const auto& Q : squares) {
            const double l2 = l2_average(R, Q);
            if (l2 > 0)
                eq = std::max(eq, std::abs(box_norm(R, Q) - l2) / l2);
        }
    }
    return {cs <= 0 && dom <= 0 && eq <= 1e-10,
            fmt("CS excess %.3g, L2 excess %.3g, rank-one rel. gap %.3g", cs, dom, eq)};
}

Outcome schatten()
{
    Rng rng(104);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto F = t % 2 ? random_signed(4, rng) : random_nonnegative(4, rng);
        for (const auto& Q : all_squares(4)) {
            const double want = oracle::schatten4(F, Q);
            const double got = std::pow(box_norm(F, Q), 4) * Q.area() * Q.area();
            if (want > 0)
                worst = std::max(worst, std::abs(got - want) / want);
        }
    }
    return {worst <= 1e-8, fmt("max relative gap to SVD %.3g", worst)};
}

Outcome resummation()
{
    Rng rng(105);
    double worst = 0.0;
    bool audits = true;
    std::size_t trees = 0;
    for (int t = 0; t < 100; ++t) {
        const auto F = random_nonnegative(4, rng), G = random_nonnegative(4, rng), H = random_nonnegative(4, rng);
        const double scale = F.max_abs() * G.max_abs() * H.max_abs();
        worst = std::max(worst, resummation_residual(F, G, H) / scale);
        const auto dec = triple_decomposition(F, G, H);
        audits = audits && audit_decomposition(dec, F, G, H).ok();
        trees += dec.entries.size();
    }
    return {worst <= 1e-9 && audits,
            fmt("max residual/scale %.3g, %g trees, audits ", worst, static_cast<double>(trees))
                + (audits ? "ok" : "failed")};
}

Outcome vanishing()
{
    Rng rng(106);
    double worst = 0.0;
    bool measure = true, bounded = true;
    for (int t = 0; t < 100; ++t) {
        const auto F = t % 2 ? random_signed(5, rng) : random_nonnegative(5, rng);
        const auto G = random_multiscale(5, rng);
        double top = 0.0;
        for (int i = 0; i < G.side(); ++i) {
            double s = 0.0;
            for (int j = 0; j < G.side(); ++j)
                s += G(i, j);
            top = std::max(top, s / G.side());
        }
        const double lambda = top * std::uniform_real_distribution<double>(0.5, 2.0)(rng);
        const auto cz = fiber_cz(G, lambda);
        worst = std::max(worst, vanishing_residual(F, G, cz));
        measure = measure && cz.exceptional_measure() <= lp_norm(G, 1) / lambda;
        bounded = bounded && cz.good.max_abs() <= 2 * lambda;
    }
    return {worst <= 1e-10 && measure && bounded,
            fmt("max |T(F,G-G~)| off E %.3g", worst) + (measure ? ", |E| bound ok" : ", |E| bound violated")
                + (bounded ? ", sup bound ok" : ", sup bound violated")};
}

Outcome counterexample_one()
{
    bool exact = true;
    for (int n = 1; n <= 8; ++n) {
        const auto [F, G] = counterexample_linfty_lq(n, n);
        const auto T = t_d(F, G);
        for (int i = 0; i < T.side(); ++i)
            for (int j = 0; j < T.side(); ++j)
                exact = exact && T(i, j) == (i == 0 ? static_cast<double>(n) : 0.0);
    }
    double gap = 0.0;
    for (const auto& r : growth_report(8, 2.0))
        if (r.n >= 2)
            gap = std::max(gap, std::abs(r.ratio - std::sqrt(r.n) / 3) / (std::sqrt(r.n) / 3));
    double band = 0.0;
    for (double q : {1.0, 4.0}) {
        double lo = inf, hi = 0.0;
        for (const auto& r : growth_report(8, q))
            if (r.n >= 2) {
                lo = std::min(lo, r.ratio_over_sqrt_n);
                hi = std::max(hi, r.ratio_over_sqrt_n);
            }
        band = std::max(band, hi / lo);
    }
    return {exact && gap <= 1e-12 && band <= 3.0,
            std::string(exact ? "T exact for n=1..8" : "T not exact")
                + fmt(", q=2 rel. gap to sqrt(n)/3 %.3g, q in {1,4} band %.3f", gap, band)};
}

Outcome counterexample_two()
{
    double v[4] = {0, 0, 0, 0};
    bool constant = true;
    for (int n = 1; n <= 3; ++n) {
        const auto c = counterexample_corner_value(n);
        constant = constant && c.min == c.max;
        v[n] = c.max;
    }
    const double d1 = std::abs(v[2]) - std::abs(v[1]), d2 = std::abs(v[3]) - std::abs(v[2]);
    const double rel = std::abs(d2 - d1) / std::max(std::abs(d1), std::abs(d2));
    return {constant && rel <= 0.1 && d1 > 0 && d2 > 0,
            fmt("corner values %.6g %.6g %.6g, difference mismatch %.3g", v[1], v[2], v[3], rel)};
}

Outcome lattice()
{
    const auto rep = check_support_identities(build_mollifiers(10, 0, 7));
    const auto fam = build_mollifiers(8, 0, 5);
    Rng rng(109);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto F = random_band_limited(8, 64, 8, rng), G = random_band_limited(8, 64, 8, rng);
        worst = std::max(worst, decomposition_identity_residual(F, G, fam));
    }
    const auto checked = static_cast<double>(rep.checked[0] + rep.checked[1] + rep.checked[2]);
    const auto bad = static_cast<double>(rep.violations[0] + rep.violations[1] + rep.violations[2]);
    return {rep.exact() && worst <= 1e-8,
            fmt("%g lattice checks at L=10, %g violations, decomposition residual %.3g", checked, bad, worst)};
}

Outcome three_dim()
{
    Rng rng(110);
    double tele = 0.0, l4 = -inf, arrow = -inf;
    for (int t = 0; t < 50; ++t) {
        const int N = 2 + t % 2;
        const auto F = random_octuple(N, rng, t % 3 == 0);
        tele = std::max(tele, telescoping3d_residual(random_convex_tree3d(N, rng), F));
    }
    for (int t = 0; t < 500; ++t) {
        const auto F = random_function3d(2, rng, t % 2 == 0);
        const auto [lhs, rhs] = box3_l4_check(F, DyadicCube::unit());
        l4 = std::max(l4, lhs - rhs - 1e-12);
    }
    for (int t = 0; t < 100; ++t) {
        const auto F = random_octuple(2, rng, t % 2 == 0);
        for (const auto& a : reduction_chain(random_convex_tree3d(2, rng), F))
            arrow = std::max(arrow, a.lhs - a.rhs * (1 + 1e-12));
    }
    return {tele <= 1e-9 && l4 <= 0 && arrow <= 0,
            fmt("telescoping residual %.3g, L4 excess %.3g, arrow excess %.3g", tele, l4, arrow)};
}

Outcome boundedness_map()
{
    SweepConfig cfg;
    cfg.Ns = {4, 5, 6};
    cfg.trials = 300;
    cfg.steps = 3000;
    cfg.seed = 2024;
    cfg.grid = {{3, 3}, {4, 4}, {2.5, 2.5}, {4, 2.5}};
    const auto rep = sweep(cfg);
    bool stable = true;
    std::string detail = "trends";
    for (const auto& r : rep.rows) {
        stable = stable && r.trend < 0.1;
        detail += fmt(" (%g,%g):%.3f", r.p, r.q, r.trend);
    }
    double ratio[7] = {};
    for (int n = 2; n <= 6; ++n) {
        const auto c = counterexample_linfty_lq(n, n);
        ratio[n] = norm_ratio(c.F, c.G, inf, 2);
    }
    const double per_doubling = std::min(ratio[4] / ratio[2], ratio[6] / ratio[3]);
    double per_step = inf;
    for (int n = 2; n < 6; ++n)
        per_step = std::min(per_step, ratio[n + 1] / ratio[n]);
    detail += fmt("; (inf,2) growth per doubling of n %.3f, per unit n %.3f", per_doubling, per_step);
    return {stable && per_doubling >= 1.3, detail};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {"telescoping identity", 30, telescoping},
        {"single tree constant 2", 0, single_tree},
        {"box Cauchy-Schwarz and L2 domination", 0, box_inequalities},
        {"Schatten-4 identification", 0, schatten},
        {"re-summation into trees", 0, resummation},
        {"fiber decomposition vanishing", 0, vanishing},
        {"counterexample L^inf x L^q", 10, counterexample_one},
        {"counterexample L^inf x L^inf", 0, counterexample_two},
        {"lattice identities", 60, lattice},
        {"three-dimensional telescoping", 0, three_dim},
        {"empirical boundedness map", 300, boundedness_map},
    };
    int failures = 0, k = 0;
    for (const auto& c : all) {
        ++k;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.pass = false;
            o.detail += fmt(" [over time limit %.0f s]", c.limit_s);
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", k, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
