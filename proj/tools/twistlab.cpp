// twistlab: command-line front end for the twisted paraproduct laboratory.

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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace twist;

struct Options {
    int N = 4;
    std::uint64_t seed = 1;
    int trials = 20;
    std::string grid = "default";
    std::string out;
    std::string format = "csv";
    int steps = 60;
    double p = 3, q = 3, r = 3;
    int nmax = 8;
    int L = 8;
    double lambda = 1.0;
};

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + o.out);
    f << text;
}

std::string g(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

class Suite {
public:
    void check(const std::string& name, double value, double tol)
    {
        const bool ok = value <= tol;
        failures_ += ok ? 0 : 1;
        os_ << (ok ? "PASS " : "FAIL ") << name << " value=" << g(value) << " tol=" << g(tol) << '\n';
    }
    void flag(const std::string& name, bool ok)
    {
        failures_ += ok ? 0 : 1;
        os_ << (ok ? "PASS " : "FAIL ") << name << '\n';
    }
    int failures() const { return failures_; }
    std::string text() const { return os_.str(); }

private:
    std::ostringstream os_;
    int failures_ = 0;
};

int run_identities(const Options& o)
{
    Suite s;
    Rng rng(o.seed);
    const int N = o.N;
    double prod = 0, tele = 0, glob = 0, thetaC = 0, resum = 0, vanish = 0, tele3 = 0;
    for (int t = 0; t < o.trials; ++t) {
        const auto F1 = random_nonnegative(N, rng), F2 = random_nonnegative(N, rng),
                   F3 = random_nonnegative(N, rng), F4 = random_nonnegative(N, rng);
        const double scale = input_scale(DyadicSquare::unit(), F1, F2, F3, F4);
        prod = std::max(prod, product_identity_residual(F1, F2) / (F1.max_abs() * F2.max_abs()));
        const auto tree = random_convex_tree(N, rng);
        tele = std::max(tele, telescoping_residual(tree, F1, F2, F3, F4)
                                  / input_scale(tree.root(), F1, F2, F3, F4));
        glob = std::max(glob, global_telescoping_residual(F1, F2, F3, F4) / scale);
        const StepFunction2D one(N, 1.0);
        const auto all = full_tree(N);
        const double lhs = theta2(all, one, F2, one, F2).value;
        const double rhs = std::pow(lp_norm(F2, 2), 2)
                           - std::pow(lp_norm(martingale_average(F2, Axis::y, 0), 2), 2);
        thetaC = std::max(thetaC, std::abs(lhs - rhs) / std::pow(F2.max_abs(), 2));
        resum = std::max(resum, resummation_residual(F1, F2, F3)
                                    / (F1.max_abs() * F2.max_abs() * F3.max_abs()));
        vanish = std::max(vanish, vanishing_residual(F1, F2, 0.5 * F2.max_abs() + 1e-3));
    }
    const int N3 = std::min(N, 3);
    for (int t = 0; t < std::max(1, o.trials / 4); ++t) {
        const auto F = random_octuple(N3, rng);
        tele3 = std::max(tele3, telescoping3d_residual(random_convex_tree3d(N3, rng), F));
    }
    s.check("product identity", prod, 1e-9);
    s.check("tree telescoping", tele, 1e-9);
    s.check("global telescoping", glob, 1e-9);
    s.check("entwined form of (1,G,1,G)", thetaC, 1e-9);
    s.check("tree resummation", resum, 1e-9);
    s.check("fiber decomposition vanishing", vanish, 1e-10);
    s.check("3d telescoping", tele3, 1e-9);
    const auto fam = build_mollifiers(7, 0, 4);
    s.flag("lattice support identities", check_support_identities(fam).exact());
    Rng crng(o.seed + 1);
    const auto A = random_band_limited(7, 40, 6, crng), B = random_band_limited(7, 40, 6, crng);
    s.check("symbol decomposition identity", decomposition_identity_residual(A, B, fam), 1e-8);
    emit(o, s.text());
    return s.failures() == 0 ? 0 : 1;
}

std::vector<ExponentPair> parse_grid(const std::string& text)
{
    if (text == "default")
        return default_grid();
    std::vector<ExponentPair> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--grid", "expected p:q items separated by commas");
        try {
            out.push_back({parse_exponent(item.substr(0, colon)), parse_exponent(item.substr(colon + 1))});
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("--grid", e.what());
        }
    }
    if (out.empty())
        throw CLI::ValidationError("--grid", "empty exponent grid");
    return out;
}

int run_sweep(const Options& o)
{
    SweepConfig cfg;
    cfg.Ns = {o.N - 2, o.N - 1, o.N};
    if (o.N < 3)
        throw CLI::ValidationError("--N", "sweep needs N >= 3");
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.steps = o.steps;
    cfg.grid = parse_grid(o.grid);
    const auto rep = sweep(cfg);
    if (o.format == "json")
        emit(o, to_json(rep));
    else if (o.format == "svg")
        emit(o, to_svg(rep));
    else
        emit(o, to_csv(rep));
    return 0;
}

int run_counterexamples(const Options& o)
{
    emit(o, growth_csv(growth_report(o.nmax, o.q)));
    return 0;
}

int run_decompose(const Options& o)
{
    Rng rng(o.seed);
    const auto F = random_nonnegative(o.N, rng), G = random_nonnegative(o.N, rng),
               H = random_nonnegative(o.N, rng);
    const auto rep = summation_bound_report(F, G, H, o.p, o.q, o.r);
    const auto dec = triple_decomposition(F, G, H);
    const auto audit = audit_decomposition(dec, F, G, H);
    std::ostringstream os;
    os << "# trees=" << dec.entries.size() << " resummation_residual=" << g(resummation_residual(F, G, H))
       << " audit=" << (audit.ok() ? "ok" : "failed") << '\n'
       << "# tree_sum_ratio=" << g(rep.ratio_trees) << " min_form_ratio=" << g(rep.ratio_min)
       << " single_ratios=" << g(rep.single_ratio[0]) << ',' << g(rep.single_ratio[1]) << ','
       << g(rep.single_ratio[2]) << " region_ratios=" << g(rep.region_ratio[0]) << ','
       << g(rep.region_ratio[1]) << ',' << g(rep.region_ratio[2]) << '\n'
       << level_table_csv(rep);
    emit(o, os.str());
    return audit.ok() ? 0 : 1;
}

int run_cz(const Options& o)
{
    const auto rep = weak_endpoint_experiment(o.p, o.trials, o.N, o.seed);
    std::ostringstream os;
    os << "p,N,trials,max_superlevel,max_exceptional,max_good_superlevel,inclusion_ok,max_vanishing_residual\n"
       << g(rep.p) << ',' << rep.N << ',' << rep.trials << ',' << g(rep.max_superlevel) << ','
       << g(rep.max_exceptional) << ',' << g(rep.max_good_superlevel) << ','
       << (rep.inclusion_ok ? 1 : 0) << ',' << g(rep.max_vanishing_residual) << '\n';
    emit(o, os.str());
    return rep.inclusion_ok && rep.max_vanishing_residual <= 1e-10 ? 0 : 1;
}

int run_continuous(const Options& o)
{
    if (o.L < 4)
        throw CLI::ValidationError("--L", "needs L >= 4");
    const auto fam = build_mollifiers(o.L, 0, o.L - 3);
    const auto sup = check_support_identities(fam);
    Rng rng(o.seed);
    double resid = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        const auto F = random_band_limited(o.L, 1 << (o.L - 2), 6, rng);
        const auto G = random_band_limited(o.L, 1 << (o.L - 2), 6, rng);
        resid = std::max(resid, decomposition_identity_residual(F, G, fam));
    }
    const auto pb = psi_symbol_bounds(fam);
    std::ostringstream os;
    os << "identity,checked,violations,max_deviation\n";
    const char* names[3] = {"vartheta_rho", "rho_sum_one", "rho_sum_zero"};
    for (int i = 0; i < 3; ++i)
        os << names[i] << ',' << sup.checked[i] << ',' << sup.violations[i] << ','
           << g(sup.max_deviation[i]) << '\n';
    os << "# decomposition_residual=" << g(resid) << " Psi_max=" << g(pb.max_abs)
       << " Psi_log_derivative_max=" << g(pb.max_log_derivative) << '\n';
    emit(o, os.str());
    return sup.exact() && resid <= 1e-8 ? 0 : 1;
}

int run_dim3(const Options& o)
{
    const int N = std::min(o.N, 3);
    Rng rng(o.seed);
    double tele = 0.0, l4 = -inf, arrow = -inf;
    for (int t = 0; t < o.trials; ++t) {
        const auto F = random_octuple(N, rng, true);
        const auto tree = random_convex_tree3d(N, rng);
        tele = std::max(tele, telescoping3d_residual(tree, F));
        const auto [lhs, rhs] = box3_l4_check(F[0], DyadicCube::unit());
        l4 = std::max(l4, lhs - rhs);
        for (const auto& a : reduction_chain(tree, F))
            arrow = std::max(arrow, a.lhs - a.rhs);
    }
    std::ostringstream os;
    os << "check,worst\n"
       << "telescoping_residual," << g(tele) << '\n'
       << "box3_minus_l4," << g(l4) << '\n'
       << "arrow_lhs_minus_rhs," << g(arrow) << '\n';
    emit(o, os.str());
    return tele <= 1e-9 && l4 <= 1e-12 && arrow <= 1e-12 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"twisted paraproduct laboratory"};
    app.footer("CSV columns: sweep writes p,q,ratio,trend (ratio = max norm ratio over the\n"
               "resolutions N-2..N, trend = slope of log ratio against N); counterexamples writes\n"
               "n,weak_norm,sup_F,norm_G,ratio,ratio_over_sqrt_n.\n"
               "Exit codes: 0 success, 1 property failure, 2 usage error.");
    app.set_config("--config", "", "key=value configuration file");
    app.require_subcommand(1, 1);
    Options o;
    app.add_option("--N", o.N, "dyadic resolution exponent")->check(CLI::Range(1, 10));
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--trials", o.trials, "random trials")->check(CLI::Range(1, 100000));
    app.add_option("--grid", o.grid, "exponent grid: default or p:q,p:q,...");
    app.add_option("--out", o.out, "output file (stdout when omitted)");
    app.add_option("--format", o.format, "sweep output format")->check(CLI::IsMember({"csv", "json", "svg"}));
    app.add_option("--steps", o.steps, "greedy ascent steps per sweep point")->check(CLI::NonNegativeNumber);
    app.add_option("--p", o.p, "exponent p")->check(CLI::PositiveNumber);
    app.add_option("--q", o.q, "exponent q")->check(CLI::PositiveNumber);
    app.add_option("--r", o.r, "exponent r")->check(CLI::PositiveNumber);
    app.add_option("--nmax", o.nmax, "largest counterexample parameter")->check(CLI::Range(1, 12));
    app.add_option("--L", o.L, "periodic grid exponent")->check(CLI::Range(4, 12));

    int (*action)(const Options&) = nullptr;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        app.add_subcommand(name, help)->fallthrough()->callback([&action, fn] { action = fn; });
    };
    sub("identities", "run every exact-identity residual suite", run_identities);
    sub("sweep", "empirical norm ratios over an exponent grid", run_sweep);
    sub("counterexamples", "growth table of the endpoint counterexample", run_counterexamples);
    sub("decompose", "stopping-time decomposition and summation report", run_decompose);
    sub("cz", "fiber-wise decomposition and weak endpoint experiment", run_cz);
    sub("continuous", "periodic Fourier model identities", run_continuous);
    sub("dim3", "three-dimensional telescoping and reduction chain", run_dim3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return action(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
