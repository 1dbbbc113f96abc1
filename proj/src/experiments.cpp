#include "twist/experiments.hpp"

#include "twist/counterexamples.hpp"
#include "twist/paraproduct.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace twist {

std::vector<ExponentPair> default_grid()
{
    return {{3, 3}, {4, 4}, {2.5, 2.5}, {4, 2.5}, {inf, 2}};
}

double output_exponent(double p, double q)
{
    if (std::isinf(p))
        return q;
    if (std::isinf(q))
        return p;
    return p * q / (p + q);
}

double norm_ratio(const StepFunction2D& F, const StepFunction2D& G, double p, double q)
{
    const double den = lp_norm(F, p) * lp_norm(G, q);
    if (!(den > 0.0))
        return 0.0;
    return lp_norm(t_d(F, G), output_exponent(p, q)) / den;
}

double norm_ratio_search(double p, double q, int N, int trials, int steps, Rng& rng)
{
    StepFunction2D bestF, bestG;
    double best = -1.0;
    auto consider = [&](const StepFunction2D& F, const StepFunction2D& G) {
        const double r = norm_ratio(F, G, p, q);
        if (r > best) {
            best = r;
            bestF = F;
            bestG = G;
        }
    };
    if (std::isinf(p)) {
        const auto cx = counterexample_linfty_lq(N, N);
        consider(cx.F, cx.G);
    }
    for (int t = 0; t < trials; ++t) {
        const auto F = random_nonnegative(N, rng);
        const auto G = random_nonnegative(N, rng);
        consider(F, G);
    }
    const int side = 1 << N;
    std::uniform_int_distribution<int> cell(0, side - 1);
    for (int s = 0; s < steps; ++s) {
        const bool onF = (s % 2) == 0;
        const int i = cell(rng), j = cell(rng);
        const StepFunction2D& base = onF ? bestF : bestG;
        const double v = base(i, j);
        double gain = best;
        StepFunction2D winner;
        for (double candidate : {2.0 * v + 0.5, 0.5 * v, 0.0, v + 1.0}) {
            if (candidate == v)
                continue;
            StepFunction2D trial = base;
            trial(i, j) = candidate;
            const double r = onF ? norm_ratio(trial, bestG, p, q) : norm_ratio(bestF, trial, p, q);
            if (r > gain) {
                gain = r;
                winner = std::move(trial);
            }
        }
        if (gain > best) {
            best = gain;
            (onF ? bestF : bestG) = std::move(winner);
        }
    }
    return std::max(best, 0.0);
}

double trend_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("trend_slope: need at least two points");
    double mx = 0, my = 0;
    std::vector<double> ly;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0))
            throw std::invalid_argument("trend_slope: values must be positive");
        ly.push_back(std::log(y[i]));
        mx += x[i];
        my += ly.back();
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (ly[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

bool operator==(const SweepReport& a, const SweepReport& b)
{
    auto same_cfg = [](const SweepConfig& x, const SweepConfig& y) {
        if (x.Ns != y.Ns || x.trials != y.trials || x.seed != y.seed || x.steps != y.steps
            || x.grid.size() != y.grid.size())
            return false;
        for (std::size_t i = 0; i < x.grid.size(); ++i)
            if (x.grid[i].p != y.grid[i].p || x.grid[i].q != y.grid[i].q)
                return false;
        return true;
    };
    if (!same_cfg(a.config, b.config) || a.rows.size() != b.rows.size())
        return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& r = a.rows[i];
        const auto& s = b.rows[i];
        if (r.p != s.p || r.q != s.q || r.Ns != s.Ns || r.ratios != s.ratios || r.ratio != s.ratio
            || r.trend != s.trend || r.trials != s.trials)
            return false;
    }
    return true;
}

SweepReport sweep(const SweepConfig& config)
{
    if (config.Ns.size() < 2)
        throw std::invalid_argument("sweep: need at least two resolutions");
    SweepReport rep;
    rep.config = config;
    const auto grid = config.grid.empty() ? default_grid() : config.grid;
    rep.config.grid = grid;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        SweepRow row;
        row.p = grid[g].p;
        row.q = grid[g].q;
        row.trials = config.trials;
        row.Ns = config.Ns;
        std::vector<double> xs;
        for (int N : config.Ns) {
            std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                              static_cast<std::uint32_t>(config.seed >> 32),
                              static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(N)};
            Rng rng(seq);
            row.ratios.push_back(norm_ratio_search(row.p, row.q, N, config.trials, config.steps, rng));
            xs.push_back(N);
        }
        row.ratio = *std::max_element(row.ratios.begin(), row.ratios.end());
        row.trend = trend_slope(xs, row.ratios);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string format_exponent(double p)
{
    if (std::isinf(p))
        return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

double parse_exponent(const std::string& s)
{
    if (s == "inf" || s == "infinity" || s == "Inf")
        return inf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent: " + s);
    }
    if (used != s.size() || !(v > 0.0))
        throw std::invalid_argument("bad exponent: " + s);
    return v;
}

namespace {

std::string g17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string to_csv(const SweepReport& report)
{
    std::string out = "p,q,ratio,trend\n";
    for (const auto& r : report.rows)
        out += format_exponent(r.p) + ',' + format_exponent(r.q) + ',' + g17(r.ratio) + ','
               + g17(r.trend) + '\n';
    return out;
}

std::string to_json(const SweepReport& report)
{
    using nlohmann::json;
    json cfg;
    cfg["Ns"] = report.config.Ns;
    cfg["trials"] = report.config.trials;
    cfg["seed"] = report.config.seed;
    cfg["steps"] = report.config.steps;
    cfg["grid"] = json::array();
    for (const auto& e : report.config.grid)
        cfg["grid"].push_back({format_exponent(e.p), format_exponent(e.q)});
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"p", format_exponent(r.p)},
                        {"q", format_exponent(r.q)},
                        {"Ns", r.Ns},
                        {"ratios", r.ratios},
                        {"ratio", r.ratio},
                        {"trend", r.trend},
                        {"trials", r.trials}});
    return json{{"config", cfg}, {"rows", rows}}.dump(2) + "\n";
}

SweepReport sweep_from_json(const std::string& text)
{
    using nlohmann::json;
    const auto j = json::parse(text);
    SweepReport rep;
    const auto& cfg = j.at("config");
    rep.config.Ns = cfg.at("Ns").get<std::vector<int>>();
    rep.config.trials = cfg.at("trials").get<int>();
    rep.config.seed = cfg.at("seed").get<std::uint64_t>();
    rep.config.steps = cfg.at("steps").get<int>();
    for (const auto& e : cfg.at("grid"))
        rep.config.grid.push_back({parse_exponent(e.at(0).get<std::string>()),
                                   parse_exponent(e.at(1).get<std::string>())});
    for (const auto& r : j.at("rows")) {
        SweepRow row;
        row.p = parse_exponent(r.at("p").get<std::string>());
        row.q = parse_exponent(r.at("q").get<std::string>());
        row.Ns = r.at("Ns").get<std::vector<int>>();
        row.ratios = r.at("ratios").get<std::vector<double>>();
        row.ratio = r.at("ratio").get<double>();
        row.trend = r.at("trend").get<double>();
        row.trials = r.at("trials").get<int>();
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string to_svg(const SweepReport& report, double bounded_slope)
{
    constexpr double size = 400.0, pad = 40.0;
    auto X = [&](double a) { return pad + a * size; };
    auto Y = [&](double b) { return pad + (1.0 - b) * size; };
    std::ostringstream os;
    os.precision(6);
    const double total = size + 2 * pad;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total
       << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n";
    os << "<rect x=\"" << X(0) << "\" y=\"" << Y(1) << "\" width=\"" << size << "\" height=\"" << size
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    // 1/p < 1/2, 1/q < 1/2, 1/p + 1/q > 1/2
    os << "<polygon points=\"" << X(0) << ',' << Y(0.5) << ' ' << X(0.5) << ',' << Y(0.5) << ' '
       << X(0.5) << ',' << Y(0) << "\" fill=\"#dde8f5\" stroke=\"#336\"/>\n";
    os << "<text x=\"" << X(0) - 14 << "\" y=\"" << Y(0.5) + 4 << "\">A</text>\n";
    os << "<text x=\"" << X(0.5) + 4 << "\" y=\"" << Y(0.5) - 4 << "\">B</text>\n";
    os << "<text x=\"" << X(0.5) - 4 << "\" y=\"" << Y(0) + 16 << "\">C</text>\n";
    os << "<text x=\"" << X(0.5) - 10 << "\" y=\"" << total - 8 << "\">1/p</text>\n";
    os << "<text x=\"4\" y=\"" << Y(0.5) << "\">1/q</text>\n";
    for (const auto& r : report.rows) {
        const double a = std::isinf(r.p) ? 0.0 : 1.0 / r.p;
        const double b = std::isinf(r.q) ? 0.0 : 1.0 / r.q;
        const bool bounded = r.trend < bounded_slope;
        os << "<circle cx=\"" << X(a) << "\" cy=\"" << Y(b) << "\" r=\"5\" stroke=\"black\" fill=\""
           << (bounded ? "#2a7" : "white") << "\"><title>p=" << format_exponent(r.p)
           << " q=" << format_exponent(r.q) << " ratio=" << r.ratio << " trend=" << r.trend
           << "</title></circle>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace twist
