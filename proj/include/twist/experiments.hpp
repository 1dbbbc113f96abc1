#pragma once

#include "twist/dyadic.hpp"
#include "twist/random.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace twist {

struct ExponentPair {
    double p = 2.0;
    double q = 2.0;  ///< either may be inf
};

struct SweepConfig {
    std::vector<int> Ns{4, 5, 6};
    int trials = 40;
    std::uint64_t seed = 1;
    std::vector<ExponentPair> grid;
    int steps = 60;  ///< greedy ascent steps per (p, q, N)
};

/// The pairs (3,3), (4,4), (2.5,2.5), (4,2.5) and (inf,2).
std::vector<ExponentPair> default_grid();

/// pq/(p+q), or the finite exponent when the other is infinite.
double output_exponent(double p, double q);

/// ||T_d(F,G)||_r / (||F||_p ||G||_q) with r = output_exponent(p, q); 0 if the
/// denominator vanishes.
double norm_ratio(const StepFunction2D& F, const StepFunction2D& G, double p, double q);

/// Max ratio over `trials` random nonnegative pairs at resolution N, refined by
/// greedy single-cell moves. For p = inf the first counterexample at n = N is
/// added to the candidates. Deterministic in rng.
double norm_ratio_search(double p, double q, int N, int trials, int steps, Rng& rng);

/// Least-squares slope of log(y) against x; needs at least two positive points.
double trend_slope(const std::vector<double>& x, const std::vector<double>& y);

struct SweepRow {
    double p = 0.0;
    double q = 0.0;
    std::vector<int> Ns;
    std::vector<double> ratios;  ///< max ratio per N
    double ratio = 0.0;          ///< max over N
    double trend = 0.0;          ///< slope of log ratio against N
    int trials = 0;
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepRow> rows;

    friend bool operator==(const SweepReport& a, const SweepReport& b);
};

SweepReport sweep(const SweepConfig& config);

/// Header p,q,ratio,trend; inf written as "inf"; 17 significant digits.
std::string to_csv(const SweepReport& report);
std::string to_json(const SweepReport& report);
SweepReport sweep_from_json(const std::string& text);
/// (1/p, 1/q) unit square with triangle ABC and one marker per row, filled
/// when the trend is below `bounded_slope`.
std::string to_svg(const SweepReport& report, double bounded_slope = 0.1);

/// Parses "inf" / "infinity" or a number > 0 (std::invalid_argument otherwise).
double parse_exponent(const std::string& s);
std::string format_exponent(double p);

} // namespace twist
