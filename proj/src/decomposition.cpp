#include "twist/decomposition.hpp"

#include "twist/box_forms.hpp"
#include "twist/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace twist {

std::vector<DyadicSquare> all_squares(int N)
{
    std::vector<DyadicSquare> out;
    for (int s = 0; s < N; ++s)
        for (int i = 0; i < (1 << s); ++i)
            for (int j = 0; j < (1 << s); ++j)
                out.push_back(DyadicSquare::make(s, i, j));
    return out;
}

SquareValues box_norm_map(const StepFunction2D& F)
{
    SquareValues out;
    for (const auto& Q : all_squares(F.resolution()))
        out.emplace(Q, box_norm(F, Q));
    return out;
}

SquareValues sup_box_norm_map(const StepFunction2D& F)
{
    SquareValues out = box_norm_map(F);
    // all_squares is ordered coarse to fine, so parents are final before children.
    for (const auto& Q : all_squares(F.resolution()))
        if (Q.scale() > 0)
            out[Q] = std::max(out[Q], out.at(Q.parent()));
    return out;
}

int level_of(double v)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("level_of: needs a positive finite value");
    int e = 0;
    std::frexp(v, &e);
    return e - 1;
}

double LevelFamilies::maximal_measure(int k) const
{
    const auto it = M.find(k);
    if (it == M.end())
        return 0.0;
    double s = 0.0;
    for (const auto& Q : it->second)
        s += Q.area();
    return s;
}

LevelFamilies level_families(const StepFunction2D& F)
{
    if (!F.is_nonnegative())
        throw std::invalid_argument("level_families: F must be nonnegative");
    if (F.max_abs() == 0.0)
        throw std::invalid_argument("level_families: F vanishes identically");
    LevelFamilies out;
    out.sup = sup_box_norm_map(F);
    for (const auto& Q : all_squares(F.resolution())) {
        const double v = out.sup.at(Q);
        if (v == 0.0) {
            out.zero.push_back(Q);
            continue;
        }
        const int k = level_of(v);
        out.P[k].push_back(Q);
        if (Q.scale() == 0 || out.sup.at(Q.parent()) == 0.0 || level_of(out.sup.at(Q.parent())) != k)
            out.M[k].push_back(Q);
    }
    return out;
}

namespace {

using Triple = std::tuple<int, int, int>;

std::optional<Triple> triple_of(const TreeDecomposition& d, const DyadicSquare& Q)
{
    const double a = d.F.sup.at(Q), b = d.G.sup.at(Q), c = d.H.sup.at(Q);
    if (a == 0.0 || b == 0.0 || c == 0.0)
        return std::nullopt;
    return Triple{level_of(a), level_of(b), level_of(c)};
}

} // namespace

TreeDecomposition triple_decomposition(const StepFunction2D& F, const StepFunction2D& G,
                                       const StepFunction2D& H)
{
    require_same_resolution(F, G);
    require_same_resolution(F, H);
    TreeDecomposition d;
    d.F = level_families(F);
    d.G = level_families(G);
    d.H = level_families(H);

    std::map<std::tuple<int, int, int, DyadicSquare>, std::vector<DyadicSquare>> groups;
    for (const auto& Q : all_squares(F.resolution())) {
        const auto t = triple_of(d, Q);
        if (!t) {
            d.unassigned.push_back(Q);
            continue;
        }
        DyadicSquare root = Q;
        while (root.scale() > 0) {
            const auto up = triple_of(d, root.parent());
            if (!up || *up != *t)
                break;
            root = root.parent();
        }
        const auto& [k1, k2, k3] = *t;
        groups[{k1, k2, k3, root}].push_back(Q);
    }
    for (auto& [key, squares] : groups) {
        const auto& [k1, k2, k3, root] = key;
        d.entries.push_back(TreeEntry{k1, k2, k3, ConvexTree::make(squares)});
        if (d.entries.back().root() != root)
            throw ConsistencyError("triple_decomposition: tree root mismatch at " + to_string(root));
    }
    return d;
}

double tree_sum(const TreeDecomposition& dec, const StepFunction2D& F, const StepFunction2D& G,
                const StepFunction2D& H)
{
    double s = 0.0;
    for (const auto& e : dec.entries)
        s += lambda_tree(e.tree, F, G, H);
    return s;
}

double resummation_residual(const StepFunction2D& F, const StepFunction2D& G,
                            const StepFunction2D& H)
{
    const auto dec = triple_decomposition(F, G, H);
    return std::abs(lambda_d(F, G, H) - tree_sum(dec, F, G, H));
}

DecompositionAudit audit_decomposition(const TreeDecomposition& dec, const StepFunction2D& F,
                                       const StepFunction2D& G, const StepFunction2D& H)
{
    DecompositionAudit a;
    const int N = F.resolution();
    std::unordered_map<DyadicSquare, int> seen;
    for (const auto& e : dec.entries)
        for (const auto& Q : e.tree.ordered())
            ++seen[Q];
    for (const auto& Q : dec.unassigned)
        ++seen[Q];
    const auto every = all_squares(N);
    if (seen.size() != every.size())
        a.partition_ok = false;
    for (const auto& Q : every) {
        const auto it = seen.find(Q);
        if (it == seen.end() || it->second != 1)
            a.partition_ok = false;
    }

    const std::array<const StepFunction2D*, 3> fs{&F, &G, &H};
    const std::array<const LevelFamilies*, 3> lf{&dec.F, &dec.G, &dec.H};
    for (std::size_t n = 0; n < dec.entries.size(); ++n) {
        const auto& e = dec.entries[n];
        const std::array<int, 3> ks{e.k1, e.k2, e.k3};
        try {
            (void)ConvexTree::make(e.tree.ordered());
        } catch (const TreeError&) {
            a.convex_ok = false;
        }
        for (std::size_t m = 0; m < dec.entries.size(); ++m) {
            const auto& o = dec.entries[m];
            if (m != n && o.k1 == e.k1 && o.k2 == e.k2 && o.k3 == e.k3
                && (e.root().contains(o.root()) || o.root().contains(e.root())))
                a.disjoint_roots_ok = false;
        }
        for (int f = 0; f < 3; ++f) {
            const double cap = std::ldexp(1.0, ks[static_cast<std::size_t>(f)] + 1);
            for (const auto& Q : e.tree.ordered()) {
                const double v = box_norm(*fs[static_cast<std::size_t>(f)], Q);
                a.max_level_ratio = std::max(a.max_level_ratio, v / cap);
                if (level_of(lf[static_cast<std::size_t>(f)]->sup.at(Q))
                    != ks[static_cast<std::size_t>(f)])
                    a.partition_ok = false;
            }
            for (const auto& L : e.tree.leaves(N)) {
                const double leaf = box_norm(*fs[static_cast<std::size_t>(f)], L);
                const double parent = box_norm(*fs[static_cast<std::size_t>(f)], L.parent());
                const double ratio = parent > 0.0 ? leaf / (2.0 * parent) : (leaf > 0.0 ? inf : 0.0);
                a.max_doubling_ratio = std::max(a.max_doubling_ratio, ratio);
            }
        }
        a.max_single_tree_ratio = std::max(a.max_single_tree_ratio, lambda_tree_ratio(e.tree, F, G, H));
    }
    for (const auto& Q : dec.unassigned) {
        const std::array<DyadicSquare, 1> one{Q};
        a.unassigned_contribution += std::abs(lambda_tree(ConvexTree::make(one), F, G, H));
    }
    return a;
}

namespace {

std::vector<LevelRow> level_rows(const LevelFamilies& lf, const StepFunction2D& F, double p)
{
    const auto M2 = dyadic_maximal_M2(F);
    std::vector<LevelRow> rows;
    for (const auto& [k, squares] : lf.M) {
        LevelRow row;
        row.k = k;
        row.maximal_measure = lf.maximal_measure(k);
        row.weighted = std::exp2(p * k) * row.maximal_measure;
        const double threshold = std::ldexp(1.0, k) * (1.0 - 1e-12);
        std::size_t count = 0;
        for (double v : M2.values())
            if (v >= threshold)
                ++count;
        row.maximal_superlevel = static_cast<double>(count) * F.cell_area();
        rows.push_back(row);
    }
    return rows;
}

} // namespace

SummationReport summation_bound_report(const StepFunction2D& F, const StepFunction2D& G,
                                       const StepFunction2D& H, double p, double q, double r)
{
    for (double e : {p, q, r})
        if (!(e > 2.0) || !std::isfinite(e))
            throw std::invalid_argument("summation_bound_report: exponents must lie in (2, inf)");
    if (std::abs(1.0 / p + 1.0 / q + 1.0 / r - 1.0) > 1e-12)
        throw std::invalid_argument("summation_bound_report: needs 1/p + 1/q + 1/r = 1");

    const auto dec = triple_decomposition(F, G, H);
    SummationReport rep;
    rep.p = p;
    rep.q = q;
    rep.r = r;
    const double nF = lp_norm(F, p), nG = lp_norm(G, q), nH = lp_norm(H, r);
    rep.norm_product = nF * nG * nH;

    for (const auto& e : dec.entries)
        rep.tree_sum += std::ldexp(e.root().area(), e.k1 + e.k2 + e.k3);

    const std::array<const LevelFamilies*, 3> lf{&dec.F, &dec.G, &dec.H};
    const std::array<double, 3> ex{p, q, r};
    const std::array<double, 3> nn{nF, nG, nH};
    // log of 2^{e k} / ||.||^e, used to pick the dominant function per triple.
    auto normalized = [&](int f, int k) {
        const auto i = static_cast<std::size_t>(f);
        return ex[i] * (k * std::log(2.0) - std::log(nn[i]));
    };
    for (const auto& [k1, m1] : dec.F.M)
        for (const auto& [k2, m2] : dec.G.M)
            for (const auto& [k3, m3] : dec.H.M) {
                const double w = std::min({dec.F.maximal_measure(k1), dec.G.maximal_measure(k2),
                                           dec.H.maximal_measure(k3)});
                const double term = std::ldexp(w, k1 + k2 + k3);
                rep.min_form += term;
                const std::array<double, 3> a{normalized(0, k1), normalized(1, k2), normalized(2, k3)};
                const auto top = static_cast<std::size_t>(
                    std::max_element(a.begin(), a.end()) - a.begin());
                rep.region_ratio[top] += term;
            }
    for (auto& v : rep.region_ratio)
        v /= rep.norm_product;
    rep.ratio_trees = rep.tree_sum / rep.norm_product;
    rep.ratio_min = rep.min_form / rep.norm_product;

    const std::array<const StepFunction2D*, 3> fs{&F, &G, &H};
    for (std::size_t f = 0; f < 3; ++f) {
        rep.levels[f] = level_rows(*lf[f], *fs[f], ex[f]);
        double s = 0.0;
        for (const auto& row : rep.levels[f])
            s += row.weighted;
        rep.single_ratio[f] = s / std::pow(nn[f], ex[f]);
    }
    return rep;
}

std::string level_table_csv(const SummationReport& report)
{
    std::ostringstream os;
    os.precision(17);
    os << "function,k,maximal_measure,weighted,maximal_superlevel\n";
    const char* names[3] = {"F", "G", "H"};
    for (int f = 0; f < 3; ++f)
        for (const auto& row : report.levels[f])
            os << names[f] << ',' << row.k << ',' << row.maximal_measure << ',' << row.weighted
               << ',' << row.maximal_superlevel << '\n';
    return os.str();
}

} // namespace twist
