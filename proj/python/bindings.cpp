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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <bit>

namespace py = pybind11;
using namespace twist;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

StepFunction2D to_step(const Array& a)
{
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw std::invalid_argument("expected a square 2D array");
    const auto n = static_cast<std::size_t>(a.shape(0));
    if (!std::has_single_bit(n))
        throw std::invalid_argument("side length must be a power of two");
    const int N = std::countr_zero(n);
    return StepFunction2D(N, std::vector<double>(a.data(), a.data() + n * n));
}

Array to_array(const StepFunction2D& F)
{
    const auto n = static_cast<py::ssize_t>(F.side());
    Array out({n, n});
    std::copy(F.values().begin(), F.values().end(), out.mutable_data());
    return out;
}

DyadicSquare square(int scale, int ix, int iy) { return DyadicSquare::make(scale, ix, iy); }

} // namespace

PYBIND11_MODULE(_twist, m)
{
    m.doc() = "Dyadic twisted paraproduct toolkit";

    m.def("t_d", [](const Array& F, const Array& G) { return to_array(t_d(to_step(F), to_step(G))); },
          "Dyadic twisted paraproduct of two sample grids.");
    m.def("lambda_d", [](const Array& F, const Array& G, const Array& H) {
        return lambda_d(to_step(F), to_step(G), to_step(H));
    });
    m.def("product_identity_residual", [](const Array& F, const Array& G) {
        return product_identity_residual(to_step(F), to_step(G));
    });
    m.def(
        "box_norm", [](const Array& F, int scale, int ix, int iy) { return box_norm(to_step(F), square(scale, ix, iy)); },
        py::arg("F"), py::arg("scale") = 0, py::arg("ix") = 0, py::arg("iy") = 0);
    m.def(
        "box_inner_product",
        [](const Array& F1, const Array& F2, const Array& F3, const Array& F4, int scale, int ix, int iy) {
            return box_inner_product(to_step(F1), to_step(F2), to_step(F3), to_step(F4), square(scale, ix, iy));
        },
        py::arg("F1"), py::arg("F2"), py::arg("F3"), py::arg("F4"), py::arg("scale") = 0, py::arg("ix") = 0,
        py::arg("iy") = 0);
    m.def("global_telescoping_residual", [](const Array& F1, const Array& F2, const Array& F3, const Array& F4) {
        return global_telescoping_residual(to_step(F1), to_step(F2), to_step(F3), to_step(F4));
    });
    m.def("resummation_residual", [](const Array& F, const Array& G, const Array& H) {
        return resummation_residual(to_step(F), to_step(G), to_step(H));
    });
    m.def("vanishing_residual", [](const Array& F, const Array& G, double lambda) {
        return vanishing_residual(to_step(F), to_step(G), lambda);
    });
    m.def("counterexample_linfty_lq", [](int n, int N) {
        const auto c = counterexample_linfty_lq(n, N);
        return py::make_tuple(to_array(c.F), to_array(c.G));
    });
    m.def("counterexample_corner_value", [](int n) {
        const auto c = counterexample_corner_value(n);
        return py::make_tuple(c.min, c.max);
    });
    m.def("growth_csv", [](int nmax, double q) { return growth_csv(growth_report(nmax, q)); });
    m.def("support_identities_exact", [](int L) {
        return check_support_identities(build_mollifiers(L, 0, L - 3)).exact();
    });
    m.def("telescoping3d_residual", [](int N, std::uint64_t seed) {
        Rng rng(seed);
        const auto F = random_octuple(N, rng, true);
        return telescoping3d_residual(random_convex_tree3d(N, rng), F);
    });
    m.def("norm_ratio", [](const Array& F, const Array& G, double p, double q) {
        return norm_ratio(to_step(F), to_step(G), p, q);
    });
    m.def(
        "sweep",
        [](std::vector<int> Ns, int trials, std::uint64_t seed, int steps, std::string format) {
            SweepConfig cfg;
            cfg.Ns = std::move(Ns);
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.steps = steps;
            const auto rep = sweep(cfg);
            if (format == "json")
                return to_json(rep);
            if (format == "svg")
                return to_svg(rep);
            if (format != "csv")
                throw std::invalid_argument("format must be csv, json or svg");
            return to_csv(rep);
        },
        py::arg("Ns") = std::vector<int>{4, 5, 6}, py::arg("trials") = 40, py::arg("seed") = 1,
        py::arg("steps") = 60, py::arg("format") = "csv");
}
