#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tvsph/asymp.hpp"
#include "tvsph/qnum.hpp"
#include "tvsph/semiclassical.hpp"
#include "tvsph/sixj.hpp"
#include "tvsph/sphgeom.hpp"
#include "tvsph/statesum.hpp"
#include "tvsph/trimesh.hpp"

namespace py = pybind11;
using namespace tvsph;

namespace {

SixTuple tuple_from_twice(const std::array<int, 6>& twice) {
    SixTuple t;
    for (int i = 0; i < 6; ++i) t.j[static_cast<size_t>(i)] = Color(twice[static_cast<size_t>(i)]);
    return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "quantum 6j symbols, Turaev-Viro state sums, and spherical "
              "tetrahedron semiclassics";

    py::register_exception<GeometryError>(m, "GeometryError");
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

    m.def(
        "sixj",
        [](const std::array<int, 6>& twice, int r, const std::string& conv) {
            return sixj(tuple_from_twice(twice), Level(r),
                        conv == "classical" ? Convention::Classical
                                            : Convention::TuraevViro);
        },
        py::arg("twice_colors"), py::arg("r"), py::arg("convention") = "tv",
        "6j symbol from six doubled colors (j12,j23,j13,j34,j14,j24)");

    m.def(
        "quantum_integer",
        [](int n, int r) { return quantum_integer(n, Level(r)); },
        py::arg("n"), py::arg("r"));

    m.def(
        "delta_total", [](int r) { return delta_total(Color(0), Level(r)); },
        py::arg("r"));

    py::class_<Triangulation>(m, "Triangulation")
        .def_property_readonly("num_vertices", &Triangulation::num_vertices)
        .def_property_readonly("num_edges", &Triangulation::num_edges)
        .def_property_readonly("num_faces", &Triangulation::num_faces)
        .def_property_readonly("num_tets", &Triangulation::num_tets)
        .def_property_readonly("name", &Triangulation::name);

    m.def("fivecell", &fivecell);
    m.def("load_triangulation", &load_triangulation, py::arg("path"));
    m.def(
        "validate",
        [](const Triangulation& t) { return validate(t); },
        py::arg("triangulation"), "list of invariant violations; empty when valid");
    m.def(
        "pachner_23",
        [](const Triangulation& t, const std::array<int, 3>& f) {
            return pachner_23(t, {f[0], f[1], f[2]}).triangulation;
        },
        py::arg("triangulation"), py::arg("face"));
    m.def(
        "pachner_14",
        [](const Triangulation& t, const std::array<int, 4>& tet) {
            return pachner_14(t, tet).triangulation;
        },
        py::arg("triangulation"), py::arg("tet"));

    m.def(
        "tv",
        [](const Triangulation& t, int r, int threads, std::int64_t budget) {
            SixJEvaluator ev{Level(r)};
            TvOptions opts;
            opts.threads = threads;
            opts.node_budget = budget;
            const StateSumResult res = tv(t, ev, opts);
            return py::make_tuple(res.value, res.admissible_count);
        },
        py::arg("triangulation"), py::arg("r"), py::arg("threads") = 1,
        py::arg("node_budget") = std::int64_t{200'000'000},
        "Turaev-Viro value and admissible-coloring count");

    m.def(
        "spherical_volume",
        [](const std::array<double, 6>& l, double tol) {
            return spherical_volume(EdgeLengths6{l}, tol);
        },
        py::arg("lengths"), py::arg("tol") = 1e-8);
    m.def(
        "dihedral_angles",
        [](const std::array<double, 6>& l) { return dihedral_angles(EdgeLengths6{l}); },
        py::arg("lengths"));
    m.def(
        "gram_det",
        [](const std::array<double, 6>& l) { return gram_det(EdgeLengths6{l}); },
        py::arg("lengths"));

    m.def(
        "asymptotic_ratio",
        [](const std::array<int, 6>& twice, int r, int kmin, int kmax, int window) {
            const SeriesSummary s =
                compare_series(tuple_from_twice(twice), r, kmin, kmax, window);
            return py::make_tuple(s.summary_ratio, s.window_ratios);
        },
        py::arg("twice_colors"), py::arg("r"), py::arg("kmin"), py::arg("kmax"),
        py::arg("window") = 20,
        "windowed RMS of (exact - estimate) over the envelope");

    m.def(
        "normalization_value",
        [](const std::array<double, 6>& context, int ab_slot, double tol) {
            return normalization_value(EdgeLengths6{context}, ab_slot, tol);
        },
        py::arg("context"), py::arg("ab_slot") = 0, py::arg("tol") = 1e-9);
    m.def("delinfty_value", &delinfty_value, py::arg("l_a"), py::arg("tol") = 1e-9,
          py::arg("swap_order") = false);
    m.def(
        "verify_sjac",
        [](std::uint64_t seed, int count) {
            const SjacReport rep = verify_sjac(seed, count);
            return py::make_tuple(rep.max_rel_dev, rep.resolved_sign, rep.resampled);
        },
        py::arg("seed") = 1, py::arg("count") = 100);
    m.def("invariant_s3_total", [] { return invariant_s3().total; },
          "I(S^3) by the reduction method");
}
