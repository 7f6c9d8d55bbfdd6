#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waveset/demo.hpp"
#include "waveset/io.hpp"
#include "waveset/svg.hpp"

namespace py = pybind11;
using namespace waveset;

namespace {

Region region_from_loops(const std::vector<std::vector<std::pair<double, double>>>& loops) {
    std::vector<std::vector<Point>> pts;
    pts.reserve(loops.size());
    for (const auto& loop : loops) {
        std::vector<Point> l;
        l.reserve(loop.size());
        for (const auto& [x, y] : loop) l.push_back({x, y});
        pts.push_back(std::move(l));
    }
    return Region::from_vertex_loops(pts);
}

std::vector<std::vector<std::pair<double, double>>> region_loops(const Region& r) {
    std::vector<std::vector<std::pair<double, double>>> out;
    for (const ConvexPolygon& p : r.pieces()) {
        std::vector<std::pair<double, double>> loop;
        for (const Point& v : p.vertices()) loop.emplace_back(v.x, v.y);
        out.push_back(std::move(loop));
    }
    return out;
}

Mat2 mat_from(const std::array<std::array<double, 2>, 2>& rows) {
    return {rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "planar wavelet-set construction and verification";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<construction_error>(m, "ConstructionError");
    py::register_exception<precondition_error>(m, "PreconditionError");

    py::class_<Mat2>(m, "Mat2")
        .def(py::init([](double a, double b, double c, double d) { return Mat2{a, b, c, d}; }))
        .def_static("identity", &Mat2::identity)
        .def_static("diag", &Mat2::diag)
        .def_static("rotation", &Mat2::rotation)
        .def_static("scalar", &Mat2::scalar)
        .def("det", &Mat2::det)
        .def("transpose", &Mat2::transpose)
        .def("inverse", &Mat2::inverse, py::arg("det_tol") = 1e-12)
        .def("pow", &Mat2::pow, py::arg("n"), py::arg("det_tol") = 1e-12)
        .def("__matmul__", &Mat2::operator*)
        .def("rows", [](const Mat2& s) {
            return std::array<std::array<double, 2>, 2>{{{s.a, s.b}, {s.c, s.d}}};
        });

    py::class_<Region>(m, "Region")
        .def(py::init(&region_from_loops), py::arg("polygons"))
        .def_static("rect", &Region::rect)
        .def_property_readonly("area", &Region::area)
        .def_property_readonly("piece_count", &Region::piece_count)
        .def("polygons", &region_loops)
        .def("contains", [](const Region& r, double x, double y) {
            return r.contains({x, y});
        });

    py::class_<Lattice>(m, "Lattice")
        .def(py::init([](const std::array<std::array<double, 2>, 2>& basis) {
                 return Lattice{mat_from(basis)};
             }),
             py::arg("basis"))
        .def_property_readonly("basis", [](const Lattice& l) {
            return std::array<std::array<double, 2>, 2>{
                {{l.basis.a, l.basis.b}, {l.basis.c, l.basis.d}}};
        });

    py::class_<DilationSpec>(m, "DilationSpec")
        .def(py::init([](int rotation_order, const std::array<std::array<double, 2>, 2>& base,
                         std::pair<int, int> power_range, const std::string& order) {
                 DilationSpec spec;
                 spec.rotation_order = rotation_order;
                 spec.expansive_base = mat_from(base);
                 spec.n_min = power_range.first;
                 spec.n_max = power_range.second;
                 spec.order = order == "powers-then-rotations"
                                  ? FactorOrder::PowersThenRotations
                                  : FactorOrder::RotationsThenPowers;
                 return spec;
             }),
             py::arg("rotation_order"), py::arg("expansive_base"), py::arg("power_range"),
             py::arg("order") = "rotations-then-powers");

    py::class_<TilingReport>(m, "TilingReport")
        .def_readonly("total_overlap", &TilingReport::total_overlap)
        .def_readonly("max_pairwise_overlap", &TilingReport::max_pairwise_overlap)
        .def_readonly("gap_area", &TilingReport::gap_area)
        .def_readonly("window_area", &TilingReport::window_area)
        .def_readonly("copies", &TilingReport::copies)
        .def_property_readonly("passed", [](const TilingReport& r) { return r.pass; });

    py::class_<SpectralReport>(m, "SpectralReport")
        .def_readonly("max_offdiag", &SpectralReport::max_offdiag)
        .def_readonly("diag_deviation", &SpectralReport::diag_deviation)
        .def_property_readonly("passed", [](const SpectralReport& r) { return r.pass; });

    py::class_<WaveletReport>(m, "WaveletReport")
        .def_readonly("cross_dilation_overlap", &WaveletReport::cross_dilation_overlap)
        .def_property_readonly("passed", [](const WaveletReport& r) { return r.pass; });

    py::class_<ExchangeStep>(m, "ExchangeStep")
        .def_readonly("iteration", &ExchangeStep::iteration)
        .def_readonly("dilation_index", &ExchangeStep::dilation_index)
        .def_readonly("dilation_power", &ExchangeStep::dilation_power)
        .def_property_readonly("translation",
                               [](const ExchangeStep& s) {
                                   return std::make_pair(s.translation.x, s.translation.y);
                               })
        .def_property_readonly("piece", [](const ExchangeStep& s) { return s.piece; });

    py::class_<ConstructionTrace>(m, "ConstructionTrace")
        .def_readonly("steps", &ConstructionTrace::steps)
        .def_readonly("residual_area", &ConstructionTrace::residual_area)
        .def_readonly("result", &ConstructionTrace::result)
        .def_readonly("stages", &ConstructionTrace::stages)
        .def_readonly("converged", &ConstructionTrace::converged);

    // geometry
    m.def("area", [](const Region& r) { return r.area(); });
    m.def(
        "affine_image",
        [](const Region& r, const std::array<std::array<double, 2>, 2>& linear,
           std::pair<double, double> shift) {
            return affine_image(r, AffineMap{mat_from(linear), {shift.first, shift.second}});
        },
        py::arg("region"), py::arg("linear"), py::arg("shift") = std::make_pair(0.0, 0.0));
    m.def("region_union", [](const Region& a, const Region& b) { return region_union(a, b); });
    m.def("region_intersect",
          [](const Region& a, const Region& b) { return region_intersect(a, b); });
    m.def("region_subtract",
          [](const Region& a, const Region& b) { return region_subtract(a, b); });
    m.def(
        "indicator_fourier",
        [](const Region& r, double kx, double ky) { return indicator_fourier(r, {kx, ky}); },
        py::arg("region"), py::arg("kx"), py::arg("ky"));
    m.def("raster_area",
          [](const Region& r, const Region& window, int resolution) {
              return raster_area(r, window, resolution);
          });
    m.def("monte_carlo_area", [](const Region& r, const Region& window, std::uint64_t samples,
                                 std::uint64_t seed) {
        const MonteCarloEstimate e = monte_carlo_area(r, window, samples, seed);
        return std::make_pair(e.estimate, e.stderr_);
    });

    // dilation machinery
    m.def("is_expansive",
          [](const std::array<std::array<double, 2>, 2>& rows) {
              return is_expansive(mat_from(rows));
          });
    m.def("enumerate_dilations", [](const DilationSpec& spec) {
        const EnumeratedFamily f = enumerate_dilations(spec);
        std::vector<std::array<std::array<double, 2>, 2>> out;
        for (const Mat2& mm : f.matrices) {
            out.push_back({{{mm.a, mm.b}, {mm.c, mm.d}}});
        }
        return std::make_pair(out, f.duplicate_warning);
    });
    m.def("dual_lattice", [](const Lattice& l) { return dual_lattice(l); });
    m.def("lattice_points", [](const Lattice& l, const Region& window) {
        std::vector<std::pair<double, double>> out;
        for (const Point& p : lattice_points(l, window)) out.emplace_back(p.x, p.y);
        return out;
    });

    // constructions
    m.def("construct_diag_rot", [](int J) { return construct_diag_rot(J); }, py::arg("J") = 10);
    m.def("construct_rot_scale",
          [](double a, int mm, int max_iters, double tol) {
              return construct_rot_scale(a, mm, max_iters, tol);
          },
          py::arg("a") = 2.0, py::arg("m") = 4, py::arg("max_iters") = 48,
          py::arg("tol") = 1e-5);
    m.def("dls_exchange",
          [](const Region& E, const Region& F, const DilationSpec& dils, const Lattice& lat,
             int max_iters, double tol) {
              return dls_exchange(E, F, dils, lat, max_iters, tol);
          },
          py::arg("E"), py::arg("F"), py::arg("dils"), py::arg("lat"),
          py::arg("max_iters") = 48, py::arg("tol") = 1e-6);

    // verification
    m.def("check_additive_tiling",
          [](const Region& omega, const Lattice& lat, const Region& window, double tol) {
              return check_additive_tiling(omega, lat, window, tol);
          });
    m.def("check_mult_tiling",
          [](const Region& omega, const DilationSpec& spec, const Region& window, double tol) {
              const EnumeratedFamily f = enumerate_dilations(spec);
              return check_mult_tiling(omega, f.matrices, window, tol);
          });
    m.def("check_spectral",
          [](const Region& omega, const Lattice& lat, const std::string& route, int K,
             double tol) {
              return check_spectral(omega, lat,
                                    route == "fuglede-tiling" ? SpectralRoute::FugledeTiling
                                                              : SpectralRoute::GramMatrix,
                                    K, tol);
          },
          py::arg("omega"), py::arg("lat"), py::arg("route") = "gram-matrix", py::arg("K") = 3,
          py::arg("tol") = 1e-4);
    m.def("check_wavelet_system",
          [](const Region& omega, const DilationSpec& spec, const Lattice& lat, int K,
             const Region& window, double tol) {
              const EnumeratedFamily f = enumerate_dilations(spec);
              return check_wavelet_system(omega, f.matrices, lat, K, window, tol);
          });
    m.def("parseval_test",
          [](const Region& omega, const DilationSpec& spec, const Lattice& lat,
             const Region& target, int K) {
              const EnumeratedFamily f = enumerate_dilations(spec);
              return parseval_test(omega, f.matrices, lat, target, K);
          });

    m.def("render_svg", [](const Region& r, const std::string& path) {
        render_svg({{r, ""}}, path);
    });

    m.attr("__version__") = "0.2.0";
}
