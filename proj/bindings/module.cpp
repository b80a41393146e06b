// SPDX-License-Identifier: Apache-2.0
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "wavedof/channel.hpp"
#include "wavedof/coupling.hpp"
#include "wavedof/emcc.hpp"
#include "wavedof/errors.hpp"
#include "wavedof/grid.hpp"
#include "wavedof/metrics.hpp"
#include "wavedof/pattern.hpp"

namespace py = pybind11;
using namespace wavedof;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wavenumber-domain coupling, EDoF, and capacity core";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  py::class_<Aperture>(m, "Aperture")
      .def(py::init([](double lx, double ly) {
             Aperture a{lx, ly};
             a.validate();
             return a;
           }),
           py::arg("len_x"), py::arg("len_y"))
      .def_readonly("len_x", &Aperture::len_x)
      .def_readonly("len_y", &Aperture::len_y)
      .def("__repr__", [](const Aperture& a) {
        return "Aperture(" + std::to_string(a.len_x) + ", " + std::to_string(a.len_y) + ")";
      });

  py::class_<Cell>(m, "Cell")
      .def_readonly("x0", &Cell::x0)
      .def_readonly("x1", &Cell::x1)
      .def_readonly("y0", &Cell::y0)
      .def_readonly("y1", &Cell::y1)
      .def_readonly("clipped", &Cell::clipped);

  py::class_<WavenumberGrid>(m, "WavenumberGrid")
      .def_readonly("aperture", &WavenumberGrid::aperture)
      .def_readonly("indices", &WavenumberGrid::indices)
      .def_readonly("cells", &WavenumberGrid::cells)
      .def("__len__", &WavenumberGrid::size);

  m.def("build_grid", &build_grid, py::arg("aperture"));
  m.def("eta_upper_bound", &eta_upper_bound, py::arg("tx"), py::arg("rx"));

  py::class_<RadiationPattern>(m, "RadiationPattern")
      .def_static("cos_power", &RadiationPattern::cos_power, py::arg("m"))
      .def_static("hypothetical", &RadiationPattern::hypothetical)
      .def_static("load", &RadiationPattern::load, py::arg("path"))
      .def("gain_angular", &RadiationPattern::gain_angular, py::arg("theta"),
           py::arg("phi"))
      .def("gain_wavenumber", &RadiationPattern::gain_wavenumber, py::arg("kx"),
           py::arg("ky"))
      .def_property_readonly("descriptor", &RadiationPattern::describe);

  py::class_<CouplingSpectrum>(m, "CouplingSpectrum")
      .def_readonly("grid", &CouplingSpectrum::grid)
      .def_readonly("values", &CouplingSpectrum::values)
      .def_readonly("pattern", &CouplingSpectrum::pattern)
      .def_readonly("tol", &CouplingSpectrum::tol)
      .def("total", &CouplingSpectrum::total)
      .def("__len__", [](const CouplingSpectrum& s) { return s.values.size(); });

  m.def("coupling_cos_power", &coupling_cos_power, py::arg("grid"), py::arg("m"),
        py::arg("tol") = kDefaultCouplingTol);
  m.def("coupling_general", &coupling_general, py::arg("grid"), py::arg("pattern"),
        py::arg("tol") = kDefaultCouplingTol);

  py::class_<ArrayGeometry>(m, "ArrayGeometry")
      .def_static("uniform", &ArrayGeometry::uniform, py::arg("aperture"),
                  py::arg("spacing"))
      .def_readonly("aperture", &ArrayGeometry::aperture)
      .def_readonly("spacing", &ArrayGeometry::spacing)
      .def_readonly("positions", &ArrayGeometry::positions)
      .def("__len__", &ArrayGeometry::count);

  m.def("transform_matrix", &transform_matrix, py::arg("geometry"), py::arg("grid"));
  m.def("basis_matrix", &basis_matrix, py::arg("geometry"), py::arg("grid"));

  py::class_<EmccConfig>(m, "EmccConfig")
      .def(py::init<>())
      .def_readwrite("paths", &EmccConfig::paths)
      .def_readwrite("realizations", &EmccConfig::realizations)
      .def_readwrite("seed", &EmccConfig::seed)
      .def_readwrite("ls_regularization", &EmccConfig::ls_regularization)
      .def_readwrite("normal_equations", &EmccConfig::normal_equations);

  py::class_<EmccEstimate>(m, "EmccEstimate")
      .def_readonly("spectrum", &EmccEstimate::spectrum)
      .def_readonly("ci_half_width", &EmccEstimate::ci_half_width);

  m.def("estimate_coupling", &estimate_coupling, py::arg("geometry"), py::arg("grid"),
        py::arg("pattern"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<EdofResult>(m, "EdofResult")
      .def_readonly("eta_e_tx", &EdofResult::eta_e_tx)
      .def_readonly("eta_e_rx", &EdofResult::eta_e_rx)
      .def_readonly("eta_e", &EdofResult::eta_e)
      .def_readonly("gamma", &EdofResult::gamma)
      .def_readonly("eta_u", &EdofResult::eta_u);

  py::class_<CapacityResult>(m, "CapacityResult")
      .def_readonly("mean_bits", &CapacityResult::mean_bits)
      .def_readonly("ci_half_width", &CapacityResult::ci_half_width)
      .def_readonly("trials", &CapacityResult::trials)
      .def_readonly("snr", &CapacityResult::snr);

  m.def("edof_statistical", &edof_statistical, py::arg("tx"), py::arg("rx"),
        py::arg("gamma"));
  m.def("energy_prefix_count", &energy_prefix_count, py::arg("energies"),
        py::arg("gamma"));
  m.def("edof_deterministic", &edof_deterministic, py::arg("spatial_realizations"),
        py::arg("gamma"));
  m.def("ergodic_capacity", &ergodic_capacity, py::arg("tx"), py::arg("rx"),
        py::arg("n_elems_tx"), py::arg("n_elems_rx"), py::arg("snr"), py::arg("trials"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("capacity_with_edof_truncation", &capacity_with_edof_truncation, py::arg("tx"),
        py::arg("rx"), py::arg("n_elems_tx"), py::arg("n_elems_rx"), py::arg("snr"),
        py::arg("trials"), py::arg("seed"), py::arg("eta_e"),
        py::call_guard<py::gil_scoped_release>());

  m.def("draw_wavenumber_channel",
        [](const CouplingSpectrum& tx, const CouplingSpectrum& rx, int count,
           std::uint64_t seed) {
          return draw_wavenumber_channel(tx, rx, count, seed).realizations;
        },
        py::arg("tx"), py::arg("rx"), py::arg("count"), py::arg("seed"));
  m.def("assemble_spatial_channel", &assemble_spatial_channel, py::arg("ha"),
        py::arg("phi_t"), py::arg("phi_r"));
}
