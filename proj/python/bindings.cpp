// Copyright 2026 The spa-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spakit/detect.hpp"
#include "spakit/io.hpp"
#include "spakit/rng.hpp"
#include "spakit/spa.hpp"

namespace py = pybind11;
using namespace spakit;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw DimensionError("expected a square 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return ComplexMatrix(n, std::vector<Complex>(a.data(), a.data() + n * n));
}

CArray to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  CArray out({n, n});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

Subsystem subsystem(int index) {
  if (index == 0) return Subsystem::First;
  if (index == 1) return Subsystem::Second;
  throw py::value_error("subsystem index must be 0 or 1");
}

py::dict report_dict(const ProtocolReport& r) {
  return py::module_::import("json").attr("loads")(io::report_to_json(r).dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structural physical approximations, measure-and-prepare POVMs and "
            "direct entanglement detection";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);

  m.def("kron", [](const CArray& a, const CArray& b) {
    return to_array(kron(to_matrix(a), to_matrix(b)));
  });
  m.def(
      "partial_trace",
      [](const CArray& a, std::size_t da, std::size_t db, int over) {
        return to_array(partial_trace(to_matrix(a), da, db, subsystem(over)));
      },
      py::arg("m"), py::arg("d_a"), py::arg("d_b"), py::arg("over") = 1);
  m.def(
      "partial_transpose",
      [](const CArray& a, std::size_t da, std::size_t db, int on) {
        return to_array(partial_transpose(to_matrix(a), da, db, subsystem(on)));
      },
      py::arg("m"), py::arg("d_a"), py::arg("d_b"), py::arg("on") = 1);
  m.def("hermitian_eig", [](const CArray& a) {
    return hermitian_eig(HermitianOperator(to_matrix(a))).eigenvalues;
  });

  py::class_<ChoiOperator>(m, "ChoiOperator")
      .def_property_readonly("matrix", [](const ChoiOperator& c) { return to_array(c.matrix()); })
      .def_property_readonly("dim_in", &ChoiOperator::dim_in)
      .def_property_readonly("dim_out", &ChoiOperator::dim_out)
      .def("apply", [](const ChoiOperator& c, const CArray& x) {
        return to_array(apply(c, to_matrix(x)));
      })
      .def("is_cp", [](const ChoiOperator& c) { return is_cp(c).psd; })
      .def("is_trace_preserving", [](const ChoiOperator& c) {
        return is_trace_preserving(c).preserving;
      });

  py::class_<SpaResult>(m, "SpaResult")
      .def_readonly("choi", &SpaResult::choi)
      .def_readonly("noise_weight", &SpaResult::noise_weight)
      .def_readonly("signal_weight", &SpaResult::signal_weight);

  m.def("choi_of_map", [](const std::string& name, std::size_t d) {
    if (name == "identity") return choi_of_map(MapSpec::identity(d));
    if (name == "transpose") return choi_of_map(MapSpec::transpose(d));
    if (name == "depolarize") return choi_of_map(MapSpec::depolarize(d, d));
    if (name == "pt")
      return choi_of_map(MapSpec::tensor(MapSpec::identity(d), MapSpec::transpose(d)));
    throw py::value_error("unknown map '" + name + "'");
  }, py::arg("name"), py::arg("d") = 2);
  m.def("spa_partial_transpose", &spa_partial_transpose, py::arg("d") = 2);
  m.def("spa_general", &spa_general);
  m.def("choi_R", &choi_R);
  m.def("spa_rho_square", &spa_rho_square);
  m.def("success_probability", [](const CArray& rho) {
    return success_probability(DensityMatrix(to_matrix(rho)));
  });

  py::class_<MeasurementModel>(m, "MeasurementModel")
      .def_property_readonly("size", &MeasurementModel::size)
      .def_property_readonly("dim_in", &MeasurementModel::dim_in)
      .def_property_readonly("dim_out", &MeasurementModel::dim_out)
      .def("elements", [](const MeasurementModel& mm) {
        py::list out;
        for (const auto& e : mm.elements()) out.append(to_array(e.op.matrix()));
        return out;
      })
      .def("outputs", [](const MeasurementModel& mm) {
        py::list out;
        for (const auto& o : mm.outputs()) out.append(to_array(o.matrix()));
        return out;
      })
      .def("to_json", [](const MeasurementModel& mm) { return io::model_to_json(mm).dump(); });

  m.def("build_ps_model", &build_ps_model);
  m.def("simulate_expectation", [](const MeasurementModel& mm, const CArray& rho) {
    const Expectation ex = simulate_expectation(mm, DensityMatrix(to_matrix(rho)));
    return py::make_tuple(ex.probabilities, to_array(ex.expected_output));
  });
  m.def("validate_model", [](const MeasurementModel& mm) { return validate_model(mm).passed; });
  m.def("informational_completeness", [](const MeasurementModel& mm) {
    const auto c = informational_completeness(mm);
    return py::make_tuple(c.complete, c.rank);
  });

  m.def("moments", [](const CArray& rho, std::size_t n_max) {
    return moments(HermitianOperator(to_matrix(rho)), n_max).values;
  });
  m.def(
      "eigenvalues_from_moments",
      [](const std::vector<double>& mu, std::size_t dim, double imag_tol) {
        const auto r = eigenvalues_from_moments(MomentVector{mu}, dim, imag_tol);
        if (!r.consistent)
          throw py::value_error("moments are inconsistent with a Hermitian spectrum");
        return r.eigenvalues;
      },
      py::arg("mu"), py::arg("dim"), py::arg("imag_tol") = kImagTolExact);
  m.def("invert_ps", [](const CArray& rho_out) {
    return to_array(invert_ps(HermitianOperator(to_matrix(rho_out))).matrix());
  });
  m.def("verdict_exact", [](const CArray& rho) {
    return report_dict(verdict_exact(DensityMatrix(to_matrix(rho))));
  });
  m.def(
      "verdict_sampled",
      [](const CArray& rho, std::uint64_t n, std::uint64_t seed, std::size_t chunks) {
        DetectOptions opts;
        opts.chunks = chunks;
        return report_dict(
            verdict_sampled(DensityMatrix(to_matrix(rho)), build_ps_model(), n, seed, opts));
      },
      py::arg("rho"), py::arg("n_samples"), py::arg("seed") = 0, py::arg("chunks") = 1);
  m.def("werner_state", [](double p) { return to_array(werner_state(p).matrix()); });
}
