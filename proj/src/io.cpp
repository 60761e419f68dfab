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

#include "spakit/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace spakit::io {

using nlohmann::json;

namespace {

void expect_header(const json& j, const char* type) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (j.value("schema", std::string{}) != kSchema)
    throw ParseError(std::string("missing or unsupported schema, expected \"") + kSchema + "\"");
  if (j.value("type", std::string{}) != type)
    throw ParseError(std::string("expected type \"") + type + "\"");
}

double finite_number(const json& v) {
  if (!v.is_number()) throw ParseError("matrix entries must be numbers");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("matrix entries must be finite");
  return x;
}

json hermitian_to_json(const HermitianOperator& h) { return matrix_to_json(h.matrix()); }

HermitianOperator hermitian_from_json(const json& j) {
  return HermitianOperator(matrix_from_json(j).matrix);
}

json spectrum_to_json(const Spectrum& s) {
  return json{{"eigenvalues", s.eigenvalues}, {"min_eigenvalue", s.min_eigenvalue}};
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m, const Metadata& metadata) {
  json data = json::array();
  // + 0.0 turns -0.0 into 0.0
  for (const auto& z : m.entries()) data.push_back({z.real() + 0.0, z.imag() + 0.0});
  json j{{"schema", kSchema}, {"type", "matrix"}, {"dim", m.dim()}, {"data", std::move(data)}};
  j["metadata"] = metadata;
  return j;
}

MatrixFile matrix_from_json(const json& j) {
  expect_header(j, "matrix");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    throw ParseError("matrix file needs a positive integer \"dim\"");
  const auto dim = j["dim"].get<std::size_t>();
  if (dim == 0) throw ParseError("matrix dim must be positive");
  const json& data = j.value("data", json());
  if (!data.is_array() || data.size() != dim * dim)
    throw ParseError("matrix data must hold dim^2 = " + std::to_string(dim * dim) + " entries");
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("matrix entries must be [re, im] pairs");
    entries.emplace_back(finite_number(pair[0]), finite_number(pair[1]));
  }
  Metadata meta;
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) throw ParseError("metadata must be an object");
    for (const auto& [k, v] : j["metadata"].items())
      meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return MatrixFile{ComplexMatrix(dim, std::move(entries)), std::move(meta)};
}

json model_to_json(const MeasurementModel& model) {
  json elements = json::array();
  for (std::size_t j = 0; j < model.size(); ++j) {
    elements.push_back({{"label", model.elements()[j].label},
                        {"operator", hermitian_to_json(model.elements()[j].op)},
                        {"output", hermitian_to_json(model.outputs()[j])}});
  }
  json out{{"schema", kSchema},
           {"type", "measurement_model"},
           {"dim_in", model.dim_in()},
           {"dim_out", model.dim_out()},
           {"elements", std::move(elements)}};
  if (const auto& f = model.failure_element())
    out["failure_element"] = {{"label", f->label}, {"operator", hermitian_to_json(f->op)}};
  else
    out["failure_element"] = nullptr;
  return out;
}

MeasurementModel model_from_json(const json& j) {
  expect_header(j, "measurement_model");
  try {
    const auto din = j.at("dim_in").get<std::size_t>();
    const auto dout = j.at("dim_out").get<std::size_t>();
    std::vector<PovmElement> elements;
    std::vector<HermitianOperator> outputs;
    for (const auto& e : j.at("elements")) {
      elements.push_back(
          PovmElement{hermitian_from_json(e.at("operator")), e.at("label").get<std::size_t>()});
      outputs.push_back(hermitian_from_json(e.at("output")));
    }
    std::optional<PovmElement> failure;
    if (j.contains("failure_element") && !j["failure_element"].is_null()) {
      const auto& f = j["failure_element"];
      failure = PovmElement{hermitian_from_json(f.at("operator")),
                            f.at("label").get<std::size_t>()};
    }
    return MeasurementModel(din, dout, std::move(elements), std::move(outputs),
                            std::move(failure));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed measurement model: ") + e.what());
  }
}

json report_to_json(const ProtocolReport& r) {
  return json{{"schema", kSchema},
              {"type", "protocol_report"},
              {"mode", r.sample_count == 0 ? "exact" : "sampled"},
              {"verdict", to_string(r.verdict)},
              {"spa_spectrum", spectrum_to_json(r.spa_spectrum)},
              {"pt_spectrum", spectrum_to_json(r.pt_spectrum)},
              {"min_pt_eigenvalue", r.pt_spectrum.min_eigenvalue},
              {"margin", r.margin},
              {"moments", r.moments.values},
              {"recovered_eigenvalues", r.recovered_eigenvalues},
              {"roots_consistent", r.roots_consistent},
              {"sample_count", r.sample_count},
              {"seed", r.seed},
              {"outcome_histogram", r.histogram.counts},
              {"failure_slot", r.histogram.has_failure_slot}};
}

json validation_to_json(const ValidationReport& r) {
  json j{{"schema", kSchema},
         {"type", "validation_report"},
         {"passed", r.passed},
         {"sum_defect", r.sum_defect},
         {"element_min_eigenvalues", r.element_min_eigenvalues},
         {"output_trace_defects", r.output_trace_defects},
         {"output_min_eigenvalues", r.output_min_eigenvalues},
         {"violations", r.violations}};
  j["failure_min_eigenvalue"] =
      r.failure_min_eigenvalue ? json(*r.failure_min_eigenvalue) : json(nullptr);
  return j;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

std::pair<std::size_t, std::size_t> choi_dims(const MatrixFile& f) {
  const auto it_in = f.metadata.find("dim_in");
  const auto it_out = f.metadata.find("dim_out");
  if (it_in != f.metadata.end() && it_out != f.metadata.end()) {
    try {
      return {std::stoul(it_in->second), std::stoul(it_out->second)};
    } catch (const std::exception&) {
      throw ParseError("dim_in/dim_out metadata must be integers");
    }
  }
  const std::size_t d = exact_sqrt(f.matrix.dim());
  return {d, d};
}

}  // namespace spakit::io
