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

#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spakit/detect.hpp"
#include "spakit/povm.hpp"

namespace spakit::io {

inline constexpr const char* kSchema = "spa-kit/1";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Metadata = std::map<std::string, std::string>;

struct MatrixFile {
  ComplexMatrix matrix;
  Metadata metadata;
};

// {"schema", "type": "matrix", "dim", "data": [[re, im], ...], "metadata"}
nlohmann::json matrix_to_json(const ComplexMatrix& m, const Metadata& metadata = {});
MatrixFile matrix_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const MeasurementModel& model);
MeasurementModel model_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ProtocolReport& report);
nlohmann::json validation_to_json(const ValidationReport& report);

/// "-" reads stdin / writes stdout.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Parses text as JSON; syntax errors become ParseError.
nlohmann::json parse_json(const std::string& text);

/// Choi dims from "dim_in"/"dim_out" metadata, else a square split.
std::pair<std::size_t, std::size_t> choi_dims(const MatrixFile& f);

}  // namespace spakit::io
