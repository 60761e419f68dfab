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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "spakit/io.hpp"
#include "spakit/spa.hpp"
#include "testutil.hpp"

using namespace spakit;
using namespace spakit::testing;
using nlohmann::json;

TEST_CASE("matrix round trip is exact") {
  auto rng = stream(51);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix m = random_matrix(1 + t % 8, rng);
    const std::string text = io::matrix_to_json(m, {{"k", "v"}}).dump(2);
    const io::MatrixFile back = io::matrix_from_json(io::parse_json(text));
    CHECK(back.matrix == m);
    CHECK(back.metadata.at("k") == "v");
  }
  const ComplexMatrix ps = spa_partial_transpose(2).choi.matrix();
  CHECK(io::matrix_from_json(io::parse_json(io::matrix_to_json(ps).dump())).matrix == ps);
}

TEST_CASE("matrix layout") {
  const ComplexMatrix m{{1.0, Complex(0.0, -0.5)}, {Complex(0.0, 0.5), 2.0}};
  const json j = io::matrix_to_json(m);
  CHECK(j["schema"] == "spa-kit/1");
  CHECK(j["type"] == "matrix");
  CHECK(j["dim"] == 2);
  REQUIRE(j["data"].size() == 4);
  CHECK(j["data"][1][0] == 0.0);
  CHECK(j["data"][1][1] == -0.5);
  CHECK(j["data"][2][1] == 0.5);
}

TEST_CASE("malformed matrices are rejected") {
  const auto good = io::matrix_to_json(ComplexMatrix::identity(2));
  auto broken = [&](auto edit) {
    json j = good;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(io::parse_json("{not json"), io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(json::array()), io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j.erase("schema"); })),
                  io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["schema"] = "spa-kit/0"; })),
                  io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["type"] = "protocol_report"; })),
                  io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["dim"] = 3; })), io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["dim"] = -2; })), io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["dim"] = 0; })), io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["data"][0] = json{1.0}; })),
                  io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["data"][0][0] = "one"; })),
                  io::ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(broken([](json& j) { j["metadata"] = 3; })),
                  io::ParseError);
}

TEST_CASE("measurement model round trip") {
  const MeasurementModel m = build_ps_model();
  const json j = io::model_to_json(m);
  CHECK(j["type"] == "measurement_model");
  CHECK(j["elements"].size() == 32);
  CHECK(j["failure_element"].is_null());
  const MeasurementModel back = io::model_from_json(io::parse_json(j.dump()));
  REQUIRE(back.size() == 32);
  for (std::size_t k = 0; k < 32; ++k) {
    CHECK(back.elements()[k].label == k);
    CHECK(back.elements()[k].op.matrix() == m.elements()[k].op.matrix());
    CHECK(back.outputs()[k].matrix() == m.outputs()[k].matrix());
  }

  const MeasurementModel rs = rs_heralding_model();
  const MeasurementModel rs_back = io::model_from_json(io::model_to_json(rs));
  REQUIRE(rs_back.failure_element());
  CHECK(rs_back.failure_element()->op.matrix() == rs.failure_element()->op.matrix());

  json missing = j;
  missing["elements"][3].erase("output");
  CHECK_THROWS_AS(io::model_from_json(missing), io::ParseError);
}

TEST_CASE("reports") {
  const ProtocolReport exact = verdict_exact(werner_state(0.9));
  const json je = io::report_to_json(exact);
  CHECK(je["type"] == "protocol_report");
  CHECK(je["mode"] == "exact");
  CHECK(je["verdict"] == "entangled");
  CHECK(je["sample_count"] == 0);
  CHECK(std::abs(je["min_pt_eigenvalue"].get<double>() + 0.425) <= 1e-12);

  const ProtocolReport sampled = verdict_sampled(werner_state(0.9), build_ps_model(), 20000, 3);
  const json js = io::report_to_json(sampled);
  CHECK(js["mode"] == "sampled");
  CHECK(js["outcome_histogram"].size() == 32);
  CHECK(js["failure_slot"] == false);
  const ProtocolReport again = verdict_sampled(werner_state(0.9), build_ps_model(), 20000, 3);
  CHECK(io::report_to_json(again).dump(2) == js.dump(2));

  const json v = io::validation_to_json(validate_model(build_ps_model()));
  CHECK(v["type"] == "validation_report");
  CHECK(v["passed"] == true);
  CHECK(v["element_min_eigenvalues"].size() == 32);
}

TEST_CASE("choi_dims") {
  io::MatrixFile f{ComplexMatrix(8), {{"dim_in", "4"}, {"dim_out", "2"}}};
  CHECK(io::choi_dims(f) == std::pair<std::size_t, std::size_t>{4, 2});
  io::MatrixFile sq{ComplexMatrix(16), {}};
  CHECK(io::choi_dims(sq) == std::pair<std::size_t, std::size_t>{4, 4});
  io::MatrixFile bad{ComplexMatrix(8), {{"dim_in", "three"}, {"dim_out", "2"}}};
  CHECK_THROWS_AS(io::choi_dims(bad), io::ParseError);
}
