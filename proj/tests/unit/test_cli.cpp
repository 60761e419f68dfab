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

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "spakit/io.hpp"
#include "spakit/spa.hpp"
#include "testutil.hpp"

using namespace spakit;
using namespace spakit::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded away unless asked for.
Run cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(SPAKIT_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("spakit_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_matrix(const std::string& name, const ComplexMatrix& m,
                         const io::Metadata& meta = {}) {
  const fs::path p = scratch() / name;
  io::write_text(p.string(), io::matrix_to_json(m, meta).dump(2));
  return p.string();
}

json parse(const std::string& s) { return io::parse_json(s); }

}  // namespace

TEST_CASE("choi") {
  const Run ps = cli("choi --map pt-spa --d 2");
  REQUIRE(ps.code == 0);
  const io::MatrixFile f = io::matrix_from_json(parse(ps.out));
  CHECK(f.matrix.dim() == 16);
  CHECK(f.metadata.at("noise_weight") == "8/9");
  CHECK(f.metadata.at("signal_weight") == "1/9");
  CHECK(f.metadata.at("dim_in") == "4");
  CHECK(f.matrix == spa_partial_transpose(2).choi.matrix());

  const Run id = cli("choi --map identity --d 2");
  REQUIRE(id.code == 0);
  const ComplexMatrix bell = io::matrix_from_json(parse(id.out)).matrix;
  CHECK(max_abs_diff(bell, phi_plus().matrix() * Complex(2.0)) <= 1e-15);

  const Run rs = cli("choi --map rho2-spa");
  REQUIRE(rs.code == 0);
  const io::MatrixFile rf = io::matrix_from_json(parse(rs.out));
  CHECK(rf.matrix.dim() == 8);
  CHECK(rf.matrix == spa_rho_square().choi.matrix());
  CHECK(rf.metadata.at("noise_weight") == "1/2");

  CHECK(cli("choi --map pt-spa --d 3").code == 0);
  CHECK(cli("choi --map nope").code == 2);
  CHECK(cli("choi --map rho2 --d 3").code == 2);
  CHECK(cli("choi --bogus-flag").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("apply") {
  const std::string ps = (scratch() / "ps.json").string();
  REQUIRE(cli("choi --map pt-spa --d 2 -o " + ps).code == 0);
  const std::string bell = write_matrix("bell.json", phi_plus().matrix());
  const Run r = cli("apply " + ps + " " + bell);
  REQUIRE(r.code == 0);
  const io::MatrixFile out = io::matrix_from_json(parse(r.out));
  CHECK(std::stod(out.metadata.at("trace")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs_diff(out.matrix, apply(spa_partial_transpose(2).choi, phi_plus()).matrix()) <=
        1e-15);

  const std::string rs = (scratch() / "rs.json").string();
  REQUIRE(cli("choi --map rho2-spa -o " + rs).code == 0);
  const ComplexMatrix half = DensityMatrix::maximally_mixed(2).matrix();
  const std::string mixed = write_matrix("mixed.json", kron(half, half));
  const Run t = cli("apply " + rs + " " + mixed + " -o " + (scratch() / "o.json").string(),
                    true);
  REQUIRE(t.code == 0);
  CHECK(t.out.find("trace: 0.75") != std::string::npos);

  const ComplexMatrix p0 = ComplexMatrix::projector(basis_ket(2, 0));
  const std::string zero = write_matrix("zero.json", kron(p0, p0));
  const Run z = cli("apply " + rs + " " + zero + " -o " + (scratch() / "o.json").string(), true);
  CHECK(z.out.find("trace: 1\n") != std::string::npos);

  CHECK(cli("apply " + ps + " " + write_matrix("qubit.json", half)).code == 3);
  CHECK(cli("apply " + ps + " " + write_matrix("neg.json", pauli_x() * Complex(1.0))).code == 3);
  const std::vector<double> bad{1.5, -0.5, 0.0, 0.0};
  CHECK(cli("apply " + ps + " " + write_matrix("bad.json", ComplexMatrix::diagonal(bad))).code ==
        4);
  CHECK(cli("apply " + ps + " " + (scratch() / "missing.json").string()).code == 2);
  std::ofstream(scratch() / "garbage.json") << "{\"schema\":";
  CHECK(cli("apply " + ps + " " + (scratch() / "garbage.json").string()).code == 2);
}

TEST_CASE("povm") {
  const std::string model = (scratch() / "model.json").string();
  REQUIRE(cli("povm -o " + model).code == 0);
  const json m = parse(io::read_text(model));
  CHECK(m["elements"].size() == 32);

  const Run ok = cli("povm --validate " + model);
  REQUIRE(ok.code == 0);
  const json rep = parse(ok.out);
  CHECK(rep["passed"] == true);
  CHECK(rep["sum_defect"].get<double>() <= 1e-12);

  json corrupted = m;
  for (auto& entry : corrupted["elements"][4]["output"]["data"])
    for (auto& x : entry) x = x.get<double>() * 2.0;
  const std::string bad = (scratch() / "corrupted.json").string();
  io::write_text(bad, corrupted.dump());
  const Run fail = cli("povm --validate " + bad);
  CHECK(fail.code == 5);
  CHECK(parse(fail.out)["passed"] == false);

  json malformed = m;
  malformed["elements"][0].erase("operator");
  const std::string mal = (scratch() / "malformed.json").string();
  io::write_text(mal, malformed.dump());
  CHECK(cli("povm --validate " + mal).code == 2);
}

TEST_CASE("detect") {
  const std::string w9 = write_matrix("w9.json", werner_state(0.9).matrix());
  const std::string w2 = write_matrix("w2.json", werner_state(0.2).matrix());
  const Run e = cli("detect " + w9);
  REQUIRE(e.code == 0);
  const json je = parse(e.out);
  CHECK(je["verdict"] == "entangled");
  CHECK(std::abs(je["min_pt_eigenvalue"].get<double>() + 0.425) <= 1e-12);
  CHECK(parse(cli("detect " + w2).out)["verdict"] == "separable_PPT");

  const Run s1 = cli("detect " + w9 + " --samples 100000 --seed 7");
  const Run s2 = cli("detect " + w9 + " --samples 100000 --seed 7 --chunks 4");
  REQUIRE(s1.code == 0);
  CHECK(parse(s1.out)["verdict"] == "entangled");
  CHECK(s1.out == s2.out);

  // stdin
  const Run piped = cli("detect - < " + w9);
  CHECK(piped.code == 0);
  CHECK(piped.out == e.out);

  const std::vector<double> bad{0.7, 0.7, -0.2, -0.2};
  CHECK(cli("detect " + write_matrix("badstate.json", ComplexMatrix::diagonal(bad))).code == 4);
  CHECK(cli("detect " + write_matrix("q.json", ComplexMatrix::identity(2) * Complex(0.5)))
            .code == 3);
  CHECK(cli("detect " + w9 + " --samples notanumber").code == 2);
}

TEST_CASE("invert") {
  auto rng = stream(61);
  const DensityMatrix rho = random_density_matrix(4, rng);
  const std::string ps = (scratch() / "ps2.json").string();
  REQUIRE(cli("choi --map pt-spa --d 2 -o " + ps).code == 0);
  const std::string in = write_matrix("rho.json", rho.matrix());
  const std::string out = (scratch() / "out.json").string();
  REQUIRE(cli("apply " + ps + " " + in + " -o " + out).code == 0);
  const Run inv = cli("invert " + out);
  REQUIRE(inv.code == 0);
  CHECK(max_abs_diff(io::matrix_from_json(parse(inv.out)).matrix, rho.matrix()) <= 1e-9);

  const ComplexMatrix mixed = DensityMatrix::maximally_mixed(4).matrix();
  const Run mm = cli("invert " + write_matrix("mm.json", mixed));
  CHECK(max_abs_diff(io::matrix_from_json(parse(mm.out)).matrix, mixed) <= 1e-12);

  const Run warn = cli("invert " + write_matrix("bellin.json", phi_plus().matrix()), true);
  CHECK(warn.code == 0);
  CHECK(warn.out.find("warning") != std::string::npos);
  CHECK(warn.out.find("\"type\": \"matrix\"") != std::string::npos);
}
