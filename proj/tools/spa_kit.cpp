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

// spa-kit: structural physical approximations of partial transposition and
// of the qubit squaring map, their measure-and-prepare realization, and the
// direct entanglement-detection protocol built on them.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spakit/detect.hpp"
#include "spakit/io.hpp"
#include "spakit/spa.hpp"

namespace {

using namespace spakit;

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDimension = 3,
  kInvalidState = 4,
  kValidationFailed = 5,
};

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string weight_string(double w, const std::optional<Fraction>& exact) {
  return exact ? exact->str() : format_double(w);
}

void emit(const std::string& path, const nlohmann::json& j) {
  io::write_text(path, j.dump(2) + "\n");
}

io::MatrixFile load_matrix(const std::string& path) {
  return io::matrix_from_json(io::parse_json(io::read_text(path)));
}

struct ChoiArgs {
  std::string map;
  std::size_t d = 2;
  std::string out = "-";
};

int run_choi(const ChoiArgs& a) {
  std::optional<ChoiOperator> choi;
  io::Metadata meta{{"map", a.map}};
  auto with_weights = [&](const SpaResult& r) {
    meta["noise_weight"] = weight_string(r.noise_weight, r.exact_noise_weight);
    meta["signal_weight"] = weight_string(r.signal_weight, r.exact_signal_weight);
    choi = r.choi;
  };
  if (a.map != "pt-spa" && a.map != "pt" && a.map != "identity" && a.map != "depolarize" &&
      a.map != "rho2" && a.map != "rho2-spa") {
    std::cerr << "error: unknown map '" << a.map << "'\n";
    return kUsage;
  }
  if ((a.map == "rho2" || a.map == "rho2-spa") && a.d != 2) {
    std::cerr << "error: the squaring map is defined for qubits only (--d 2)\n";
    return kUsage;
  }
  if (a.d < 1 || (a.map == "pt-spa" && a.d < 2)) {
    std::cerr << "error: --d must be at least " << (a.map == "pt-spa" ? 2 : 1) << "\n";
    return kUsage;
  }
  if (a.map == "pt-spa") {
    with_weights(spa_partial_transpose(a.d));
  } else if (a.map == "pt") {
    choi = choi_of_map(MapSpec::tensor(MapSpec::identity(a.d), MapSpec::transpose(a.d)));
  } else if (a.map == "identity") {
    choi = choi_of_map(MapSpec::identity(a.d));
  } else if (a.map == "depolarize") {
    choi = choi_of_map(MapSpec::depolarize(a.d, a.d));
  } else if (a.map == "rho2") {
    choi = choi_R();
  } else {
    with_weights(spa_rho_square());
  }
  meta["dim_in"] = std::to_string(choi->dim_in());
  meta["dim_out"] = std::to_string(choi->dim_out());
  emit(a.out, io::matrix_to_json(choi->matrix(), meta));
  return kOk;
}

struct ApplyArgs {
  std::string choi_path;
  std::string state_path;
  std::string out = "-";
};

int run_apply(const ApplyArgs& a) {
  const io::MatrixFile cf = load_matrix(a.choi_path);
  const auto [din, dout] = io::choi_dims(cf);
  const ChoiOperator choi(HermitianOperator(cf.matrix), din, dout);
  const io::MatrixFile sf = load_matrix(a.state_path);
  if (sf.matrix.dim() != din) {
    std::cerr << "error: state has dim " << sf.matrix.dim() << " but the map expects "
              << din << "\n";
    return kDimension;
  }
  const DensityMatrix rho(sf.matrix);
  const auto map_name = cf.metadata.find("map");
  if (map_name != cf.metadata.end() &&
      (map_name->second == "rho2" || map_name->second == "rho2-spa") &&
      !is_square_product(rho.matrix())) {
    std::cerr << "warning: input is not of the form rho (x) rho\n";
  }
  const HermitianOperator out = apply(choi, rho);
  const double trace = out.trace();
  emit(a.out, io::matrix_to_json(out.matrix(), {{"trace", format_double(trace)}}));
  (a.out == "-" ? std::cerr : std::cout) << "trace: " << format_double(trace) << "\n";
  return kOk;
}

struct PovmArgs {
  std::string validate;
  std::string out = "-";
  double tol = kPsdTol;
};

int run_povm(const PovmArgs& a) {
  if (a.validate.empty()) {
    emit(a.out, io::model_to_json(build_ps_model()));
    return kOk;
  }
  const MeasurementModel model = io::model_from_json(io::parse_json(io::read_text(a.validate)));
  const ValidationReport rep = validate_model(model, a.tol);
  emit(a.out, io::validation_to_json(rep));
  return rep.passed ? kOk : kValidationFailed;
}

struct DetectArgs {
  std::string state_path;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::string out = "-";
  DetectOptions opts;
};

int run_detect(const DetectArgs& a) {
  const io::MatrixFile sf = load_matrix(a.state_path);
  if (sf.matrix.dim() != 4) {
    std::cerr << "error: detect expects a two-qubit state (dim 4), got dim "
              << sf.matrix.dim() << "\n";
    return kDimension;
  }
  const DensityMatrix rho(sf.matrix);
  const ProtocolReport rep =
      a.samples ? verdict_sampled(rho, build_ps_model(), *a.samples, a.seed, a.opts)
                : verdict_exact(rho, a.opts);
  emit(a.out, io::report_to_json(rep));
  return kOk;
}

struct InvertArgs {
  std::string state_path;
  std::string out = "-";
};

int run_invert(const InvertArgs& a) {
  const io::MatrixFile sf = load_matrix(a.state_path);
  if (sf.matrix.dim() != 4) {
    std::cerr << "error: invert expects a two-qubit state (dim 4), got dim "
              << sf.matrix.dim() << "\n";
    return kDimension;
  }
  const DensityMatrix rho_out(sf.matrix);
  const HermitianOperator rho_in = invert_ps(rho_out.op());
  try {
    DensityMatrix check(rho_in);
  } catch (const InvalidStateError& e) {
    std::cerr << "warning: recovered operator is not a density matrix (" << e.what()
              << "); the input is outside the range of the partial-transpose SPA\n";
  }
  emit(a.out, io::matrix_to_json(rho_in.matrix()));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spa-kit: structural physical approximations and direct entanglement detection"};
  app.require_subcommand(1);

  ChoiArgs choi_args;
  auto* choi = app.add_subcommand("choi", "Write the Choi matrix of a built-in map");
  choi->add_option("--map", choi_args.map,
                   "pt-spa | pt | identity | depolarize | rho2 | rho2-spa")
      ->required();
  choi->add_option("--d", choi_args.d, "Local dimension")->capture_default_str();
  choi->add_option("-o,--out", choi_args.out, "Output file, - for stdout")->capture_default_str();

  ApplyArgs apply_args;
  auto* apply_cmd = app.add_subcommand("apply", "Apply a Choi matrix to a state");
  apply_cmd->add_option("choi", apply_args.choi_path, "Choi matrix file")->required();
  apply_cmd->add_option("state", apply_args.state_path, "Density matrix file")->required();
  apply_cmd->add_option("-o,--out", apply_args.out, "Output file, - for stdout")
      ->capture_default_str();

  PovmArgs povm_args;
  auto* povm = app.add_subcommand("povm", "Emit or validate a measurement model");
  povm->add_option("--validate", povm_args.validate, "Validate this model file instead");
  povm->add_option("--tol", povm_args.tol, "Validation tolerance")->capture_default_str();
  povm->add_option("-o,--out", povm_args.out, "Output file, - for stdout")->capture_default_str();

  DetectArgs detect_args;
  auto* detect = app.add_subcommand("detect", "Run the entanglement-detection protocol");
  detect->add_option("state", detect_args.state_path, "Two-qubit density matrix file")
      ->required();
  detect->add_option("--samples", detect_args.samples,
                     "Number of simulated measurement outcomes (omit for exact mode)");
  detect->add_option("--seed", detect_args.seed, "Sampling seed")->capture_default_str();
  detect->add_option("--chunks", detect_args.opts.chunks, "Parallel sampling chunks")
      ->capture_default_str();
  detect->add_option("--verdict-tol", detect_args.opts.verdict_tol,
                     "Entanglement threshold on the min PT eigenvalue")
      ->capture_default_str();
  detect->add_option("--imag-tol-exact", detect_args.opts.imag_tol_exact,
                     "Max |imag| of recovered roots, exact mode")
      ->capture_default_str();
  detect->add_option("--imag-tol-sampled", detect_args.opts.imag_tol_sampled,
                     "Max |imag| of recovered roots, sampled mode")
      ->capture_default_str();
  detect->add_option("--sigma", detect_args.opts.sigma_multiplier,
                     "Statistical margin in standard deviations")
      ->capture_default_str();
  detect->add_option("-o,--out", detect_args.out, "Output file, - for stdout")
      ->capture_default_str();

  InvertArgs invert_args;
  auto* invert = app.add_subcommand("invert", "Recover the input state from a SPA output");
  invert->add_option("state", invert_args.state_path, "Two-qubit density matrix file")
      ->required();
  invert->add_option("-o,--out", invert_args.out, "Output file, - for stdout")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*choi) return run_choi(choi_args);
    if (*apply_cmd) return run_apply(apply_args);
    if (*povm) return run_povm(povm_args);
    if (*detect) return run_detect(detect_args);
    if (*invert) return run_invert(invert_args);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDimension;
  } catch (const InvalidStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidState;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
