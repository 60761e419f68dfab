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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spakit/choi.hpp"

namespace spakit {

struct PovmElement {
  HermitianOperator op;
  std::size_t label = 0;
};

/// Measure-and-prepare realization: outcome j (probability Tr[rho Pi_j])
/// prepares outputs[j]. Construction only checks shapes; physical validity
/// is reported by validate_model so that faulty models stay inspectable.
class MeasurementModel {
 public:
  MeasurementModel(std::size_t dim_in, std::size_t dim_out,
                   std::vector<PovmElement> elements,
                   std::vector<HermitianOperator> outputs,
                   std::optional<PovmElement> failure = std::nullopt);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<PovmElement>& elements() const noexcept { return elements_; }
  const std::vector<HermitianOperator>& outputs() const noexcept { return outputs_; }
  const std::optional<PovmElement>& failure_element() const noexcept { return failure_; }

  /// Sum of all elements, failure element included.
  ComplexMatrix element_sum() const;
  /// Sum_j Pi_j^T (x) rho_j (failure outcome prepares nothing).
  ChoiOperator reconstruct_choi() const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<PovmElement> elements_;
  std::vector<HermitianOperator> outputs_;
  std::optional<PovmElement> failure_;
};

/// The 32-outcome realization of the two-qubit partial-transpose SPA.
/// Order: six W blocks (four rank-1 terms each), four unit-weight S terms,
/// four double-weight S terms.
MeasurementModel build_ps_model();

/// Two-outcome heralding model of R_S: success element Tr_out[R_S] (the
/// symmetric projector) followed by completion. The output slot holds the
/// maximally mixed qubit; only outcome statistics are represented.
MeasurementModel rs_heralding_model();

struct Expectation {
  std::vector<double> probabilities;
  double failure_probability = 0.0;
  /// Sum_j p_j rho_j
  ComplexMatrix expected_output;
};

Expectation simulate_expectation(const MeasurementModel& model,
                                 const HermitianOperator& rho_in);
inline Expectation simulate_expectation(const MeasurementModel& model,
                                        const DensityMatrix& rho_in) {
  return simulate_expectation(model, rho_in.op());
}

struct ValidationReport {
  std::vector<double> element_min_eigenvalues;
  std::optional<double> failure_min_eigenvalue;
  std::vector<double> output_trace_defects;
  std::vector<double> output_min_eigenvalues;
  double sum_defect = 0.0;
  bool passed = false;
  std::vector<std::string> violations;
};

ValidationReport validate_model(const MeasurementModel& model,
                                double tol = kPsdTol);

enum class PptVerdict { Separable, Entangled, Inconclusive };
std::string to_string(PptVerdict v);

struct PptResult {
  PptVerdict verdict = PptVerdict::Inconclusive;
  double min_pt_eigenvalue = 0.0;
};

/// PPT test of a PSD bipartite operator. Nonnegative partial transpose
/// certifies separability only for 2x2, 2x3 and 3x2. Throws
/// InvalidStateError on non-PSD input.
PptResult ppt_separability_check(const HermitianOperator& state, std::size_t d_a,
                                 std::size_t d_b, double tol = kPsdTol);
inline PptResult ppt_separability_check(const ChoiOperator& c, double tol = kPsdTol) {
  return ppt_separability_check(c.op(), c.dim_in(), c.dim_out(), tol);
}

/// Adds Pi_0 = I - Sum Pi_j when it is not numerically zero. Throws
/// std::invalid_argument when the elements already exceed the identity.
MeasurementModel complete_model(const MeasurementModel& model, double tol = kPsdTol);

struct Completeness {
  bool complete = false;
  std::size_t rank = 0;
};

/// Rank of span{Pi_j} among Hermitian operators on the input space.
Completeness informational_completeness(const MeasurementModel& model,
                                        double threshold = 1e-9);

/// The 4x4 operator in the {|uu>,|ud>,|du>,|dd>} basis that every W block
/// reduces to.
ComplexMatrix w_block_matrix();

}  // namespace spakit
