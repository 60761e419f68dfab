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

#include <cstdint>
#include <optional>
#include <string>

#include "spakit/choi.hpp"

namespace spakit {

/// Exact weight for maps whose mixture coefficients are known rationals.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Choi of (noise_weight) * constant-to-maximally-mixed + (signal_weight) * map.
struct SpaResult {
  ChoiOperator choi;
  double noise_weight = 0.0;
  double signal_weight = 1.0;
  std::optional<Fraction> exact_noise_weight;
  std::optional<Fraction> exact_signal_weight;
};

/// d^3/(d^3+1) O_A (x) O_B + 1/(d^3+1) I_A (x) T_B on two qudits.
SpaResult spa_partial_transpose(std::size_t d);

/// Smallest admixture w of the constant map rho -> Tr(rho) I/d_out such that
/// (1-w) C + w C_noise is PSD, found by bisection to kSpaWeightTol. Inputs
/// that are already PSD (within kPsdTol) come back unchanged with w = 0.
SpaResult spa_general(const ChoiOperator& c);

inline constexpr double kSpaWeightTol = 1e-12;

/// The squaring map rho (x) rho -> rho^2 on a qubit (4-dim input, 2-dim
/// output). Hermitian but not PSD.
ChoiOperator choi_R();

/// R_S = 1/2 (O_bar + R): CP and trace decreasing.
SpaResult spa_rho_square();

/// 1/2 (1 + Tr rho^2) for a single-qubit state.
double success_probability(const DensityMatrix& rho);

/// Rank-3 projector onto span{|00>, (|01>+|10>)/sqrt2, |11>}.
HermitianOperator symmetric_subspace_projector();
/// The three orthonormal vectors spanning the symmetric subspace.
std::vector<std::vector<Complex>> symmetric_subspace_basis();

/// True when m equals rho (x) rho with rho = Tr_2[m], within tol.
bool is_square_product(const ComplexMatrix& m, double tol = 1e-9);

/// Heralded output of R_S on rho (x) rho.
struct SquaringOutcome {
  double success_probability = 0.0;
  /// Unnormalized output; its trace is the success probability.
  HermitianOperator output;
  /// output / success_probability = (I/2 + rho^2) / (1 + Tr rho^2)
  HermitianOperator conditional_output;
};

SquaringOutcome square_via_spa(const DensityMatrix& rho);

}  // namespace spakit
