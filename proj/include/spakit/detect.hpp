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
#include <cstdint>
#include <string>
#include <vector>

#include "spakit/povm.hpp"

namespace spakit {

/// mu_N = Tr(rho^N) for N = 1..n_max; values[0] is mu_1.
struct MomentVector {
  std::vector<double> values;
  double mu(std::size_t n) const { return values.at(n - 1); }
};

MomentVector moments(const HermitianOperator& rho, std::size_t n_max);
inline MomentVector moments(const DensityMatrix& rho, std::size_t n_max) {
  return moments(rho.op(), n_max);
}

inline constexpr double kImagTolExact = 1e-6;
inline constexpr double kImagTolSampled = 1e-3;

struct RecoveredSpectrum {
  /// Real parts of the roots, descending.
  std::vector<double> eigenvalues;
  double max_imag = 0.0;
  /// False when some root keeps |imag| >= imag_tol: the moments do not
  /// belong to any Hermitian matrix of this dimension.
  bool consistent = false;
  /// Every root settled, after multiple-root polishing.
  bool converged = false;
};

/// Power sums -> elementary symmetric polynomials -> roots of the
/// characteristic polynomial.
RecoveredSpectrum eigenvalues_from_moments(const MomentVector& mu, std::size_t dim,
                                           double imag_tol = kImagTolExact);

/// Inverse of the two-qubit partial-transpose SPA:
/// rho_in = PT_B(9 rho_out - 2 I).
HermitianOperator invert_ps(const HermitianOperator& rho_out);

enum class Verdict { Entangled, SeparablePPT, Inconclusive };
std::string to_string(Verdict v);

/// Outcome counts; when the model has a failure element its count sits in
/// the reserved last slot, index model.size().
struct Histogram {
  std::vector<std::uint64_t> counts;
  bool has_failure_slot = false;
  std::uint64_t total() const;
  bool operator==(const Histogram&) const = default;
};

Histogram sample_outcomes(const MeasurementModel& model, const HermitianOperator& rho,
                          std::uint64_t n, std::uint64_t seed, std::size_t chunks = 1);

struct DetectOptions {
  double verdict_tol = 1e-9;
  double imag_tol_exact = kImagTolExact;
  double imag_tol_sampled = kImagTolSampled;
  double sigma_multiplier = 3.0;
  std::size_t chunks = 1;
};

struct ProtocolReport {
  Verdict verdict = Verdict::Inconclusive;
  /// Spectrum of the SPA output (direct in exact mode, moment-recovered in
  /// sampled mode).
  Spectrum spa_spectrum;
  /// lambda_i = 9 lambda'_i - 2
  Spectrum pt_spectrum;
  MomentVector moments;
  std::vector<double> recovered_eigenvalues;
  bool roots_consistent = false;
  double margin = 0.0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  Histogram histogram;
};

ProtocolReport verdict_exact(const DensityMatrix& rho_ab, const DetectOptions& opts = {});

ProtocolReport verdict_sampled(const DensityMatrix& rho_ab, const MeasurementModel& model,
                               std::uint64_t n_samples, std::uint64_t seed,
                               const DetectOptions& opts = {});

}  // namespace spakit
