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

#include "spakit/linalg.hpp"

namespace spakit {

/// Counter-based generator: the value at position `counter` depends only on
/// (seed, stream, counter), so any partition of the counter range into
/// chunks reproduces the same draws. Mixing is the SplitMix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const noexcept;

  /// Independent stream keyed by (seed, stream index).
  CounterRng split(std::uint64_t stream) const noexcept;

 private:
  std::uint64_t key_;
};

/// Sequential convenience wrapper over CounterRng.
class RngStream {
 public:
  explicit RngStream(CounterRng rng) noexcept : rng_(rng) {}
  double uniform() noexcept { return rng_.uniform(next_++); }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

/// rho = G^2 / Tr(G^2) with G = A + A^dagger, entries of A uniform in the
/// unit square [-1/2, 1/2) x [-1/2, 1/2) of the complex plane.
DensityMatrix random_density_matrix(std::size_t dim, RngStream& rng);

/// rho_A (x) rho_B with both factors drawn as above.
DensityMatrix random_product_state(std::size_t d_a, std::size_t d_b, RngStream& rng);

/// p |Phi+><Phi+| + (1-p) I/4
DensityMatrix werner_state(double p);

}  // namespace spakit
