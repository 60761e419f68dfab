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

#include "spakit/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace spakit {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(mix64(seed + kGolden) ^ (stream * kGolden + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return mix64(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

CounterRng CounterRng::split(std::uint64_t stream) const noexcept {
  CounterRng r(0);
  r.key_ = mix64(key_ ^ mix64(stream + kGolden));
  return r;
}

DensityMatrix random_density_matrix(std::size_t dim, RngStream& rng) {
  ComplexMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      a(i, j) = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
  const ComplexMatrix g = a + a.adjoint();
  ComplexMatrix g2 = g * g;
  const double tr = g2.trace().real();
  g2 *= Complex(1.0 / tr);
  return DensityMatrix(std::move(g2));
}

DensityMatrix random_product_state(std::size_t d_a, std::size_t d_b, RngStream& rng) {
  const DensityMatrix a = random_density_matrix(d_a, rng);
  const DensityMatrix b = random_density_matrix(d_b, rng);
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Werner weight must be in [0, 1]");
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> phi{r, 0.0, 0.0, r};
  return DensityMatrix(ComplexMatrix::projector(phi) * Complex(p) +
                       ComplexMatrix::identity(4) * Complex((1.0 - p) / 4.0));
}

}  // namespace spakit
