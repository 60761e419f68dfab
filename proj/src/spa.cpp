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

#include "spakit/spa.hpp"

#include <cmath>
#include <stdexcept>

namespace spakit {
namespace {

ComplexMatrix mix(double w_noise, const ComplexMatrix& noise, double w_signal,
                  const ComplexMatrix& signal) {
  std::vector<Complex> e(noise.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = w_noise * noise.entries()[i] + w_signal * signal.entries()[i];
  return ComplexMatrix(noise.dim(), std::move(e));
}

double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eig(HermitianOperator(m)).min_eigenvalue;
}

}  // namespace

SpaResult spa_partial_transpose(std::size_t d) {
  if (d < 2) throw std::invalid_argument("spa_partial_transpose needs d >= 2");
  const auto d3 = static_cast<std::int64_t>(d * d * d);
  const Fraction noise{d3, d3 + 1};
  const Fraction signal{1, d3 + 1};
  const MapSpec spec = MapSpec::convex_mix(
      noise.value(),
      MapSpec::tensor(MapSpec::depolarize(d, d), MapSpec::depolarize(d, d)),
      signal.value(), MapSpec::tensor(MapSpec::identity(d), MapSpec::transpose(d)));
  return SpaResult{choi_of_map(spec), noise.value(), signal.value(), noise, signal};
}

SpaResult spa_general(const ChoiOperator& c) {
  if (is_psd(c.op())) return SpaResult{c, 0.0, 1.0, Fraction{0, 1}, Fraction{1, 1}};

  const ComplexMatrix noise =
      choi_of_map(MapSpec::depolarize(c.dim_in(), c.dim_out())).matrix();
  const ComplexMatrix& signal = c.matrix();
  // Invariant: mixture at hi is PSD, at lo it is not.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kSpaWeightTol) {
    const double mid = 0.5 * (lo + hi);
    if (min_eigenvalue(mix(mid, noise, 1.0 - mid, signal)) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  ChoiOperator out(HermitianOperator(mix(hi, noise, 1.0 - hi, signal)),
                   c.dim_in(), c.dim_out());
  return SpaResult{std::move(out), hi, 1.0 - hi, std::nullopt, std::nullopt};
}

ChoiOperator choi_R() {
  // Input basis |00>,|01>,|10>,|11> (index 0..3), output |0>,|1>.
  ComplexMatrix m(8);
  auto at = [&](std::size_t in_r, std::size_t out_r, std::size_t in_c,
                std::size_t out_c) -> Complex& { return m(in_r * 2 + out_r, in_c * 2 + out_c); };
  // [|00><00| + (|01><10| + |10><01|)/2] (x) |0><0|
  at(0, 0, 0, 0) = 1.0;
  at(1, 0, 2, 0) = 0.5;
  at(2, 0, 1, 0) = 0.5;
  // [|11><11| + (|01><10| + |10><01|)/2] (x) |1><1|
  at(3, 1, 3, 1) = 1.0;
  at(1, 1, 2, 1) = 0.5;
  at(2, 1, 1, 1) = 0.5;
  // (|00><+| + |+><11|)/sqrt2 (x) |0><1| with |+> = (|01>+|10>)/sqrt2, so
  // every nonzero entry of this block is 1/2.
  at(0, 0, 1, 1) = 0.5;
  at(0, 0, 2, 1) = 0.5;
  at(1, 0, 3, 1) = 0.5;
  at(2, 0, 3, 1) = 0.5;
  // h.c.: (|+><00| + |11><+|)/sqrt2 (x) |1><0|
  at(1, 1, 0, 0) = 0.5;
  at(2, 1, 0, 0) = 0.5;
  at(3, 1, 1, 0) = 0.5;
  at(3, 1, 2, 0) = 0.5;
  return ChoiOperator(HermitianOperator(std::move(m)), 4, 2);
}

SpaResult spa_rho_square() {
  const ChoiOperator r = choi_R();
  const ComplexMatrix noise = choi_of_map(MapSpec::depolarize(4, 2)).matrix();
  ChoiOperator rs(HermitianOperator(mix(0.5, noise, 0.5, r.matrix())), 4, 2);
  return SpaResult{std::move(rs), 0.5, 0.5, Fraction{1, 2}, Fraction{1, 2}};
}

double success_probability(const DensityMatrix& rho) {
  if (rho.dim() != 2)
    throw DimensionError("success_probability expects a qubit state, got dim " +
                         std::to_string(rho.dim()));
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  return 0.5 * (1.0 + purity);
}

std::vector<std::vector<Complex>> symmetric_subspace_basis() {
  const double r2 = 1.0 / std::sqrt(2.0);
  return {{1.0, 0.0, 0.0, 0.0}, {0.0, r2, r2, 0.0}, {0.0, 0.0, 0.0, 1.0}};
}

HermitianOperator symmetric_subspace_projector() {
  ComplexMatrix p(4);
  for (const auto& v : symmetric_subspace_basis()) p += ComplexMatrix::projector(v);
  return HermitianOperator(std::move(p));
}

bool is_square_product(const ComplexMatrix& m, double tol) {
  if (m.dim() < 1) return false;
  std::size_t d = 0;
  try {
    d = exact_sqrt(m.dim());
  } catch (const DimensionError&) {
    return false;
  }
  const ComplexMatrix rho = partial_trace(m, d, d, Subsystem::Second);
  return max_abs_diff(m, kron(rho, rho)) <= tol;
}

SquaringOutcome square_via_spa(const DensityMatrix& rho) {
  if (rho.dim() != 2)
    throw DimensionError("square_via_spa expects a qubit state, got dim " +
                         std::to_string(rho.dim()));
  const SpaResult rs = spa_rho_square();
  HermitianOperator out = apply(rs.choi, HermitianOperator(kron(rho.matrix(), rho.matrix())));
  const double p = out.trace();
  HermitianOperator conditional(out.matrix() * Complex(1.0 / p));
  return SquaringOutcome{p, std::move(out), std::move(conditional)};
}

}  // namespace spakit
