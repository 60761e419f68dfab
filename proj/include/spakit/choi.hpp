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
#include <memory>
#include <variant>

#include "spakit/linalg.hpp"

namespace spakit {

/// Composable description of a linear hermiticity-preserving map built
/// from identity, transposition and the constant map to the maximally
/// mixed state.
class MapSpec {
 public:
  struct Identity { std::size_t d; };
  struct Transpose { std::size_t d; };
  /// rho -> Tr(rho) * I / d_out
  struct Depolarize { std::size_t d_in, d_out; };
  struct Tensor { std::shared_ptr<const MapSpec> first, second; };
  struct ConvexMix {
    double w1;
    std::shared_ptr<const MapSpec> first;
    double w2;
    std::shared_ptr<const MapSpec> second;
  };
  using Node = std::variant<Identity, Transpose, Depolarize, Tensor, ConvexMix>;

  static MapSpec identity(std::size_t d);
  static MapSpec transpose(std::size_t d);
  static MapSpec depolarize(std::size_t d_in, std::size_t d_out);
  static MapSpec tensor(MapSpec a, MapSpec b);
  /// Throws std::invalid_argument on negative weights and DimensionError
  /// when the two branches have different shapes.
  static MapSpec convex_mix(double w1, MapSpec a, double w2, MapSpec b);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  const Node& node() const noexcept { return node_; }

  /// Direct action of the map on an operator of dimension dim_in().
  ComplexMatrix act(const ComplexMatrix& x) const;

 private:
  MapSpec(Node node, std::size_t d_in, std::size_t d_out)
      : node_(std::move(node)), dim_in_(d_in), dim_out_(d_out) {}

  Node node_;
  std::size_t dim_in_;
  std::size_t dim_out_;
};

/// Choi operator stored input factor first:
///   C = sum_{jk} |j><k| (x) E(|j><k|)
/// with the unnormalized maximally entangled vector, so that
///   E(X) = Tr_in[C (X^T (x) I)]
/// holds with no dimensional prefactor.
class ChoiOperator {
 public:
  ChoiOperator(HermitianOperator m, std::size_t dim_in, std::size_t dim_out);

  const HermitianOperator& op() const noexcept { return m_; }
  const ComplexMatrix& matrix() const noexcept { return m_.matrix(); }
  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }

 private:
  HermitianOperator m_;
  std::size_t dim_in_;
  std::size_t dim_out_;
};

ChoiOperator choi_of_map(const MapSpec& spec);

/// Tr_in[C (X^T (x) I)] for any operator X on the input space.
ComplexMatrix apply(const ChoiOperator& c, const ComplexMatrix& x);
HermitianOperator apply(const ChoiOperator& c, const HermitianOperator& x);
HermitianOperator apply(const ChoiOperator& c, const DensityMatrix& rho);

struct TracePreservation {
  bool preserving = false;
  /// Tr_out[C] - I_in
  ComplexMatrix defect;
  explicit operator bool() const noexcept { return preserving; }
};

TracePreservation is_trace_preserving(const ChoiOperator& c,
                                      double tol = kTraceTol);

/// A map is CP iff its Choi operator is PSD.
PsdCheck is_cp(const ChoiOperator& c, double tol = kPsdTol);

/// Choi of the tensor-product map, ordered (in_A in_B) (x) (out_A out_B).
ChoiOperator tensor_maps(const ChoiOperator& first, const ChoiOperator& second);

/// (V^dagger (x) I) C (V (x) I) for an isometry V whose columns are the
/// given orthonormal input vectors.
ChoiOperator restrict_input(const ChoiOperator& c,
                            const std::vector<std::vector<Complex>>& basis);

}  // namespace spakit
