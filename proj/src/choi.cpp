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

#include "spakit/choi.hpp"

#include <sstream>

namespace spakit {

MapSpec MapSpec::identity(std::size_t d) {
  if (d == 0) throw DimensionError("identity map needs d >= 1");
  return MapSpec(Identity{d}, d, d);
}

MapSpec MapSpec::transpose(std::size_t d) {
  if (d == 0) throw DimensionError("transpose map needs d >= 1");
  return MapSpec(Transpose{d}, d, d);
}

MapSpec MapSpec::depolarize(std::size_t d_in, std::size_t d_out) {
  if (d_in == 0 || d_out == 0)
    throw DimensionError("depolarizing map needs positive dims");
  return MapSpec(Depolarize{d_in, d_out}, d_in, d_out);
}

MapSpec MapSpec::tensor(MapSpec a, MapSpec b) {
  const std::size_t din = a.dim_in() * b.dim_in();
  const std::size_t dout = a.dim_out() * b.dim_out();
  return MapSpec(Tensor{std::make_shared<const MapSpec>(std::move(a)),
                        std::make_shared<const MapSpec>(std::move(b))},
                 din, dout);
}

MapSpec MapSpec::convex_mix(double w1, MapSpec a, double w2, MapSpec b) {
  if (!(w1 >= 0.0) || !(w2 >= 0.0))
    throw std::invalid_argument("convex_mix weights must be nonnegative");
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DimensionError("convex_mix of maps with shapes " +
                         describe_dims(a.dim_in(), a.dim_out()) + " and " +
                         describe_dims(b.dim_in(), b.dim_out()));
  }
  const std::size_t din = a.dim_in(), dout = a.dim_out();
  return MapSpec(ConvexMix{w1, std::make_shared<const MapSpec>(std::move(a)), w2,
                           std::make_shared<const MapSpec>(std::move(b))},
                 din, dout);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ComplexMatrix unit(std::size_t dim, std::size_t j, std::size_t k) {
  ComplexMatrix e(dim);
  e(j, k) = 1.0;
  return e;
}

}  // namespace

ComplexMatrix MapSpec::act(const ComplexMatrix& x) const {
  if (x.dim() != dim_in_) {
    throw DimensionError("map with input dim " + std::to_string(dim_in_) +
                         " applied to operator of dim " + std::to_string(x.dim()));
  }
  return std::visit(
      Overloaded{
          [&](const Identity&) { return x; },
          [&](const Transpose&) { return x.transpose(); },
          [&](const Depolarize& d) {
            return ComplexMatrix::identity(d.d_out) *
                   (x.trace() / static_cast<double>(d.d_out));
          },
          [&](const Tensor& t) {
            // Expand x over |i1><k1| (x) |i2><k2| and act factor-wise.
            const std::size_t da = t.first->dim_in(), db = t.second->dim_in();
            ComplexMatrix out(dim_out_);
            for (std::size_t i1 = 0; i1 < da; ++i1)
              for (std::size_t k1 = 0; k1 < da; ++k1) {
                const ComplexMatrix left = t.first->act(unit(da, i1, k1));
                for (std::size_t i2 = 0; i2 < db; ++i2)
                  for (std::size_t k2 = 0; k2 < db; ++k2) {
                    const Complex coeff = x(i1 * db + i2, k1 * db + k2);
                    if (coeff == Complex(0.0)) continue;
                    out += kron(left, t.second->act(unit(db, i2, k2))) * coeff;
                  }
              }
            return out;
          },
          [&](const ConvexMix& m) {
            const ComplexMatrix a = m.first->act(x);
            const ComplexMatrix b = m.second->act(x);
            std::vector<Complex> e(a.entries().size());
            for (std::size_t i = 0; i < e.size(); ++i)
              e[i] = m.w1 * a.entries()[i] + m.w2 * b.entries()[i];
            return ComplexMatrix(a.dim(), std::move(e));
          },
      },
      node_);
}

ChoiOperator::ChoiOperator(HermitianOperator m, std::size_t dim_in,
                           std::size_t dim_out)
    : m_(std::move(m)), dim_in_(dim_in), dim_out_(dim_out) {
  if (dim_in == 0 || dim_out == 0 || m_.dim() != dim_in * dim_out) {
    throw DimensionError("Choi matrix of dim " + std::to_string(m_.dim()) +
                         " does not match (dim_in, dim_out) = " +
                         describe_dims(dim_in, dim_out));
  }
}

ChoiOperator choi_of_map(const MapSpec& spec) {
  const std::size_t din = spec.dim_in(), dout = spec.dim_out();
  ComplexMatrix c(din * dout);
  for (std::size_t j = 0; j < din; ++j)
    for (std::size_t k = 0; k < din; ++k) {
      const ComplexMatrix image = spec.act(unit(din, j, k));
      for (std::size_t a = 0; a < dout; ++a)
        for (std::size_t b = 0; b < dout; ++b)
          c(j * dout + a, k * dout + b) = image(a, b);
    }
  return ChoiOperator(HermitianOperator(std::move(c)), din, dout);
}

ComplexMatrix apply(const ChoiOperator& c, const ComplexMatrix& x) {
  const std::size_t din = c.dim_in(), dout = c.dim_out();
  if (x.dim() != din) {
    throw DimensionError("Choi operator with dims (in, out) = " +
                         describe_dims(din, dout) +
                         " applied to operator of dim " + std::to_string(x.dim()));
  }
  // out(a,b) = sum_{ij} C((i,a),(j,b)) X(i,j)
  const ComplexMatrix& m = c.matrix();
  ComplexMatrix out(dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      const Complex xij = x(i, j);
      if (xij == Complex(0.0)) continue;
      for (std::size_t a = 0; a < dout; ++a)
        for (std::size_t b = 0; b < dout; ++b)
          out(a, b) += m(i * dout + a, j * dout + b) * xij;
    }
  return out;
}

HermitianOperator apply(const ChoiOperator& c, const HermitianOperator& x) {
  return HermitianOperator(apply(c, x.matrix()));
}

HermitianOperator apply(const ChoiOperator& c, const DensityMatrix& rho) {
  return apply(c, rho.op());
}

TracePreservation is_trace_preserving(const ChoiOperator& c, double tol) {
  ComplexMatrix defect =
      partial_trace(c.matrix(), c.dim_in(), c.dim_out(), Subsystem::Second) -
      ComplexMatrix::identity(c.dim_in());
  const bool ok = defect.max_abs() <= tol;
  return TracePreservation{ok, std::move(defect)};
}

PsdCheck is_cp(const ChoiOperator& c, double tol) { return is_psd(c.op(), tol); }

ChoiOperator tensor_maps(const ChoiOperator& first, const ChoiOperator& second) {
  const std::size_t ia = first.dim_in(), oa = first.dim_out();
  const std::size_t ib = second.dim_in(), ob = second.dim_out();
  const std::size_t din = ia * ib, dout = oa * ob;
  const ComplexMatrix& ca = first.matrix();
  const ComplexMatrix& cb = second.matrix();
  ComplexMatrix r(din * dout);
  auto row = [&](std::size_t in_a, std::size_t in_b, std::size_t out_a,
                 std::size_t out_b) {
    return (in_a * ib + in_b) * dout + out_a * ob + out_b;
  };
  for (std::size_t i1 = 0; i1 < ia; ++i1)
    for (std::size_t a1 = 0; a1 < oa; ++a1)
      for (std::size_t j1 = 0; j1 < ia; ++j1)
        for (std::size_t b1 = 0; b1 < oa; ++b1) {
          const Complex va = ca(i1 * oa + a1, j1 * oa + b1);
          if (va == Complex(0.0)) continue;
          for (std::size_t i2 = 0; i2 < ib; ++i2)
            for (std::size_t a2 = 0; a2 < ob; ++a2)
              for (std::size_t j2 = 0; j2 < ib; ++j2)
                for (std::size_t b2 = 0; b2 < ob; ++b2)
                  r(row(i1, i2, a1, a2), row(j1, j2, b1, b2)) =
                      va * cb(i2 * ob + a2, j2 * ob + b2);
        }
  return ChoiOperator(HermitianOperator(std::move(r)), din, dout);
}

ChoiOperator restrict_input(const ChoiOperator& c,
                            const std::vector<std::vector<Complex>>& basis) {
  const std::size_t din = c.dim_in(), dout = c.dim_out();
  if (basis.empty()) throw DimensionError("restriction needs a nonempty basis");
  for (const auto& v : basis)
    if (v.size() != din)
      throw DimensionError("basis vector of length " + std::to_string(v.size()) +
                           " for input dim " + std::to_string(din));
  const std::size_t k = basis.size();
  const ComplexMatrix& m = c.matrix();
  ComplexMatrix r(k * dout);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t a = 0; a < dout; ++a)
        for (std::size_t b = 0; b < dout; ++b) {
          Complex acc = 0.0;
          for (std::size_t i = 0; i < din; ++i)
            for (std::size_t j = 0; j < din; ++j)
              acc += std::conj(basis[s][i]) * m(i * dout + a, j * dout + b) *
                     basis[t][j];
          r(s * dout + a, t * dout + b) = acc;
        }
  return ChoiOperator(HermitianOperator(std::move(r)), k, dout);
}

}  // namespace spakit
