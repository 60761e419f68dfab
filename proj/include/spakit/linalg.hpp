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
#include <vector>

#include "spakit/matrix.hpp"

namespace spakit {

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

enum class Subsystem { First, Second };

/// Kronecker product: entry (i*db + k, j*db + l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out one factor of a (d_a x d_b)-partitioned matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_a,
                            std::size_t d_b, Subsystem over);

/// Transposes the chosen factor block-wise. Involution.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d_a,
                                std::size_t d_b, Subsystem on);

/// Matrix that equals its adjoint within kHermitianTol (entrywise max
/// modulus). The stored matrix is exactly Hermitian: the construction
/// averages it with its adjoint after the check passes.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m, double tol = kHermitianTol);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  double trace() const { return m_.trace().real(); }

  bool operator==(const HermitianOperator&) const = default;

 private:
  ComplexMatrix m_;
};

/// Eigenvalues sorted descending.
struct Spectrum {
  std::vector<double> eigenvalues;
  double min_eigenvalue = 0.0;
};

/// Spectrum plus orthonormal eigenvectors (columns, same order).
struct EigenSystem {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
  int sweeps = 0;
};

inline constexpr double kJacobiOffDiagTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic complex Jacobi. Throws ConvergenceError with the residual
/// off-diagonal norm when kJacobiMaxSweeps sweeps are not enough.
EigenSystem eigensystem(const HermitianOperator& h);
Spectrum hermitian_eig(const HermitianOperator& h);

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
  explicit operator bool() const noexcept { return psd; }
};

/// min eigenvalue >= -tol * max(1, largest |eigenvalue|).
PsdCheck is_psd(const HermitianOperator& h, double tol = kPsdTol);

/// Hermitian, unit trace, positive semidefinite. Violations are rejected
/// with InvalidStateError; nothing is renormalized.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);
  explicit DensityMatrix(ComplexMatrix m)
      : DensityMatrix(HermitianOperator(std::move(m))) {}

  const HermitianOperator& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  std::size_t dim() const noexcept { return op_.dim(); }

  static DensityMatrix maximally_mixed(std::size_t dim);
  /// Normalizes the ket before forming the projector.
  static DensityMatrix pure(std::span<const Complex> ket);

 private:
  HermitianOperator op_;
};

/// Factors n = d * d; throws DimensionError when n is not a perfect square.
std::size_t exact_sqrt(std::size_t n);

}  // namespace spakit
