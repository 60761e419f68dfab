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

#include <span>
#include <vector>

#include "spakit/matrix.hpp"

namespace spakit {

/// Newton's identities: power sums p_1..p_n -> elementary symmetric
/// polynomials e_1..e_n.
std::vector<double> elementary_from_power_sums(std::span<const double> power_sums);

inline constexpr double kDurandKernerTol = 1e-12;
inline constexpr int kDurandKernerMaxIter = 200;

struct PolynomialRoots {
  std::vector<Complex> roots;
  /// Per root: the final correction was below tolerance.
  std::vector<bool> settled;
  int iterations = 0;
  bool converged = false;
};

/// Roots of the monic polynomial x^n + c[0] x^{n-1} + ... + c[n-1] by
/// Durand-Kerner (Weierstrass) iteration.
PolynomialRoots durand_kerner(std::span<const double> coeffs,
                              double tol = kDurandKernerTol,
                              int max_iter = kDurandKernerMaxIter);

/// Multiple roots scatter into a small star under rounding and stall the
/// iteration. Every cluster of roots within `radius` of each other that
/// contains a root with |imag| >= imag_floor is replaced by the root of the (m-1)-th derivative nearest its centroid,
/// m being the cluster size; an m-fold root of p is a simple root there.
/// Close but distinct real roots are left alone.
void polish_root_clusters(std::span<const double> coeffs, PolynomialRoots& pr,
                          double radius, double imag_floor);

}  // namespace spakit
