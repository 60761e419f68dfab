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

#include "spakit/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spakit {

std::vector<double> elementary_from_power_sums(std::span<const double> power_sums) {
  const std::size_t n = power_sums.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  // k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double term = e[k - i] * power_sums[i - 1];
      acc += (i % 2 == 1) ? term : -term;
    }
    e[k] = acc / static_cast<double>(k);
  }
  e.erase(e.begin());
  return e;
}

PolynomialRoots durand_kerner(std::span<const double> coeffs, double tol, int max_iter) {
  const std::size_t n = coeffs.size();
  PolynomialRoots out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  auto eval = [&](Complex z) {
    Complex acc = 1.0;
    for (double c : coeffs) acc = acc * z + c;
    return acc;
  };
  double radius = 0.0;
  for (double c : coeffs) radius = std::max(radius, std::abs(c));
  radius = 1.0 + radius;  // Cauchy bound

  const Complex seed(0.4, 0.9);
  out.roots.resize(n);
  out.settled.assign(n, false);
  Complex power = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.roots[i] = radius * power / std::abs(power);
    power *= seed;
  }

  // Total-step updates: every correction uses the previous iterate, which
  // keeps the root sum equal to -c[0] and the cluster centroids stable.
  std::vector<Complex> next(n);
  for (int it = 1; it <= max_iter; ++it) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= out.roots[i] - out.roots[j];
      if (denom == Complex(0.0)) denom = Complex(tol, tol);
      const Complex step = eval(out.roots[i]) / denom;
      next[i] = out.roots[i] - step;
      const double rel = std::abs(step) / std::max(1.0, std::abs(next[i]));
      out.settled[i] = rel < tol;
      max_step = std::max(max_step, rel);
    }
    out.roots.swap(next);
    out.iterations = it;
    if (max_step < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

namespace {

// Coefficients (highest degree first, leading 1 implicit in `coeffs`) of the
// k-th derivative of the monic polynomial.
std::vector<double> derivative_coeffs(std::span<const double> coeffs, std::size_t k) {
  std::vector<double> full(coeffs.size() + 1);
  full[0] = 1.0;
  std::copy(coeffs.begin(), coeffs.end(), full.begin() + 1);
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t deg = full.size() - 1;
    std::vector<double> d(deg);
    for (std::size_t i = 0; i < deg; ++i) d[i] = full[i] * static_cast<double>(deg - i);
    full.swap(d);
  }
  return full;
}

Complex horner(const std::vector<double>& c, Complex z) {
  Complex acc = 0.0;
  for (double x : c) acc = acc * z + x;
  return acc;
}

}  // namespace

void polish_root_clusters(std::span<const double> coeffs, PolynomialRoots& pr,
                          double radius, double imag_floor) {
  auto& roots = pr.roots;
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) < radius) parent[find(i)] = find(j);

  for (std::size_t r = 0; r < n; ++r) {
    if (find(r) != r) continue;
    std::vector<std::size_t> members;
    bool unresolved = false;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == r) {
        members.push_back(i);
        unresolved |= std::abs(roots[i].imag()) >= imag_floor;
      }
    if (members.size() < 2 || !unresolved) continue;

    Complex z = 0.0;
    for (auto i : members) z += roots[i];
    z /= static_cast<double>(members.size());
    const auto q = derivative_coeffs(coeffs, members.size() - 1);
    const auto dq = derivative_coeffs(coeffs, members.size());
    for (int it = 0; it < 100; ++it) {
      const Complex slope = horner(dq, z);
      if (slope == Complex(0.0)) break;
      const Complex step = horner(q, z) / slope;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    for (auto i : members) {
      roots[i] = z;
      pr.settled[i] = true;
    }
  }
}

}  // namespace spakit
