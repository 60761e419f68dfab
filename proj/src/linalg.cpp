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

#include "spakit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace spakit {
namespace {

void check_bipartite(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b,
                     const char* what) {
  if (d_a == 0 || d_b == 0 || m.dim() != d_a * d_b) {
    std::ostringstream os;
    os << what << ": matrix of dim " << m.dim()
       << " does not factor as dims " << describe_dims(d_a, d_b);
    throw DimensionError(os.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix r(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          r(i * db + k, j * db + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_a,
                            std::size_t d_b, Subsystem over) {
  check_bipartite(m, d_a, d_b, "partial_trace");
  if (over == Subsystem::First) {
    ComplexMatrix r(d_b);
    for (std::size_t k = 0; k < d_b; ++k)
      for (std::size_t l = 0; l < d_b; ++l)
        for (std::size_t i = 0; i < d_a; ++i)
          r(k, l) += m(i * d_b + k, i * d_b + l);
    return r;
  }
  ComplexMatrix r(d_a);
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_a; ++j)
      for (std::size_t k = 0; k < d_b; ++k)
        r(i, j) += m(i * d_b + k, j * d_b + k);
  return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d_a,
                                std::size_t d_b, Subsystem on) {
  check_bipartite(m, d_a, d_b, "partial_transpose");
  ComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_a; ++j)
      for (std::size_t k = 0; k < d_b; ++k)
        for (std::size_t l = 0; l < d_b; ++l) {
          const Complex v = m(i * d_b + k, j * d_b + l);
          if (on == Subsystem::First)
            r(j * d_b + k, i * d_b + l) = v;
          else
            r(i * d_b + l, j * d_b + k) = v;
        }
  return r;
}

HermitianOperator::HermitianOperator(ComplexMatrix m, double tol)
    : m_(std::move(m)) {
  const double defect = max_abs_diff(m_, m_.adjoint());
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |m - m^dagger| = " << defect
       << " exceeds " << tol;
    throw InvalidStateError(os.str());
  }
  const std::size_t n = m_.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m_(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

EigenSystem eigensystem(const HermitianOperator& h) {
  ComplexMatrix a = h.matrix();
  const std::size_t n = a.dim();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kJacobiOffDiagTol * std::max(1.0, frobenius_norm(a));

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep == kJacobiMaxSweeps) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge in " << kJacobiMaxSweeps
         << " sweeps; residual off-diagonal norm " << off;
      throw ConvergenceError(os.str());
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, q); a <- G^dagger a G.
        const Complex g_pq = s * phase;
        const Complex g_qp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * g_qp;
          a(k, q) = akp * g_pq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * c;
        }
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  EigenSystem out{std::vector<double>(n), ComplexMatrix(n), sweep};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

Spectrum hermitian_eig(const HermitianOperator& h) {
  auto sys = eigensystem(h);
  const double min = sys.eigenvalues.back();
  return Spectrum{std::move(sys.eigenvalues), min};
}

PsdCheck is_psd(const HermitianOperator& h, double tol) {
  const Spectrum s = hermitian_eig(h);
  double scale = 1.0;
  for (double x : s.eigenvalues) scale = std::max(scale, std::abs(x));
  return PsdCheck{s.min_eigenvalue >= -tol * scale, s.min_eigenvalue};
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTol)) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", expected 1 within " << kTraceTol;
    throw InvalidStateError(os.str());
  }
  const double min = hermitian_eig(op_).min_eigenvalue;
  if (!(min >= -kPsdTol)) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << min;
    throw InvalidStateError(os.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) *
                       Complex(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
  double norm2 = 0.0;
  for (const auto& z : ket) norm2 += std::norm(z);
  if (!(norm2 > 0.0)) throw InvalidStateError("cannot normalize a zero vector");
  return DensityMatrix(ComplexMatrix::projector(ket) * Complex(1.0 / norm2));
}

std::size_t exact_sqrt(std::size_t n) {
  auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n)
    throw DimensionError("dimension " + std::to_string(n) +
                         " is not a perfect square");
  return d;
}

}  // namespace spakit
