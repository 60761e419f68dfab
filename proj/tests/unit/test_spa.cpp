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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spakit/spa.hpp"
#include "testutil.hpp"

using namespace spakit;
using namespace spakit::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<Complex> plus_ket() { return {0.0, kInvSqrt2, kInvSqrt2, 0.0}; }

ComplexMatrix out_op(std::size_t a, std::size_t b) {
  ComplexMatrix m(2);
  m(a, b) = 1.0;
  return m;
}

// The R_S matrix as displayed: blocks on |0><0|, |1><1|, |0><1|, |1><0|.
ComplexMatrix rs_display() {
  const auto k00 = basis_ket(4, 0), k11 = basis_ket(4, 3), kp = plus_ket();
  const ComplexMatrix p00 = ComplexMatrix::projector(k00);
  const ComplexMatrix p11 = ComplexMatrix::projector(k11);
  const ComplexMatrix pp = ComplexMatrix::projector(kp);
  const ComplexMatrix b0 = (p00 * Complex(1.5) + pp + p11 * Complex(0.5)) * Complex(0.5);
  const ComplexMatrix b1 = (p11 * Complex(1.5) + pp + p00 * Complex(0.5)) * Complex(0.5);
  const ComplexMatrix up = (ComplexMatrix::outer(k00, kp) + ComplexMatrix::outer(kp, k11)) *
                           Complex(0.5 * kInvSqrt2);
  return kron(b0, out_op(0, 0)) + kron(b1, out_op(1, 1)) + kron(up, out_op(0, 1)) +
         kron(up.adjoint(), out_op(1, 0));
}

}  // namespace

TEST_CASE("spa_partial_transpose") {
  SUBCASE("two qubits") {
    const SpaResult r = spa_partial_transpose(2);
    REQUIRE(r.exact_noise_weight);
    CHECK(r.exact_noise_weight->str() == "8/9");
    CHECK(r.exact_signal_weight->str() == "1/9");
    CHECK(r.noise_weight + r.signal_weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.choi.dim_in() == 4);
    CHECK(r.choi.dim_out() == 4);
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
    CHECK(max_abs_diff(apply(r.choi, mixed).matrix(), mixed.matrix()) <= 1e-15);
    CHECK(max_abs_diff(partial_trace(r.choi.matrix(), 4, 4, Subsystem::Second),
                       ComplexMatrix::identity(4)) <= 1e-15);
  }
  SUBCASE("qudits") {
    const SpaResult r3 = spa_partial_transpose(3);
    CHECK(r3.exact_noise_weight->str() == "27/28");
    CHECK(r3.exact_signal_weight->str() == "1/28");
    for (std::size_t d : {2u, 3u, 4u}) {
      const SpaResult r = spa_partial_transpose(d);
      CHECK(is_cp(r.choi).psd);
      CHECK(is_trace_preserving(r.choi).preserving);
    }
  }
  CHECK_THROWS(spa_partial_transpose(1));
}

TEST_CASE("eigenvalue shift law") {
  const SpaResult ps = spa_partial_transpose(2);
  auto rng = stream(21);
  for (int t = 0; t < 1000; ++t) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    const Spectrum out = hermitian_eig(apply(ps.choi, rho));
    const Spectrum pt = hermitian_eig(
        HermitianOperator(partial_transpose(rho.matrix(), 2, 2, Subsystem::Second)));
    for (std::size_t i = 0; i < 4; ++i)
      REQUIRE(std::abs(out.eigenvalues[i] - (2.0 / 9.0 + pt.eigenvalues[i] / 9.0)) <= 1e-9);
  }
  // Phi+: (8/9) I/4 + (1/9) PT(Phi+)
  const Spectrum phi = hermitian_eig(apply(ps.choi, phi_plus()));
  const std::vector<double> expected{5.0 / 18, 5.0 / 18, 5.0 / 18, 1.0 / 6};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(phi.eigenvalues[i] - expected[i]) <= 1e-12);
}

TEST_CASE("spa_general") {
  SUBCASE("already CP") {
    const SpaResult r = spa_general(choi_of_map(MapSpec::identity(2)));
    CHECK(r.noise_weight == 0.0);
    CHECK(r.choi.matrix() == choi_of_map(MapSpec::identity(2)).matrix());
  }
  SUBCASE("transposition") {
    // Choi of T has min eigenvalue -1, the noise branch I/2: (1-w)(-1) + w/2 = 0.
    const SpaResult r = spa_general(choi_of_map(MapSpec::transpose(2)));
    CHECK(std::abs(r.noise_weight - 2.0 / 3.0) <= 1e-9);
    CHECK(is_cp(r.choi).psd);
    auto rng = stream(22);
    const DensityMatrix rho = random_density_matrix(2, rng);
    const ComplexMatrix expected = ComplexMatrix::identity(2) * Complex(r.noise_weight / 2.0) +
                                   rho.matrix().transpose() * Complex(r.signal_weight);
    CHECK(max_abs_diff(apply(r.choi, rho).matrix(), expected) <= 1e-12);
  }
  SUBCASE("agrees with the closed-form partial-transpose SPA") {
    for (std::size_t d : {2u, 3u}) {
      const SpaResult general = spa_general(
          choi_of_map(MapSpec::tensor(MapSpec::identity(d), MapSpec::transpose(d))));
      const SpaResult closed = spa_partial_transpose(d);
      CHECK(std::abs(general.noise_weight - closed.noise_weight) <= 1e-9);
      CHECK(max_abs_diff(general.choi.matrix(), closed.choi.matrix()) <= 1e-9);
    }
  }
  SUBCASE("agrees with R_S for the squaring map") {
    const SpaResult general = spa_general(choi_R());
    CHECK(std::abs(general.noise_weight - 0.5) <= 1e-9);
    CHECK(max_abs_diff(general.choi.matrix(), spa_rho_square().choi.matrix()) <= 1e-9);
  }
  SUBCASE("weight is minimal") {
    for (const ChoiOperator& c : {choi_R(), choi_of_map(MapSpec::transpose(2)),
                                  choi_of_map(MapSpec::tensor(MapSpec::identity(2),
                                                              MapSpec::transpose(2)))}) {
      const SpaResult r = spa_general(c);
      CHECK(is_psd(r.choi.op()).psd);
      const double w = r.noise_weight - 1e-6;
      const ComplexMatrix noise = choi_of_map(MapSpec::depolarize(c.dim_in(), c.dim_out())).matrix();
      const ComplexMatrix probe = noise * Complex(w) + c.matrix() * Complex(1.0 - w);
      CHECK(hermitian_eig(HermitianOperator(probe)).min_eigenvalue < -1e-9);
    }
  }
}

TEST_CASE("choi_R") {
  const ChoiOperator r = choi_R();
  CHECK(r.dim_in() == 4);
  CHECK(r.dim_out() == 2);
  CHECK_FALSE(is_cp(r).psd);
  CHECK(is_cp(r).min_eigenvalue == doctest::Approx(-0.5));

  auto rng = stream(23);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = random_density_matrix(2, rng);
    const ComplexMatrix squared = rho.matrix() * rho.matrix();
    CHECK(max_abs_diff(apply(r, kron(rho.matrix(), rho.matrix())), squared) <= 1e-12);
  }
  const ComplexMatrix p0 = ComplexMatrix::projector(basis_ket(2, 0));
  CHECK(max_abs_diff(apply(r, kron(p0, p0)), p0) <= 1e-15);
  const std::vector<double> d{0.75, 0.25};
  const ComplexMatrix rho = ComplexMatrix::diagonal(d);
  CHECK(apply(r, kron(rho, rho)).trace().real() == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("spa_rho_square") {
  const SpaResult rs = spa_rho_square();
  CHECK(max_abs_diff(rs.choi.matrix(), rs_display()) <= 1e-12);
  CHECK(is_cp(rs.choi).psd);
  const auto tp = is_trace_preserving(rs.choi);
  CHECK_FALSE(tp.preserving);
  // Defect is P_sym - I: rank one, eigenvalue -1 on the singlet.
  const Spectrum defect = hermitian_eig(HermitianOperator(tp.defect));
  CHECK(defect.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(defect.eigenvalues[0]) <= 1e-12);
  CHECK(max_abs_diff(partial_trace(rs.choi.matrix(), 4, 2, Subsystem::Second),
                     symmetric_subspace_projector().matrix()) <= 1e-12);

  auto rng = stream(24);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = random_density_matrix(2, rng);
    const ComplexMatrix sq = rho.matrix() * rho.matrix();
    const ComplexMatrix out = apply(rs.choi, kron(rho.matrix(), rho.matrix()));
    const ComplexMatrix expected =
        (ComplexMatrix::identity(2) * Complex(0.5) + sq) * Complex(0.5);
    CHECK(max_abs_diff(out, expected) <= 1e-12);
    CHECK(std::abs(out.trace().real() - 0.5 * (1.0 + sq.trace().real())) <= 1e-12);
  }
}

TEST_CASE("square_via_spa and success_probability") {
  SUBCASE("pure state") {
    const std::vector<Complex> psi{0.6, Complex(0.0, 0.8)};
    const DensityMatrix rho = DensityMatrix::pure(psi);
    CHECK(success_probability(rho) == doctest::Approx(1.0).epsilon(1e-15));
    const SquaringOutcome o = square_via_spa(rho);
    CHECK(o.success_probability == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix expected =
        (ComplexMatrix::identity(2) * Complex(0.5) + rho.matrix()) * Complex(0.5);
    CHECK(max_abs_diff(o.conditional_output.matrix(), expected) <= 1e-12);
    // fidelity <psi|out|psi>
    Complex fid = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        fid += std::conj(psi[i]) * o.conditional_output.matrix()(i, j) * psi[j];
    CHECK(fid.real() == doctest::Approx(0.75).epsilon(1e-12));
  }
  SUBCASE("maximally mixed") {
    const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    CHECK(success_probability(rho) == doctest::Approx(0.75).epsilon(1e-15));
    const SquaringOutcome o = square_via_spa(rho);
    CHECK(o.success_probability == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(max_abs_diff(o.conditional_output.matrix(), rho.matrix()) <= 1e-12);
  }
  SUBCASE("diag(3/4, 1/4)") {
    const std::vector<double> d{0.75, 0.25};
    CHECK(success_probability(DensityMatrix(ComplexMatrix::diagonal(d))) ==
          doctest::Approx(0.8125).epsilon(1e-15));
  }
  SUBCASE("range over random states") {
    auto rng = stream(25);
    for (int t = 0; t < 200; ++t) {
      const DensityMatrix rho = random_density_matrix(2, rng);
      const double p = success_probability(rho);
      CHECK(p >= 0.75 - 1e-12);
      CHECK(p <= 1.0 + 1e-12);
      const SquaringOutcome o = square_via_spa(rho);
      CHECK(std::abs(o.success_probability - p) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(success_probability(DensityMatrix::maximally_mixed(4)), DimensionError);
}

TEST_CASE("symmetric_subspace_projector") {
  const HermitianOperator p = symmetric_subspace_projector();
  const Spectrum s = hermitian_eig(p);
  int rank = 0;
  for (double x : s.eigenvalues) rank += x > 0.5;
  CHECK(rank == 3);
  CHECK(max_abs_diff(p.matrix() * p.matrix(), p.matrix()) <= 1e-15);

  const std::vector<Complex> singlet{0.0, kInvSqrt2, -kInvSqrt2, 0.0};
  const ComplexMatrix annihilated = p.matrix() * ComplexMatrix::projector(singlet);
  CHECK(annihilated.max_abs() <= 1e-15);

  auto rng = stream(26);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix rho = random_density_matrix(2, rng);
    const ComplexMatrix rr = kron(rho.matrix(), rho.matrix());
    CHECK(std::abs((p.matrix() * rr).trace().real() - success_probability(rho)) <= 1e-12);
    CHECK(is_square_product(rr));
  }
  CHECK_FALSE(is_square_product(phi_plus().matrix()));
}
