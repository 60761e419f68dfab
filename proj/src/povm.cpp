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

#include "spakit/povm.hpp"

#include "spakit/spa.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spakit {

MeasurementModel::MeasurementModel(std::size_t dim_in, std::size_t dim_out,
                                   std::vector<PovmElement> elements,
                                   std::vector<HermitianOperator> outputs,
                                   std::optional<PovmElement> failure)
    : dim_in_(dim_in),
      dim_out_(dim_out),
      elements_(std::move(elements)),
      outputs_(std::move(outputs)),
      failure_(std::move(failure)) {
  if (elements_.size() != outputs_.size()) {
    throw DimensionError("measurement model has " + std::to_string(elements_.size()) +
                         " elements but " + std::to_string(outputs_.size()) +
                         " outputs");
  }
  for (const auto& e : elements_)
    if (e.op.dim() != dim_in_)
      throw DimensionError("POVM element " + std::to_string(e.label) + " has dim " +
                           std::to_string(e.op.dim()) + ", expected " +
                           std::to_string(dim_in_));
  for (std::size_t j = 0; j < outputs_.size(); ++j)
    if (outputs_[j].dim() != dim_out_)
      throw DimensionError("output state " + std::to_string(j) + " has dim " +
                           std::to_string(outputs_[j].dim()) + ", expected " +
                           std::to_string(dim_out_));
  if (failure_ && failure_->op.dim() != dim_in_)
    throw DimensionError("failure element has dim " + std::to_string(failure_->op.dim()));
}

ComplexMatrix MeasurementModel::element_sum() const {
  ComplexMatrix s(dim_in_);
  for (const auto& e : elements_) s += e.op.matrix();
  if (failure_) s += failure_->op.matrix();
  return s;
}

ChoiOperator MeasurementModel::reconstruct_choi() const {
  ComplexMatrix c(dim_in_ * dim_out_);
  for (std::size_t j = 0; j < elements_.size(); ++j)
    c += kron(elements_[j].op.matrix().transpose(), outputs_[j].matrix());
  return ChoiOperator(HermitianOperator(std::move(c)), dim_in_, dim_out_);
}

namespace {

// Two-qubit computational basis ket |b1 b2>.
std::vector<Complex> ket2(int b1, int b2) {
  std::vector<Complex> v(4, 0.0);
  v[static_cast<std::size_t>(b1 * 2 + b2)] = 1.0;
  return v;
}

struct Pair {
  int a, b;
};

// W^{abcd}_{ijkl}: input pair (ij, kl), output pair (ab, cd).
struct WLabel {
  Pair ij, kl, ab, cd;
};

class TermCollector {
 public:
  // weight * input (x) output, stored as Pi = (weight * Tr output) input^T and
  // rho = output / Tr output.
  void add(double weight, const ComplexMatrix& input, const ComplexMatrix& output) {
    const double tr = output.trace().real();
    elements.push_back(PovmElement{
        HermitianOperator(input.transpose() * Complex(weight * tr)), elements.size()});
    outputs.emplace_back(output * Complex(1.0 / tr));
  }

  std::vector<PovmElement> elements;
  std::vector<HermitianOperator> outputs;
};

}  // namespace

MeasurementModel build_ps_model() {
  constexpr double kGlobal = 1.0 / 9.0;
  const std::array<WLabel, 6> w_blocks{{
      {{0, 0}, {1, 0}, {0, 0}, {1, 0}},  // W^{0010}_{0010}
      {{0, 1}, {1, 1}, {0, 1}, {1, 1}},  // W^{0111}_{0111}
      {{0, 0}, {0, 1}, {0, 1}, {0, 0}},  // W^{0100}_{0001}
      {{0, 0}, {1, 1}, {0, 1}, {1, 0}},  // W^{0110}_{0011}
      {{1, 1}, {1, 0}, {1, 0}, {1, 1}},  // W^{1011}_{1110}
      {{1, 0}, {0, 1}, {1, 1}, {0, 0}},  // W^{1100}_{1001}
  }};

  TermCollector terms;
  for (const auto& w : w_blocks) {
    const auto up_in = ket2(w.ij.a, w.ij.b), down_in = ket2(w.kl.a, w.kl.b);
    const auto up_out = ket2(w.ab.a, w.ab.b), down_out = ket2(w.cd.a, w.cd.b);
    // W = 1/4 sum_j |phi_j><phi_j| (x) |psi_j><psi_j|,
    // phi_j = up + e^{i pi j/2} down, psi_j = up + e^{-i pi j/2} down.
    for (int j = 1; j <= 4; ++j) {
      const Complex phase = std::polar(1.0, std::numbers::pi * j / 2.0);
      std::vector<Complex> phi(4), psi(4);
      for (std::size_t n = 0; n < 4; ++n) {
        phi[n] = up_in[n] + phase * down_in[n];
        psi[n] = up_out[n] + std::conj(phase) * down_out[n];
      }
      terms.add(kGlobal * 0.25, ComplexMatrix::projector(phi),
                ComplexMatrix::projector(psi));
    }
  }

  // S^{ab}_{ij} = |ij><ij| (x) |ab><ab|
  const std::array<std::pair<Pair, Pair>, 4> unit_s{{
      {{0, 0}, {0, 0}}, {{1, 1}, {1, 1}}, {{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}}};
  const std::array<std::pair<Pair, Pair>, 4> double_s{{
      {{1, 1}, {0, 0}}, {{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}}};
  for (const auto& [in, out] : unit_s)
    terms.add(kGlobal, ComplexMatrix::projector(ket2(in.a, in.b)),
              ComplexMatrix::projector(ket2(out.a, out.b)));
  for (const auto& [in, out] : double_s)
    terms.add(2.0 * kGlobal, ComplexMatrix::projector(ket2(in.a, in.b)),
              ComplexMatrix::projector(ket2(out.a, out.b)));

  return MeasurementModel(4, 4, std::move(terms.elements), std::move(terms.outputs));
}

ComplexMatrix w_block_matrix() {
  return ComplexMatrix{{1.0, 0.0, 0.0, 1.0},
                       {0.0, 1.0, 0.0, 0.0},
                       {0.0, 0.0, 1.0, 0.0},
                       {1.0, 0.0, 0.0, 1.0}};
}

MeasurementModel rs_heralding_model() {
  MeasurementModel partial(4, 2, {PovmElement{symmetric_subspace_projector(), 0}},
                           {HermitianOperator(ComplexMatrix::identity(2) * Complex(0.5))});
  return complete_model(partial);
}

Expectation simulate_expectation(const MeasurementModel& model,
                                 const HermitianOperator& rho_in) {
  if (rho_in.dim() != model.dim_in()) {
    throw DimensionError("state of dim " + std::to_string(rho_in.dim()) +
                         " for a model with input dim " +
                         std::to_string(model.dim_in()));
  }
  auto prob = [&](const HermitianOperator& pi) {
    // Tr[rho Pi] without forming the product.
    Complex acc = 0.0;
    const auto& r = rho_in.matrix();
    const auto& m = pi.matrix();
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = 0; j < r.dim(); ++j) acc += r(i, j) * m(j, i);
    return acc.real();
  };
  Expectation out{{}, 0.0, ComplexMatrix(model.dim_out())};
  out.probabilities.reserve(model.size());
  for (std::size_t j = 0; j < model.size(); ++j) {
    const double p = prob(model.elements()[j].op);
    out.probabilities.push_back(p);
    out.expected_output += model.outputs()[j].matrix() * Complex(p);
  }
  if (model.failure_element()) out.failure_probability = prob(model.failure_element()->op);
  return out;
}

ValidationReport validate_model(const MeasurementModel& model, double tol) {
  ValidationReport rep;
  auto violate = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
  for (std::size_t j = 0; j < model.size(); ++j) {
    const auto check = is_psd(model.elements()[j].op, tol);
    rep.element_min_eigenvalues.push_back(check.min_eigenvalue);
    if (!check) {
      std::ostringstream os;
      os << "element " << j << " is not PSD (min eigenvalue " << check.min_eigenvalue << ")";
      violate(os.str());
    }
  }
  if (model.failure_element()) {
    const auto check = is_psd(model.failure_element()->op, tol);
    rep.failure_min_eigenvalue = check.min_eigenvalue;
    if (!check) violate("failure element is not PSD");
  }
  for (std::size_t j = 0; j < model.outputs().size(); ++j) {
    const auto& out = model.outputs()[j];
    const double defect = out.trace() - 1.0;
    rep.output_trace_defects.push_back(defect);
    if (std::abs(defect) > tol) {
      std::ostringstream os;
      os << "output " << j << " has trace " << out.trace();
      violate(os.str());
    }
    const auto check = is_psd(out, tol);
    rep.output_min_eigenvalues.push_back(check.min_eigenvalue);
    if (!check) {
      std::ostringstream os;
      os << "output " << j << " is not PSD (min eigenvalue " << check.min_eigenvalue << ")";
      violate(os.str());
    }
  }
  rep.sum_defect =
      (model.element_sum() - ComplexMatrix::identity(model.dim_in())).max_abs();
  if (rep.sum_defect > tol) {
    std::ostringstream os;
    os << "elements sum to identity only within " << rep.sum_defect;
    violate(os.str());
  }
  rep.passed = rep.violations.empty();
  return rep;
}

std::string to_string(PptVerdict v) {
  switch (v) {
    case PptVerdict::Separable: return "separable";
    case PptVerdict::Entangled: return "entangled";
    case PptVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PptResult ppt_separability_check(const HermitianOperator& state, std::size_t d_a,
                                 std::size_t d_b, double tol) {
  const auto psd = is_psd(state, tol);
  if (!psd) {
    std::ostringstream os;
    os << "PPT check needs a PSD operator; min eigenvalue " << psd.min_eigenvalue;
    throw InvalidStateError(os.str());
  }
  const HermitianOperator pt(partial_transpose(state.matrix(), d_a, d_b, Subsystem::Second));
  const auto pt_check = is_psd(pt, tol);
  PptResult r{PptVerdict::Inconclusive, pt_check.min_eigenvalue};
  if (!pt_check) {
    r.verdict = PptVerdict::Entangled;
  } else if (d_a * d_b <= 6) {
    r.verdict = PptVerdict::Separable;
  }
  return r;
}

MeasurementModel complete_model(const MeasurementModel& model, double tol) {
  const HermitianOperator rest(ComplexMatrix::identity(model.dim_in()) - model.element_sum());
  const Spectrum s = hermitian_eig(rest);
  if (s.min_eigenvalue < -tol) {
    std::ostringstream os;
    os << "POVM elements exceed the identity (defect min eigenvalue "
       << s.min_eigenvalue << ")";
    throw std::invalid_argument(os.str());
  }
  std::optional<PovmElement> failure = model.failure_element();
  if (s.eigenvalues.front() > tol) {
    ComplexMatrix pi0 = rest.matrix();
    if (failure) pi0 += failure->op.matrix();
    failure = PovmElement{HermitianOperator(std::move(pi0)), model.size()};
  }
  return MeasurementModel(model.dim_in(), model.dim_out(), model.elements(),
                          model.outputs(), std::move(failure));
}

Completeness informational_completeness(const MeasurementModel& model,
                                        double threshold) {
  std::vector<const HermitianOperator*> ops;
  for (const auto& e : model.elements()) ops.push_back(&e.op);
  if (model.failure_element()) ops.push_back(&model.failure_element()->op);
  if (ops.empty()) return Completeness{false, 0};

  // Gram matrix of the Hilbert-Schmidt inner product; real for Hermitian ops.
  const std::size_t n = ops.size();
  ComplexMatrix gram(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      const auto& a = ops[i]->matrix();
      const auto& b = ops[j]->matrix();
      for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) acc += a(r, c) * b(c, r);
      gram(i, j) = acc.real();
    }
  const Spectrum s = hermitian_eig(HermitianOperator(std::move(gram)));
  const auto rank = static_cast<std::size_t>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [&](double x) { return x > threshold; }));
  return Completeness{rank == model.dim_in() * model.dim_in(), rank};
}

}  // namespace spakit
