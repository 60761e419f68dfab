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

#include "spakit/detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "spakit/poly.hpp"
#include "spakit/rng.hpp"
#include "spakit/spa.hpp"

namespace spakit {
namespace {

// Roots closer than this may be one scattered multiple root.
constexpr double kClusterRadius = 1e-3;

Spectrum make_spectrum(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  const double min = values.empty() ? 0.0 : values.back();
  return Spectrum{std::move(values), min};
}

Spectrum shift_to_pt(const Spectrum& spa, double trace) {
  std::vector<double> pt;
  pt.reserve(spa.eigenvalues.size());
  for (double x : spa.eigenvalues) pt.push_back(9.0 * x - 2.0 * trace);
  return make_spectrum(std::move(pt));
}

void require_two_qubit(std::size_t dim, const char* what) {
  if (dim != 4)
    throw DimensionError(std::string(what) + " expects a two-qubit operator (dim 4), got dim " +
                         std::to_string(dim));
}

}  // namespace

MomentVector moments(const HermitianOperator& rho, std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("moments needs n_max >= 1");
  MomentVector mv;
  ComplexMatrix power = rho.matrix();
  mv.values.push_back(power.trace().real());
  for (std::size_t n = 2; n <= n_max; ++n) {
    power = power * rho.matrix();
    mv.values.push_back(power.trace().real());
  }
  return mv;
}

RecoveredSpectrum eigenvalues_from_moments(const MomentVector& mu, std::size_t dim,
                                           double imag_tol) {
  if (dim == 0 || mu.values.size() < dim) {
    throw std::invalid_argument("need at least " + std::to_string(dim) +
                                " moments, got " + std::to_string(mu.values.size()));
  }
  const std::vector<double> e =
      elementary_from_power_sums(std::span<const double>(mu.values).first(dim));
  // x^n - e1 x^{n-1} + e2 x^{n-2} - ...
  std::vector<double> coeffs(dim);
  for (std::size_t k = 0; k < dim; ++k) coeffs[k] = (k % 2 == 0) ? -e[k] : e[k];
  PolynomialRoots pr = durand_kerner(coeffs);
  polish_root_clusters(coeffs, pr, kClusterRadius, imag_tol);

  RecoveredSpectrum out;
  out.converged = std::all_of(pr.settled.begin(), pr.settled.end(), [](bool b) { return b; });
  for (const auto& z : pr.roots) {
    out.eigenvalues.push_back(z.real());
    out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  out.consistent = out.max_imag < imag_tol;
  return out;
}

HermitianOperator invert_ps(const HermitianOperator& rho_out) {
  require_two_qubit(rho_out.dim(), "invert_ps");
  const ComplexMatrix shifted =
      rho_out.matrix() * Complex(9.0) - ComplexMatrix::identity(4) * Complex(2.0);
  return HermitianOperator(partial_transpose(shifted, 2, 2, Subsystem::Second));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Entangled: return "entangled";
    case Verdict::SeparablePPT: return "separable_PPT";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram sample_outcomes(const MeasurementModel& model, const HermitianOperator& rho,
                          std::uint64_t n, std::uint64_t seed, std::size_t chunks) {
  const Expectation ex = simulate_expectation(model, rho);
  std::vector<double> probs = ex.probabilities;
  const bool has_failure = model.failure_element().has_value();
  if (has_failure) probs.push_back(ex.failure_probability);
  for (double& p : probs) p = std::max(p, 0.0);

  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  Histogram h{std::vector<std::uint64_t>(probs.size(), 0), has_failure};
  if (n == 0 || probs.empty()) return h;
  const double total = cdf.back();
  if (!(total > 0.0)) throw std::invalid_argument("all outcome probabilities vanish");
  std::size_t last_nonzero = probs.size() - 1;
  while (last_nonzero > 0 && probs[last_nonzero] == 0.0) --last_nonzero;

  const CounterRng rng(seed);
  auto run = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& counts) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u = rng.uniform(i) * total;
      auto idx = static_cast<std::size_t>(
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      counts[std::min(idx, last_nonzero)] += 1;
    }
  };

  chunks = std::clamp<std::size_t>(chunks, 1, static_cast<std::size_t>(std::min<std::uint64_t>(n, 1024)));
  if (chunks == 1) {
    run(0, n, h.counts);
    return h;
  }
  std::vector<std::vector<std::uint64_t>> partial(chunks,
                                                  std::vector<std::uint64_t>(probs.size(), 0));
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = n * c / chunks, end = n * (c + 1) / chunks;
    workers.emplace_back(run, begin, end, std::ref(partial[c]));
  }
  for (auto& w : workers) w.join();
  for (const auto& part : partial)
    for (std::size_t j = 0; j < part.size(); ++j) h.counts[j] += part[j];
  return h;
}

ProtocolReport verdict_exact(const DensityMatrix& rho_ab, const DetectOptions& opts) {
  require_two_qubit(rho_ab.dim(), "verdict_exact");
  static const SpaResult ps = spa_partial_transpose(2);
  const HermitianOperator out = apply(ps.choi, rho_ab);

  ProtocolReport r;
  r.spa_spectrum = hermitian_eig(out);
  r.pt_spectrum = shift_to_pt(r.spa_spectrum, 1.0);
  r.moments = moments(out, 4);
  const RecoveredSpectrum rec = eigenvalues_from_moments(r.moments, 4, opts.imag_tol_exact);
  r.recovered_eigenvalues = rec.eigenvalues;
  r.roots_consistent = rec.consistent;
  r.verdict = r.pt_spectrum.min_eigenvalue < -opts.verdict_tol ? Verdict::Entangled
                                                               : Verdict::SeparablePPT;
  return r;
}

ProtocolReport verdict_sampled(const DensityMatrix& rho_ab, const MeasurementModel& model,
                               std::uint64_t n_samples, std::uint64_t seed,
                               const DetectOptions& opts) {
  require_two_qubit(rho_ab.dim(), "verdict_sampled");
  if (n_samples < 1) throw std::invalid_argument("verdict_sampled needs n_samples >= 1");
  if (model.dim_in() != 4 || model.dim_out() != 4)
    throw DimensionError("verdict_sampled expects a two-qubit to two-qubit model");

  ProtocolReport r;
  r.sample_count = n_samples;
  r.seed = seed;
  r.histogram = sample_outcomes(model, rho_ab.op(), n_samples, seed, opts.chunks);

  const double n = static_cast<double>(n_samples);
  std::vector<double> freq(model.size());
  for (std::size_t j = 0; j < model.size(); ++j)
    freq[j] = static_cast<double>(r.histogram.counts[j]) / n;

  struct Pipeline {
    MomentVector mu;
    RecoveredSpectrum rec;
    Spectrum pt;
  };
  auto pipeline = [&](const std::vector<double>& p) {
    ComplexMatrix emp(4);
    double trace = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] == 0.0) continue;
      emp += model.outputs()[j].matrix() * Complex(p[j]);
      trace += p[j];
    }
    Pipeline out;
    out.mu = moments(HermitianOperator(std::move(emp)), 4);
    out.rec = eigenvalues_from_moments(out.mu, 4, opts.imag_tol_sampled);
    out.pt = shift_to_pt(make_spectrum(out.rec.eigenvalues), trace);
    return out;
  };

  const Pipeline at = pipeline(freq);
  r.moments = at.mu;
  r.recovered_eigenvalues = at.rec.eigenvalues;
  r.roots_consistent = at.rec.consistent;
  r.spa_spectrum = make_spectrum(at.rec.eigenvalues);
  r.pt_spectrum = at.pt;

  // Linear propagation of the per-outcome binomial error through the
  // pipeline, derivatives by forward differences at the empirical point.
  constexpr double kStep = 1e-6;
  double variance = 0.0;
  for (std::size_t j = 0; j < freq.size(); ++j) {
    const double sigma = std::sqrt(freq[j] * (1.0 - freq[j]) / n);
    if (sigma == 0.0) continue;
    std::vector<double> bumped = freq;
    bumped[j] += kStep;
    const double slope = (pipeline(bumped).pt.min_eigenvalue - at.pt.min_eigenvalue) / kStep;
    variance += slope * slope * sigma * sigma;
  }
  r.margin = opts.sigma_multiplier * std::sqrt(variance);

  const double min = r.pt_spectrum.min_eigenvalue;
  if (!r.roots_consistent)
    r.verdict = Verdict::Inconclusive;
  else if (min + r.margin < -opts.verdict_tol)
    r.verdict = Verdict::Entangled;
  else if (min - r.margin > opts.verdict_tol)
    r.verdict = Verdict::SeparablePPT;
  else
    r.verdict = Verdict::Inconclusive;
  return r;
}

}  // namespace spakit
