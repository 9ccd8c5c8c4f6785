#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pgap/errors.hpp"
#include "pgap/game.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/random.hpp"
#include "pgap/spectra.hpp"

namespace pgap {

struct SparsifyParams {
  std::uint64_t m = 1;
  double delta = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;

  void validate() const {
    if (m < 1) throw PreconditionError("sparsify needs m >= 1");
    if (!(delta > 0.0)) throw PreconditionError("sparsify needs delta > 0");
    if (trials < 1) throw PreconditionError("sparsify needs trials >= 1");
  }
};

struct SparsifyReport {
  std::size_t n = 0;
  std::uint64_t m = 0;
  double delta = 0.0;
  double bound = 0.0;  // 2^n e^{-m δ²/32}
  bool bound_vacuous = false;
  double empirical_failure_rate = 0.0;
  std::vector<double> deviations;
  double mean_deviation = 0.0;
  std::size_t terms_before = 0;
  double terms_after_mean = 0.0;
  double pauli1_before = 0.0;
  double pauli1_after_mean = 0.0;
};

/// 2^n e^{-m δ² / 32}. Uncapped; values >= 1 are vacuous.
inline double chernoff_bound(std::size_t n, std::uint64_t m, double delta) {
  if (n < 1 || m < 1 || !(delta > 0.0)) {
    throw PreconditionError("chernoff_bound needs positive n, m and delta");
  }
  return std::exp(static_cast<double>(n) * std::log(2.0) - static_cast<double>(m) * delta * delta / 32.0);
}

/// m i.i.d. draws P ~ |β_P|/Λ, each contributing (Λ/m)·sign(β_P)·P.
/// Unbiased for H, and ‖result‖_P,1 <= Λ.
inline Hamiltonian sample_restriction(const Hamiltonian& h, std::uint64_t m, std::uint64_t seed) {
  if (m < 1) throw PreconditionError("sample_restriction needs m >= 1");
  const TermSampler sampler(h);
  std::vector<std::uint64_t> counts(sampler.size(), 0);
  SplitMix64 rng(stream_seed(seed, 0));
  for (std::uint64_t i = 0; i < m; ++i) ++counts[sampler.pick(rng.uniform())];
  const double unit = sampler.pauli_1_norm() / static_cast<double>(m);
  Hamiltonian::term_map out;
  for (std::size_t i = 0; i < sampler.size(); ++i) {
    if (counts[i] > 0) {
      out.emplace_hint(out.end(), sampler.term(i), unit * static_cast<double>(counts[i]) * sampler.sign(i));
    }
  }
  return Hamiltonian::from_map(h.num_qubits(), std::move(out), h.prune_tolerance());
}

/// Runs `trials` independent restrictions (trial t uses stream_seed(seed, t))
/// and measures ‖H - H''‖ for each with the dense oracle.
inline SparsifyReport empirical_deviation(const Hamiltonian& h, const SparsifyParams& params,
                                          std::size_t dense_limit = kDefaultDenseLimit) {
  params.validate();
  if (h.num_qubits() > dense_limit) {
    throw CapacityError("empirical_deviation needs n <= dense limit " + std::to_string(dense_limit));
  }
  SparsifyReport r;
  r.n = h.num_qubits();
  r.m = params.m;
  r.delta = params.delta;
  r.bound = chernoff_bound(r.n, params.m, params.delta);
  r.bound_vacuous = r.bound >= 1.0;
  r.terms_before = h.num_terms();
  r.pauli1_before = pauli_1_norm(h);
  r.deviations.reserve(params.trials);
  std::uint64_t failures = 0;
  double terms_after = 0.0;
  double pauli1_after = 0.0;
  SpectralOptions so;
  so.dense_limit = dense_limit;
  for (std::uint64_t t = 0; t < params.trials; ++t) {
    const auto restricted = sample_restriction(h, params.m, stream_seed(params.seed, t));
    const double dev = operator_norm(h - restricted, so);
    r.deviations.push_back(dev);
    failures += dev >= params.delta ? 1 : 0;
    terms_after += static_cast<double>(restricted.num_terms());
    pauli1_after += pauli_1_norm(restricted);
  }
  const auto trials = static_cast<double>(params.trials);
  r.empirical_failure_rate = static_cast<double>(failures) / trials;
  double sum = 0.0;
  for (double d : r.deviations) sum += d;
  r.mean_deviation = sum / trials;
  r.terms_after_mean = terms_after / trials;
  r.pauli1_after_mean = pauli1_after / trials;
  return r;
}

}  // namespace pgap
