#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "pgap/errors.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/random.hpp"
#include "pgap/spectra.hpp"

namespace pgap {

/// Term table for importance sampling: terms in canonical order with the
/// cumulative distribution of |β_P| / Λ.
class TermSampler {
 public:
  explicit TermSampler(const Hamiltonian& h) {
    if (h.is_zero()) throw PreconditionError("cannot sample terms of the zero hamiltonian");
    terms_.reserve(h.num_terms());
    signs_.reserve(h.num_terms());
    cumulative_.reserve(h.num_terms());
    double acc = 0.0;
    for (const auto& [p, c] : h.terms()) {
      terms_.push_back(p);
      signs_.push_back(c > 0 ? 1 : -1);
      acc += std::abs(c);
      cumulative_.push_back(acc);
    }
    norm_ = acc;
  }

  /// Index of the term selected by u in [0, 1).
  std::size_t pick(double u) const {
    const double target = u * norm_;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), terms_.size() - 1);
  }

  std::size_t size() const { return terms_.size(); }
  const PauliString& term(std::size_t i) const { return terms_[i]; }
  int sign(std::size_t i) const { return signs_[i]; }
  const std::vector<PauliString>& terms() const { return terms_; }
  double pauli_1_norm() const { return norm_; }

 private:
  std::vector<PauliString> terms_;
  std::vector<int> signs_;
  std::vector<double> cumulative_;
  double norm_ = 0.0;
};

/// Draws one term with probability |β_P| / ‖H‖_P,1 and returns it with sign(β_P).
template <typename Rng>
std::pair<PauliString, int> sample_term(const Hamiltonian& h, Rng& rng) {
  const TermSampler sampler(h);
  const auto i = sampler.pick(rng.uniform());
  return {sampler.term(i), sampler.sign(i)};
}

/// One round of the energy-measurement game. `term_index` refers to the
/// canonical term order of the Hamiltonian (see GameTranscript::terms).
struct GameRound {
  std::size_t term_index = 0;
  int coeff_sign = 1;
  int outcome = 1;
  bool accepted = true;

  friend bool operator==(const GameRound&, const GameRound&) = default;
};

struct GameTranscript {
  std::vector<PauliString> terms;  // lookup table for GameRound::term_index
  std::vector<GameRound> rounds;
  std::uint64_t shots = 0;
  std::uint64_t accepted = 0;
  double accept_frequency = 0.0;
  double std_error = 0.0;
  double exact_probability = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const GameTranscript&, const GameTranscript&) = default;
};

namespace detail {

inline void check_game_inputs(const Hamiltonian& h, const StateVector& psi) {
  if (h.is_zero()) throw PreconditionError("the game needs a nonzero hamiltonian");
  if (h.num_qubits() != psi.num_qubits()) {
    throw DimensionError("hamiltonian on " + std::to_string(h.num_qubits()) + " qubits vs state on " +
                         std::to_string(psi.num_qubits()));
  }
}

}  // namespace detail

/// Pr[accept] as the term-wise sum Σ_P (|β_P|/Λ)(1/2 + 1/2 sign(β_P) <P>_ψ).
inline double accept_prob_termwise(const Hamiltonian& h, const StateVector& psi) {
  detail::check_game_inputs(h, psi);
  const double norm = pauli_1_norm(h);
  double total = 0.0;
  for (const auto& [p, c] : h.terms()) {
    const double sign = c > 0 ? 1.0 : -1.0;
    total += (std::abs(c) / norm) * (0.5 + 0.5 * sign * pauli_expectation(p, psi));
  }
  return total;
}

/// Pr[accept] = 1/2 + <H>_ψ / (2‖H‖_P,1), cross-checked against the term-wise sum.
inline double accept_prob_exact(const Hamiltonian& h, const StateVector& psi, double agreement_tolerance = 1e-12) {
  detail::check_game_inputs(h, psi);
  const double closed = 0.5 + expectation(h, psi) / (2.0 * pauli_1_norm(h));
  const double termwise = accept_prob_termwise(h, psi);
  if (std::abs(closed - termwise) > agreement_tolerance) {
    throw AlgebraError("closed-form and term-wise acceptance probabilities differ: " + std::to_string(closed) +
                       " vs " + std::to_string(termwise));
  }
  return std::clamp(closed, 0.0, 1.0);
}

/// Honest prover for the game: measures the sampled term on a fresh copy of ψ.
/// Expectations <P>_ψ are computed once, so every round is an independent
/// draw from the exact outcome distribution.
class HonestProver {
 public:
  HonestProver(const Hamiltonian& h, const StateVector& psi) : sampler_(h) {
    detail::check_game_inputs(h, psi);
    plus_prob_.reserve(sampler_.size());
    for (const auto& p : sampler_.terms()) {
      plus_prob_.push_back(std::clamp((1.0 + pauli_expectation(p, psi)) / 2.0, 0.0, 1.0));
    }
  }

  template <typename Rng>
  GameRound play(Rng& rng) const {
    GameRound r;
    r.term_index = sampler_.pick(rng.uniform());
    r.coeff_sign = sampler_.sign(r.term_index);
    r.outcome = rng.uniform() < plus_prob_[r.term_index] ? 1 : -1;
    r.accepted = r.outcome == r.coeff_sign;
    return r;
  }

  const TermSampler& sampler() const { return sampler_; }

 private:
  TermSampler sampler_;
  std::vector<double> plus_prob_;
};

template <typename Rng>
GameRound play_round(const Hamiltonian& h, const StateVector& psi, Rng& rng) {
  return HonestProver(h, psi).play(rng);
}

/// Runs `shots` rounds. Round i draws from stream_seed(seed, i), so the
/// transcript is identical for any `workers` count.
inline GameTranscript simulate(const Hamiltonian& h, const StateVector& psi, std::uint64_t shots,
                               std::uint64_t seed, unsigned workers = 1) {
  if (shots < 1) throw PreconditionError("simulate needs shots >= 1");
  const HonestProver prover(h, psi);
  GameTranscript t;
  t.terms = prover.sampler().terms();
  t.rounds.resize(shots);
  t.shots = shots;
  t.seed = seed;
  t.exact_probability = accept_prob_exact(h, psi);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      SplitMix64 rng(stream_seed(seed, i));
      t.rounds[i] = prover.play(rng);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(shots, 256))));
  if (workers == 1) {
    run_range(0, shots);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (shots + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const auto begin = std::min<std::uint64_t>(shots, w * chunk);
      const auto end = std::min<std::uint64_t>(shots, begin + chunk);
      pool.emplace_back(run_range, begin, end);
    }
  }

  for (const auto& r : t.rounds) t.accepted += r.accepted ? 1 : 0;
  const double f = static_cast<double>(t.accepted) / static_cast<double>(shots);
  t.accept_frequency = f;
  t.std_error = std::sqrt(f * (1.0 - f) / static_cast<double>(shots));
  return t;
}

}  // namespace pgap
