#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pgap/errors.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/random.hpp"

namespace pgap {

enum class ModelKind { hadamard_power, xxzz_chain, random_local };

struct ModelParams {
  std::size_t n = 1;
  std::size_t locality = 2;  // random_local only
  std::size_t terms = 1;     // random_local only
  std::uint64_t seed = 0;    // random_local only
};

/// ((X + Z)/√2)^{⊗n}: 2^n terms of weight 2^{-n/2}, operator norm 1.
inline Hamiltonian hadamard_power(std::size_t n, const AlgebraLimits& limits = {}) {
  if (n < 1) throw PreconditionError("hadamard_power needs n >= 1");
  const Hamiltonian had(1, {{PauliString::parse("X"), M_SQRT1_2}, {PauliString::parse("Z"), M_SQRT1_2}});
  return tensor_power(had, static_cast<int>(n), limits);
}

/// sum_{i} (X_i X_{i+1} + Z_i Z_{i+1}) on an open chain of n sites.
inline Hamiltonian xxzz_chain(std::size_t n) {
  if (n < 2) throw PreconditionError("xxzz_chain needs n >= 2");
  std::vector<std::pair<PauliString, double>> terms;
  terms.reserve(2 * (n - 1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    PauliString xx(n);
    xx.set(i, true, false);
    xx.set(i + 1, true, false);
    PauliString zz(n);
    zz.set(i, false, true);
    zz.set(i + 1, false, true);
    terms.emplace_back(std::move(xx), 1.0);
    terms.emplace_back(std::move(zz), 1.0);
  }
  return Hamiltonian(n, terms);
}

/// `terms` strings each acting non-trivially on exactly `locality` distinct
/// sites, coefficients uniform in [-1, 1]. Repeated strings are merged.
inline Hamiltonian random_local(std::size_t n, std::size_t locality, std::size_t terms, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("random_local needs n >= 1");
  if (locality < 1 || locality > n) {
    throw PreconditionError("random_local needs 1 <= locality <= n, got locality " + std::to_string(locality));
  }
  if (terms < 1) throw PreconditionError("random_local needs at least one term");
  SplitMix64 rng(stream_seed(seed, 0));
  std::vector<std::pair<PauliString, double>> out;
  out.reserve(terms);
  std::vector<std::size_t> sites(n);
  for (std::size_t t = 0; t < terms; ++t) {
    std::iota(sites.begin(), sites.end(), std::size_t{0});
    // Partial Fisher-Yates picks the support.
    for (std::size_t i = 0; i < locality; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(sites[i], sites[j]);
    }
    PauliString p(n);
    for (std::size_t i = 0; i < locality; ++i) {
      switch (rng.below(3)) {
        case 0:
          p.set(sites[i], true, false);
          break;
        case 1:
          p.set(sites[i], false, true);
          break;
        default:
          p.set(sites[i], true, true);
          break;
      }
    }
    out.emplace_back(std::move(p), rng.uniform(-1.0, 1.0));
  }
  return Hamiltonian(n, out);
}

inline Hamiltonian build_model(ModelKind kind, const ModelParams& params, const AlgebraLimits& limits = {}) {
  switch (kind) {
    case ModelKind::hadamard_power:
      return hadamard_power(params.n, limits);
    case ModelKind::xxzz_chain:
      return xxzz_chain(params.n);
    case ModelKind::random_local:
      return random_local(params.n, params.locality, params.terms, params.seed);
  }
  throw PreconditionError("unknown model kind");
}

}  // namespace pgap
