#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pgap/errors.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/spectra.hpp"

namespace pgap {

/// Promise parameters: YES means λ_max >= 1 - 1/p, NO means λ_max <= 1 - 1/q.
/// p = +infinity encodes the exact YES case λ_max = 1.
struct AmplifyParams {
  int k = 1;
  double p = std::numeric_limits<double>::infinity();
  double q = 1.0;

  double inv_p() const { return std::isinf(p) ? 0.0 : 1.0 / p; }

  void validate() const {
    if (k < 1) throw PreconditionError("k must be >= 1, got " + std::to_string(k));
    if (!(q > 0.0) || !std::isfinite(q)) throw PreconditionError("q must be a positive real");
    if (!(p > 0.0)) throw PreconditionError("p must be positive or infinite");
    if (!(inv_p() < 1.0 / q)) {
      throw PreconditionError("promise needs 1/p < 1/q (YES threshold above NO threshold)");
    }
  }
};

enum class PromiseCase { yes, no, outside };

inline const char* to_string(PromiseCase c) {
  switch (c) {
    case PromiseCase::yes:
      return "yes";
    case PromiseCase::no:
      return "no";
    case PromiseCase::outside:
      return "outside";
  }
  return "outside";
}

/// Measured and bounded quantities for one amplification instance.
struct LemmaReport {
  int k = 0;
  double p = 0.0;
  double q = 0.0;

  double lambda_in = 0.0;
  double lambda_out_exact = 0.0;      // from the eigensolver on H'
  double lambda_out_predicted = 0.0;  // 2((1+λ_in)/2)^k - 1

  double yes_lower_bound = 0.0;  // 1 - k/p
  double no_upper_bound = 0.0;   // 2e^{-k/(2q)} - 1
  double no_lower_bound = 0.0;   // 2(1 - k/(2q)) - 1

  double pauli1_in = 0.0;
  double pauli1_out = 0.0;
  double pauli1_bound = 0.0;  // 1 + 2((1 + pauli1_in)/2)^k

  double gap_lower_bound = 0.0;   // k(1/(2q) - 1/p)
  double gap_before_chain = 0.0;  // 2((1 - k/(2p)) - e^{-k/(2q)})
  bool gap_in_regime = false;     // k <= 2q
  bool gap_chain_holds = false;   // gap_before_chain >= gap_lower_bound

  // Two readings of how far the NO case is pushed from 1: the absolute
  // distance 1 - no_upper_bound and half of it, 1 - e^{-k/(2q)}.
  double no_distance_absolute = 0.0;
  double no_distance_half = 0.0;

  PromiseCase promise_case = PromiseCase::outside;
  bool eigen_identity_holds = false;
  bool pauli_bound_holds = false;
  bool promise_bound_holds = false;
  bool operator_norm_holds = false;
  bool all_bounds_hold = false;
};

/// 2((1+λ)/2)^k - 1, the top eigenvalue of the amplified operator.
inline double exact_eigenvalue_map(double lambda, int k) {
  if (!(lambda >= -1.0 && lambda <= 1.0)) {
    throw PreconditionError("eigenvalue map needs -1 <= lambda <= 1, got " + std::to_string(lambda));
  }
  if (k < 1) throw PreconditionError("k must be >= 1");
  return 2.0 * std::pow((1.0 + lambda) / 2.0, k) - 1.0;
}

/// 1 + 2((1 + ‖H‖_P,1)/2)^k.
inline double pauli_norm_bound(double pauli1, int k) {
  if (!(pauli1 >= 0.0)) throw PreconditionError("pauli 1-norm must be nonnegative");
  return 1.0 + 2.0 * std::pow((1.0 + pauli1) / 2.0, k);
}

/// Lower bound on the game's promise gap: pgap(Hamiltonian) / ‖H‖_P,1.
inline double game_promise_gap(double pgap_ham, double pauli1) {
  if (!(pauli1 > 0.0)) throw PreconditionError("game promise gap needs a positive pauli 1-norm");
  return pgap_ham / pauli1;
}

/// Fills the closed-form bound fields; measured fields stay zero.
inline LemmaReport lemma_bounds(const AmplifyParams& params) {
  params.validate();
  LemmaReport r;
  const double k = params.k;
  const double inv_p = params.inv_p();
  const double x = k / (2.0 * params.q);
  r.k = params.k;
  r.p = params.p;
  r.q = params.q;
  r.yes_lower_bound = 1.0 - k * inv_p;
  r.no_upper_bound = 2.0 * std::exp(-x) - 1.0;
  r.no_lower_bound = 2.0 * (1.0 - x) - 1.0;
  r.gap_lower_bound = k * (1.0 / (2.0 * params.q) - inv_p);
  r.gap_before_chain = 2.0 * ((1.0 - k * inv_p / 2.0) - std::exp(-x));
  r.gap_in_regime = params.k <= 2.0 * params.q;
  r.gap_chain_holds = r.gap_before_chain >= r.gap_lower_bound;
  r.no_distance_absolute = 1.0 - r.no_upper_bound;
  r.no_distance_half = 1.0 - std::exp(-x);
  return r;
}

struct AmplifyOptions {
  AlgebraLimits limits{};
  std::size_t dense_limit = kDefaultDenseLimit;
  /// Skip the ‖H‖ <= 1 check when neither the dense norm nor ‖H‖_P,1 <= 1 can certify it.
  bool assume_norm_bounded = false;
  double norm_tolerance = 1e-9;
};

/// Checks -1 ≼ H ≼ 1: dense norm when small, else ‖H‖_P,1 <= 1, else the caller's override.
inline void check_norm_precondition(const Hamiltonian& h, const AmplifyOptions& opts) {
  if (h.num_qubits() <= opts.dense_limit && !h.is_zero()) {
    SpectralOptions so;
    so.dense_limit = opts.dense_limit;
    const double norm = operator_norm(h, so);
    if (norm > 1.0 + opts.norm_tolerance) {
      throw PreconditionError("amplify needs operator norm <= 1, got " + std::to_string(norm));
    }
    return;
  }
  if (pauli_1_norm(h) <= 1.0 + opts.norm_tolerance || opts.assume_norm_bounded) return;
  throw PreconditionError("amplify cannot certify operator norm <= 1 on " + std::to_string(h.num_qubits()) +
                          " qubits; pass the norm-bounded override to proceed");
}

/// H' = 2((I + H)/2)^{⊗k} - I on k·n qubits.
inline Hamiltonian amplify(const Hamiltonian& h, int k, const AmplifyOptions& opts = {}) {
  if (k < 1) throw PreconditionError("k must be >= 1, got " + std::to_string(k));
  const auto n = h.num_qubits();
  const auto shifted =
      linear_combine({{0.5, identity(n)}, {0.5, h}}, opts.limits.prune_tolerance);
  const auto projected = std::pow(static_cast<long double>(shifted.num_terms()), k);
  if (projected > static_cast<long double>(opts.limits.term_cap)) {
    throw CapacityError("amplification would produce " + std::to_string(shifted.num_terms()) + "^" +
                        std::to_string(k) + " terms, above the cap of " + std::to_string(opts.limits.term_cap));
  }
  check_norm_precondition(h, opts);
  const auto power = tensor_power(shifted, k, opts.limits);
  return linear_combine({{2.0, power}, {-1.0, identity(n * static_cast<std::size_t>(k))}},
                        opts.limits.prune_tolerance);
}

struct VerifyOptions {
  AmplifyOptions amplify{};
  SpectralOptions spectral{};
  double identity_tolerance = 1e-8;
  double bound_tolerance = 1e-9;
};

/// Amplifies H and checks every inequality of the construction numerically.
inline LemmaReport verify_amplification(const Hamiltonian& h, const AmplifyParams& params,
                                        const VerifyOptions& opts = {}) {
  auto r = lemma_bounds(params);
  const auto amplified = amplify(h, params.k, opts.amplify);

  auto spectral = opts.spectral;
  spectral.dense_limit = opts.amplify.dense_limit;
  const auto in = extremal_eigs(h, spectral);
  const auto out = extremal_eigs(amplified, spectral);
  if (!in.converged || !out.converged) {
    throw AlgebraError("verify_amplification: eigensolver did not converge");
  }
  const double tol = opts.bound_tolerance;
  r.lambda_in = in.lambda_max;
  r.lambda_out_exact = out.lambda_max;
  r.lambda_out_predicted = exact_eigenvalue_map(std::clamp(in.lambda_max, -1.0, 1.0), params.k);
  r.eigen_identity_holds = std::abs(r.lambda_out_exact - r.lambda_out_predicted) <= opts.identity_tolerance;
  r.operator_norm_holds = out.operator_norm() <= 1.0 + tol;

  r.pauli1_in = pauli_1_norm(h);
  r.pauli1_out = pauli_1_norm(amplified);
  r.pauli1_bound = pauli_norm_bound(r.pauli1_in, params.k);
  r.pauli_bound_holds = r.pauli1_out <= r.pauli1_bound + tol;

  if (r.lambda_in >= 1.0 - params.inv_p() - tol) {
    r.promise_case = PromiseCase::yes;
    r.promise_bound_holds = r.lambda_out_exact >= r.yes_lower_bound - tol;
  } else if (r.lambda_in <= 1.0 - 1.0 / params.q + tol) {
    r.promise_case = PromiseCase::no;
    // Lower side of the sandwich, written with the measured 1/a = 1 - λ_in
    // rather than 1/q since the instance may sit strictly below the threshold.
    const double sandwich_lower = 1.0 - params.k * (1.0 - r.lambda_in);
    r.promise_bound_holds =
        r.lambda_out_exact <= r.no_upper_bound + tol && r.lambda_out_exact >= sandwich_lower - tol;
  } else {
    r.promise_case = PromiseCase::outside;
    r.promise_bound_holds = false;
  }
  r.all_bounds_hold = r.eigen_identity_holds && r.operator_norm_holds && r.pauli_bound_holds && r.promise_bound_holds;
  return r;
}

}  // namespace pgap
