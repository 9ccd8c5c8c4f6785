#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgap/errors.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/random.hpp"

namespace pgap {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultDenseLimit = 12;
inline constexpr std::size_t kMatrixFreeLimit = 26;

/// Normalized amplitude vector over 2^n computational-basis states.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-9;

  StateVector() = default;

  /// Requires unit norm within kNormTolerance.
  StateVector(std::size_t n, std::vector<cplx> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_dimension();
    const double norm = euclidean_norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
      throw PreconditionError("state vector has norm " + std::to_string(norm) + ", expected 1");
    }
  }

  /// Rescales to unit norm, accepting deviations up to `max_deviation`.
  static StateVector normalized(std::size_t n, std::vector<cplx> amplitudes, double max_deviation) {
    StateVector s;
    s.n_ = n;
    s.amps_ = std::move(amplitudes);
    s.check_dimension();
    const double norm = s.euclidean_norm();
    if (!(std::abs(norm - 1.0) <= max_deviation)) {
      throw PreconditionError("state vector norm " + std::to_string(norm) + " deviates from 1 by more than " +
                              std::to_string(max_deviation));
    }
    for (auto& a : s.amps_) a /= norm;
    return s;
  }

  /// |index> in the computational basis; site 0 is the most significant bit.
  static StateVector basis(std::size_t n, std::uint64_t index) {
    std::vector<cplx> a(std::size_t{1} << n, 0.0);
    a.at(index) = 1.0;
    return StateVector(n, std::move(a));
  }

  /// Product state from a string over {0, 1, +, -}.
  static StateVector product(std::string_view spec) {
    const std::size_t n = spec.size();
    std::vector<cplx> a(std::size_t{1} << n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      cplx zero;
      cplx one;
      switch (spec[j]) {
        case '0':
          zero = 1.0, one = 0.0;
          break;
        case '1':
          zero = 0.0, one = 1.0;
          break;
        case '+':
          zero = M_SQRT1_2, one = M_SQRT1_2;
          break;
        case '-':
          zero = M_SQRT1_2, one = -M_SQRT1_2;
          break;
        default:
          throw ParseError("product state character '" + std::string(1, spec[j]) + "' at position " +
                           std::to_string(j + 1) + " is not one of 0 1 + -");
      }
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - j);
      for (std::uint64_t b = 0; b < a.size(); ++b) a[b] *= (b & bit) ? one : zero;
    }
    return StateVector(n, std::move(a));
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

 private:
  void check_dimension() const {
    if (n_ > kMatrixFreeLimit) {
      throw CapacityError("state vectors are limited to " + std::to_string(kMatrixFreeLimit) + " qubits");
    }
    if (amps_.size() != (std::size_t{1} << n_)) {
      throw DimensionError("state on " + std::to_string(n_) + " qubits needs " +
                           std::to_string(std::size_t{1} << n_) + " amplitudes, got " + std::to_string(amps_.size()));
    }
  }

  double euclidean_norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  std::size_t n_ = 0;
  std::vector<cplx> amps_;
};

namespace detail {

/// A Pauli term in the form used by the basis-state kernels:
/// P|b> = phase · (-1)^{|z ∧ b|} |b ⊕ x>, with phase = coeff · i^{#Y}.
struct BasisTerm {
  std::uint64_t x;
  std::uint64_t z;
  cplx weight;
};

inline cplx i_power(std::size_t e) {
  constexpr double re[4] = {1, 0, -1, 0};
  constexpr double im[4] = {0, 1, 0, -1};
  return {re[e % 4], im[e % 4]};
}

inline std::vector<BasisTerm> basis_terms(const Hamiltonian& h) {
  std::vector<BasisTerm> out;
  out.reserve(h.num_terms());
  for (const auto& [p, c] : h.terms()) {
    const auto [x, z] = p.basis_masks();
    out.push_back({x, z, c * i_power(p.y_count())});
  }
  return out;
}

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

}  // namespace detail

using DenseMatrix = Eigen::MatrixXcd;

/// Σ β_P · matrix(P) as a dense 2^n × 2^n matrix.
inline DenseMatrix to_dense(const Hamiltonian& h, std::size_t dense_limit = kDefaultDenseLimit) {
  const auto n = h.num_qubits();
  if (n > dense_limit) {
    throw CapacityError("dense matrix on " + std::to_string(n) + " qubits exceeds the dense limit of " +
                        std::to_string(dense_limit));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : detail::basis_terms(h)) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(static_cast<Eigen::Index>(b ^ t.x), static_cast<Eigen::Index>(b)) += t.weight * detail::parity_sign(t.z & b);
    }
  }
  return m;
}

/// H·v without materializing H.
inline std::vector<cplx> matvec(const Hamiltonian& h, std::span<const cplx> v) {
  const auto n = h.num_qubits();
  if (n > kMatrixFreeLimit || v.size() != (std::size_t{1} << n)) {
    throw DimensionError("matvec: vector of length " + std::to_string(v.size()) + " does not match " +
                         std::to_string(n) + " qubits");
  }
  std::vector<cplx> out(v.size(), 0.0);
  for (const auto& t : detail::basis_terms(h)) {
    for (std::uint64_t b = 0; b < v.size(); ++b) {
      out[b ^ t.x] += t.weight * detail::parity_sign(t.z & b) * v[b];
    }
  }
  return out;
}

inline std::vector<cplx> matvec(const Hamiltonian& h, const StateVector& v) {
  return matvec(h, std::span<const cplx>(v.amplitudes()));
}

/// <ψ|P|ψ> for a single string; real because P is Hermitian.
inline double pauli_expectation(const PauliString& p, const StateVector& psi) {
  if (p.size() != psi.num_qubits()) {
    throw DimensionError("pauli string on " + std::to_string(p.size()) + " qubits vs state on " +
                         std::to_string(psi.num_qubits()));
  }
  const auto [x, z] = p.basis_masks();
  const auto& a = psi.amplitudes();
  cplx acc = 0.0;
  for (std::uint64_t b = 0; b < a.size(); ++b) {
    acc += std::conj(a[b ^ x]) * a[b] * detail::parity_sign(z & b);
  }
  acc *= detail::i_power(p.y_count());
  return acc.real();
}

/// <ψ|H|ψ> computed term by term as Σ β_P <ψ|P|ψ>.
inline double expectation(const Hamiltonian& h, const StateVector& psi, double imag_tolerance = 1e-10) {
  if (h.num_qubits() != psi.num_qubits()) {
    throw DimensionError("hamiltonian on " + std::to_string(h.num_qubits()) + " qubits vs state on " +
                         std::to_string(psi.num_qubits()));
  }
  const auto& a = psi.amplitudes();
  cplx total = 0.0;
  for (const auto& t : detail::basis_terms(h)) {
    cplx acc = 0.0;
    for (std::uint64_t b = 0; b < a.size(); ++b) {
      acc += std::conj(a[b ^ t.x]) * a[b] * detail::parity_sign(t.z & b);
    }
    total += t.weight * acc;
  }
  if (std::abs(total.imag()) > imag_tolerance) {
    throw AlgebraError("expectation has imaginary residue " + std::to_string(total.imag()));
  }
  return total.real();
}

enum class SpectralMethod { dense, iterative };

struct SpectralOptions {
  double tol = 1e-8;
  std::size_t max_iters = 100000;
  std::size_t dense_limit = kDefaultDenseLimit;
  bool force_iterative = false;
  std::uint64_t seed = 0x5eed;
};

struct SpectralResult {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  std::optional<StateVector> eigvec_max;  // dense path only
  SpectralMethod method = SpectralMethod::dense;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = true;

  double operator_norm() const { return std::max(std::abs(lambda_max), std::abs(lambda_min)); }
};

namespace detail {

struct PowerResult {
  double eigenvalue;
  std::size_t iterations;
  double residual;
  bool converged;
};

/// Power iteration on sign·H + shift·I, which is positive semidefinite for
/// shift >= ‖H‖_P,1, so its dominant eigenvalue is the extremal one sought.
inline PowerResult shifted_power(const Hamiltonian& h, double sign, double shift, const SpectralOptions& opts) {
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  SplitMix64 rng(stream_seed(opts.seed, sign > 0 ? 1 : 2));
  std::vector<cplx> v(dim);
  for (auto& a : v) a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  auto normalize = [](std::vector<cplx>& w) {
    double s = 0.0;
    for (const auto& a : w) s += std::norm(a);
    s = std::sqrt(s);
    for (auto& a : w) a /= s;
  };
  normalize(v);
  PowerResult r{0.0, 0, 0.0, false};
  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    auto hv = matvec(h, std::span<const cplx>(v));
    cplx rq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) rq += std::conj(v[i]) * hv[i];
    const double lambda = rq.real();
    double res = 0.0;
    for (std::size_t i = 0; i < dim; ++i) res += std::norm(hv[i] - lambda * v[i]);
    r = {lambda, it, std::sqrt(res), false};
    if (r.residual <= opts.tol) {
      r.converged = true;
      return r;
    }
    for (std::size_t i = 0; i < dim; ++i) v[i] = sign * hv[i] + shift * v[i];
    normalize(v);
  }
  return r;
}

}  // namespace detail

/// λ_max and λ_min of H. Dense eigensolve up to the dense limit, otherwise
/// shifted power iteration with matvec. Non-convergence is reported through
/// `converged == false`, never as a silent answer.
inline SpectralResult extremal_eigs(const Hamiltonian& h, const SpectralOptions& opts = {}) {
  if (h.is_zero()) {
    throw PreconditionError("extremal_eigs needs a nonzero hamiltonian");
  }
  SpectralResult out;
  if (!opts.force_iterative && h.num_qubits() <= opts.dense_limit) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(to_dense(h, opts.dense_limit));
    const auto& evals = solver.eigenvalues();
    out.lambda_min = evals(0);
    out.lambda_max = evals(evals.size() - 1);
    const Eigen::VectorXcd top = solver.eigenvectors().col(evals.size() - 1);
    out.eigvec_max = StateVector::normalized(h.num_qubits(), std::vector<cplx>(top.data(), top.data() + top.size()),
                                             1e-6);
    out.method = SpectralMethod::dense;
    return out;
  }
  if (h.num_qubits() > kMatrixFreeLimit) {
    throw CapacityError("iterative eigensolver is limited to " + std::to_string(kMatrixFreeLimit) + " qubits");
  }
  const double shift = pauli_1_norm(h);
  const auto top = detail::shifted_power(h, 1.0, shift, opts);
  const auto bottom = detail::shifted_power(h, -1.0, shift, opts);
  out.lambda_max = top.eigenvalue;
  out.lambda_min = bottom.eigenvalue;
  out.method = SpectralMethod::iterative;
  out.iterations = top.iterations + bottom.iterations;
  out.residual = std::max(top.residual, bottom.residual);
  out.converged = top.converged && bottom.converged;
  return out;
}

/// ‖H‖ = max(|λ_max|, |λ_min|). Throws if the iterative path fails to converge.
inline double operator_norm(const Hamiltonian& h, const SpectralOptions& opts = {}) {
  if (h.is_zero()) return 0.0;
  const auto r = extremal_eigs(h, opts);
  if (!r.converged) {
    throw AlgebraError("operator norm: eigensolver did not converge in " + std::to_string(r.iterations) +
                       " iterations (residual " + std::to_string(r.residual) + ")");
  }
  return r.operator_norm();
}

/// All eigenvalues in ascending order; dense only.
inline Eigen::VectorXd eigenvalues(const Hamiltonian& h, std::size_t dense_limit = kDefaultDenseLimit) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(to_dense(h, dense_limit), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace pgap
