#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pgap/errors.hpp"
#include "pgap/pauli_string.hpp"

namespace pgap {

inline constexpr double kDefaultPruneTolerance = 1e-12;
inline constexpr std::size_t kDefaultTermCap = std::size_t{1} << 22;

/// Knobs shared by the operations that can blow up the term count.
struct AlgebraLimits {
  std::size_t term_cap = kDefaultTermCap;
  double prune_tolerance = kDefaultPruneTolerance;
};

template <typename T>
concept PauliCoefficient = std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>;

/// Canonical weighted sum of Pauli strings on a fixed number of qubits.
///
/// Each string appears at most once and no stored coefficient has magnitude
/// at or below the prune tolerance. Instances are immutable once built; all
/// arithmetic lives in free functions returning new sums.
template <PauliCoefficient Coeff>
class PauliSum {
 public:
  using coeff_type = Coeff;
  using term_map = std::map<PauliString, Coeff>;

  PauliSum() = default;

  /// Zero operator on n qubits.
  explicit PauliSum(std::size_t n, double prune_tolerance = kDefaultPruneTolerance)
      : n_(n), prune_tolerance_(prune_tolerance) {}

  /// Merges duplicate strings by summation, then prunes.
  PauliSum(std::size_t n, std::span<const std::pair<PauliString, Coeff>> terms,
           double prune_tolerance = kDefaultPruneTolerance)
      : n_(n), prune_tolerance_(prune_tolerance) {
    for (const auto& [p, c] : terms) {
      if (p.size() != n) {
        throw DimensionError("term " + p.str() + " has length " + std::to_string(p.size()) + ", expected " +
                             std::to_string(n));
      }
      terms_[p] += c;
    }
    prune();
  }

  PauliSum(std::size_t n, std::initializer_list<std::pair<PauliString, Coeff>> terms,
           double prune_tolerance = kDefaultPruneTolerance)
      : PauliSum(n, std::span<const std::pair<PauliString, Coeff>>(terms.begin(), terms.size()), prune_tolerance) {}

  /// Takes ownership of an already-merged map and prunes it.
  static PauliSum from_map(std::size_t n, term_map terms, double prune_tolerance = kDefaultPruneTolerance) {
    PauliSum out(n, prune_tolerance);
    out.terms_ = std::move(terms);
    out.prune();
    return out;
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  double prune_tolerance() const { return prune_tolerance_; }
  const term_map& terms() const { return terms_; }

  /// Coefficient of p, zero when absent.
  Coeff coeff(const PauliString& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  /// Maximum weight over the stored strings.
  std::size_t locality() const {
    std::size_t l = 0;
    for (const auto& [p, c] : terms_) l = std::max(l, p.weight());
    return l;
  }

  friend bool operator==(const PauliSum& a, const PauliSum& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  void prune() {
    std::erase_if(terms_, [this](const auto& kv) { return std::abs(kv.second) <= prune_tolerance_; });
  }

  std::size_t n_ = 0;
  term_map terms_;
  double prune_tolerance_ = kDefaultPruneTolerance;
};

/// Real-weighted sum: the Pauli decomposition H = sum_P beta_P P.
using Hamiltonian = PauliSum<double>;
/// Complex-weighted sum, used for intermediate operator products.
using PauliOperator = PauliSum<std::complex<double>>;

inline Hamiltonian identity(std::size_t n, double scale = 1.0) {
  return Hamiltonian(n, {{PauliString(n), scale}});
}

/// Single-term Hamiltonian from its textual string.
inline Hamiltonian single_term(std::string_view pauli, double coeff = 1.0) {
  auto p = PauliString::parse(pauli);
  const auto n = p.size();
  return Hamiltonian(n, {{std::move(p), coeff}});
}

/// Sum of |coefficient| over the canonical decomposition. Pauli strings are an
/// orthogonal operator basis, so this is the minimum over all decompositions.
template <PauliCoefficient Coeff>
double pauli_1_norm(const PauliSum<Coeff>& h) {
  double total = 0.0;
  for (const auto& [p, c] : h.terms()) total += std::abs(c);
  return total;
}

/// theta * H.
template <PauliCoefficient Coeff>
PauliSum<Coeff> scaled(const PauliSum<Coeff>& h, double theta) {
  typename PauliSum<Coeff>::term_map out;
  for (const auto& [p, c] : h.terms()) out.emplace_hint(out.end(), p, c * theta);
  return PauliSum<Coeff>::from_map(h.num_qubits(), std::move(out), h.prune_tolerance());
}

/// sum_i a_i H_i with canonical merging and pruning.
template <PauliCoefficient Coeff>
PauliSum<Coeff> linear_combine(std::span<const std::pair<double, PauliSum<Coeff>>> parts,
                               double prune_tolerance = kDefaultPruneTolerance) {
  if (parts.empty()) {
    throw PreconditionError("linear_combine needs at least one operand");
  }
  const auto n = parts.front().second.num_qubits();
  typename PauliSum<Coeff>::term_map out;
  for (const auto& [a, h] : parts) {
    if (h.num_qubits() != n) {
      throw DimensionError("linear_combine operands act on " + std::to_string(n) + " and " +
                           std::to_string(h.num_qubits()) + " qubits");
    }
    for (const auto& [p, c] : h.terms()) out[p] += c * a;
  }
  return PauliSum<Coeff>::from_map(n, std::move(out), prune_tolerance);
}

// Braced lists cannot deduce Coeff, hence the concrete overloads.
inline Hamiltonian linear_combine(std::initializer_list<std::pair<double, Hamiltonian>> parts,
                                  double prune_tolerance = kDefaultPruneTolerance) {
  return linear_combine<double>(std::span(parts.begin(), parts.size()), prune_tolerance);
}
inline PauliOperator linear_combine(std::initializer_list<std::pair<double, PauliOperator>> parts,
                                    double prune_tolerance = kDefaultPruneTolerance) {
  return linear_combine<std::complex<double>>(std::span(parts.begin(), parts.size()), prune_tolerance);
}

inline Hamiltonian operator+(const Hamiltonian& a, const Hamiltonian& b) { return linear_combine({{1.0, a}, {1.0, b}}); }
inline Hamiltonian operator-(const Hamiltonian& a, const Hamiltonian& b) {
  return linear_combine({{1.0, a}, {-1.0, b}});
}

/// A ⊗ B on n_A + n_B qubits. Fails before expanding if |A|·|B| exceeds the cap.
template <PauliCoefficient Coeff>
PauliSum<Coeff> tensor(const PauliSum<Coeff>& a, const PauliSum<Coeff>& b, const AlgebraLimits& limits = {}) {
  const auto projected = static_cast<long double>(a.num_terms()) * static_cast<long double>(b.num_terms());
  if (projected > static_cast<long double>(limits.term_cap)) {
    throw CapacityError("tensor product would have " + std::to_string(a.num_terms()) + " x " +
                        std::to_string(b.num_terms()) + " terms, above the cap of " + std::to_string(limits.term_cap));
  }
  typename PauliSum<Coeff>::term_map out;
  // Row-major over sorted inputs yields sorted output, so hinted insertion is O(1).
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) out.emplace_hint(out.end(), pa.concat(pb), ca * cb);
  }
  return PauliSum<Coeff>::from_map(a.num_qubits() + b.num_qubits(), std::move(out), limits.prune_tolerance);
}

/// H^{⊗k}, k >= 1. The projected term count |H|^k is checked up front.
template <PauliCoefficient Coeff>
PauliSum<Coeff> tensor_power(const PauliSum<Coeff>& h, int k, const AlgebraLimits& limits = {}) {
  if (k < 1) {
    throw PreconditionError("tensor power needs k >= 1, got " + std::to_string(k));
  }
  const auto projected = std::pow(static_cast<long double>(h.num_terms()), k);
  if (projected > static_cast<long double>(limits.term_cap)) {
    throw CapacityError("tensor power would have " + std::to_string(h.num_terms()) + "^" + std::to_string(k) +
                        " terms, above the cap of " + std::to_string(limits.term_cap));
  }
  auto out = h;
  for (int i = 1; i < k; ++i) out = tensor(out, h, limits);
  return out;
}

inline PauliOperator to_operator(const Hamiltonian& h) {
  PauliOperator::term_map out;
  for (const auto& [p, c] : h.terms()) out.emplace_hint(out.end(), p, c);
  return PauliOperator::from_map(h.num_qubits(), std::move(out), h.prune_tolerance());
}

/// Drops imaginary parts, failing if any exceeds `imag_tolerance`.
inline Hamiltonian to_hamiltonian(const PauliOperator& op, double imag_tolerance = 1e-10) {
  Hamiltonian::term_map out;
  for (const auto& [p, c] : op.terms()) {
    if (std::abs(c.imag()) > imag_tolerance) {
      throw AlgebraError("operator is not Hermitian: term " + p.str() + " has imaginary part " +
                         std::to_string(c.imag()));
    }
    out.emplace_hint(out.end(), p, c.real());
  }
  return Hamiltonian::from_map(op.num_qubits(), std::move(out), op.prune_tolerance());
}

/// Operator product A·B with phases from pauli_mul.
inline PauliOperator multiply(const PauliOperator& a, const PauliOperator& b, const AlgebraLimits& limits = {}) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("multiply operands act on " + std::to_string(a.num_qubits()) + " and " +
                         std::to_string(b.num_qubits()) + " qubits");
  }
  PauliOperator::term_map out;
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      auto [phase, r] = pauli_mul(pa, pb);
      const auto [re, im] = phase.value();
      out[std::move(r)] += ca * cb * std::complex<double>(re, im);
    }
    if (out.size() > limits.term_cap) {
      throw CapacityError("operator product exceeds the term cap of " + std::to_string(limits.term_cap));
    }
  }
  return PauliOperator::from_map(a.num_qubits(), std::move(out), limits.prune_tolerance);
}

/// f(H) = sum_j c_j H^j, expanded in the Pauli basis by Horner's rule.
///
/// Products of Pauli strings pick up factors of ±i; for Hermitian H those
/// cancel pairwise, and any surviving imaginary part above `imag_tolerance`
/// is reported as an AlgebraError.
inline Hamiltonian apply_polynomial(const Hamiltonian& h, std::span<const double> poly,
                                    const AlgebraLimits& limits = {}, double imag_tolerance = 1e-10) {
  if (poly.empty()) {
    throw PreconditionError("polynomial needs at least the constant coefficient");
  }
  const auto n = h.num_qubits();
  const auto hop = to_operator(h);
  const auto constant = [&](double c) {
    return PauliOperator(n, {{PauliString(n), std::complex<double>(c)}}, limits.prune_tolerance);
  };
  auto acc = constant(poly.back());
  for (auto it = poly.rbegin() + 1; it != poly.rend(); ++it) {
    acc = multiply(acc, hop, limits);
    acc = linear_combine({{1.0, acc}, {1.0, constant(*it)}}, limits.prune_tolerance);
    if (acc.num_terms() > limits.term_cap) {
      throw CapacityError("polynomial expansion exceeds the term cap of " + std::to_string(limits.term_cap));
    }
  }
  return to_hamiltonian(acc, imag_tolerance);
}

inline Hamiltonian apply_polynomial(const Hamiltonian& h, std::initializer_list<double> poly,
                                    const AlgebraLimits& limits = {}) {
  return apply_polynomial(h, std::span<const double>(poly.begin(), poly.size()), limits);
}

}  // namespace pgap
