#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgap/errors.hpp"

namespace pgap {

/// Power of i, stored as an exponent mod 4: 0 -> 1, 1 -> i, 2 -> -1, 3 -> -i.
class Phase {
 public:
  constexpr Phase() = default;
  constexpr explicit Phase(int exponent) : exponent_(static_cast<std::uint8_t>(((exponent % 4) + 4) % 4)) {}

  constexpr int exponent() const { return exponent_; }
  constexpr Phase operator*(Phase other) const { return Phase(exponent_ + other.exponent_); }
  constexpr bool operator==(const Phase&) const = default;

  /// Real and imaginary parts of i^exponent.
  constexpr std::pair<int, int> value() const {
    constexpr int re[4] = {1, 0, -1, 0};
    constexpr int im[4] = {0, 1, 0, -1};
    return {re[exponent_], im[exponent_]};
  }

 private:
  std::uint8_t exponent_ = 0;
};

/// Tensor product of Hermitian single-qubit Paulis in symplectic form.
///
/// Site j carries bits (x_j, z_j): (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y. Site 0
/// is the leftmost character of the textual form and the most significant
/// qubit of a computational-basis index. Bits are packed 64 per word, so the
/// common n <= 64 case is a single word per mask.
class PauliString {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  PauliString() = default;

  /// Identity on n qubits.
  explicit PauliString(std::size_t n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

  /// Parses a string over {I, X, Y, Z}. Errors name the 1-based position.
  static PauliString parse(std::string_view text) {
    if (text.empty()) {
      throw ParseError("pauli string is empty");
    }
    PauliString p(text.size());
    for (std::size_t j = 0; j < text.size(); ++j) {
      switch (text[j]) {
        case 'I':
          break;
        case 'X':
          p.set(j, true, false);
          break;
        case 'Z':
          p.set(j, false, true);
          break;
        case 'Y':
          p.set(j, true, true);
          break;
        default:
          throw ParseError("illegal character '" + std::string(1, text[j]) + "' at position " +
                           std::to_string(j + 1) + " of pauli string \"" + std::string(text) + "\"");
      }
    }
    return p;
  }

  /// Builds a string from packed masks; bits above n must be zero.
  static PauliString from_words(std::size_t n, std::vector<word_type> x, std::vector<word_type> z) {
    if (x.size() != words_for(n) || z.size() != words_for(n)) {
      throw DimensionError("mask word count does not match qubit count " + std::to_string(n));
    }
    PauliString p;
    p.n_ = n;
    p.x_ = std::move(x);
    p.z_ = std::move(z);
    return p;
  }

  std::string str() const {
    std::string out(n_, 'I');
    for (std::size_t j = 0; j < n_; ++j) {
      out[j] = "IXZY"[(x(j) ? 1 : 0) | (z(j) ? 2 : 0)];
    }
    return out;
  }

  std::size_t size() const { return n_; }

  bool x(std::size_t site) const { return (x_[site / kWordBits] >> (site % kWordBits)) & 1u; }
  bool z(std::size_t site) const { return (z_[site / kWordBits] >> (site % kWordBits)) & 1u; }

  void set(std::size_t site, bool xbit, bool zbit) {
    const word_type bit = word_type{1} << (site % kWordBits);
    auto& xw = x_[site / kWordBits];
    auto& zw = z_[site / kWordBits];
    xw = xbit ? (xw | bit) : (xw & ~bit);
    zw = zbit ? (zw | bit) : (zw & ~bit);
  }

  const std::vector<word_type>& x_words() const { return x_; }
  const std::vector<word_type>& z_words() const { return z_; }

  /// Number of non-identity sites.
  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      w += static_cast<std::size_t>(std::popcount(x_[i] | z_[i]));
    }
    return w;
  }

  bool is_identity() const { return weight() == 0; }

  /// Number of Y sites; the Hermitian string equals i^{ny} X^x Z^z.
  std::size_t y_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(x_[i] & z_[i]));
    }
    return c;
  }

  /// X and Z masks as computational-basis bit patterns (site j -> bit n-1-j).
  /// Only meaningful for n <= 63.
  std::pair<std::uint64_t, std::uint64_t> basis_masks() const {
    std::uint64_t xm = 0;
    std::uint64_t zm = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << (n_ - 1 - j);
      if (x(j)) xm |= bit;
      if (z(j)) zm |= bit;
    }
    return {xm, zm};
  }

  /// Kronecker concatenation: this on the leading qubits, `tail` after.
  PauliString concat(const PauliString& tail) const {
    PauliString out(n_ + tail.n_);
    out.x_.assign(x_.begin(), x_.end());
    out.z_.assign(z_.begin(), z_.end());
    out.x_.resize(words_for(out.n_), 0);
    out.z_.resize(words_for(out.n_), 0);
    for (std::size_t j = 0; j < tail.n_; ++j) {
      if (tail.x(j) || tail.z(j)) {
        out.set(n_ + j, tail.x(j), tail.z(j));
      }
    }
    return out;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    // Compare site by site from the left so that map order is the textual order I < X < Z < Y.
    for (std::size_t j = 0; j < a.n_; ++j) {
      const int ca = (a.x(j) ? 1 : 0) | (a.z(j) ? 2 : 0);
      const int cb = (b.x(j) ? 1 : 0) | (b.z(j) ? 2 : 0);
      if (ca != cb) return ca <=> cb;
    }
    return std::strong_ordering::equal;
  }

 private:
  static std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

  std::size_t n_ = 0;
  std::vector<word_type> x_;
  std::vector<word_type> z_;
};

inline void check_same_size(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    throw DimensionError("pauli strings act on " + std::to_string(p.size()) + " and " + std::to_string(q.size()) +
                         " qubits");
  }
}

/// P * Q = i^e R with R the Hermitian string on the XOR of the masks.
///
/// Writing each Hermitian site as i^{xz} X^x Z^z, moving Z^{z1} past X^{x2}
/// contributes (-1)^{z1 x2}, and the result is re-expressed as i^{-x3 z3} R.
inline std::pair<Phase, PauliString> pauli_mul(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  const auto& px = p.x_words();
  const auto& pz = p.z_words();
  const auto& qx = q.x_words();
  const auto& qz = q.z_words();
  std::vector<PauliString::word_type> rx(px.size());
  std::vector<PauliString::word_type> rz(px.size());
  int exponent = 0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    rx[i] = px[i] ^ qx[i];
    rz[i] = pz[i] ^ qz[i];
    exponent += std::popcount(px[i] & pz[i]) + std::popcount(qx[i] & qz[i]) + 2 * std::popcount(pz[i] & qx[i]) -
                std::popcount(rx[i] & rz[i]);
  }
  auto r = PauliString::from_words(p.size(), std::move(rx), std::move(rz));
  return {Phase(exponent), std::move(r)};
}

/// True iff the symplectic product <x_P, z_Q> + <x_Q, z_P> is even.
inline bool commutes(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  int count = 0;
  for (std::size_t i = 0; i < p.x_words().size(); ++i) {
    count += std::popcount(p.x_words()[i] & q.z_words()[i]) + std::popcount(q.x_words()[i] & p.z_words()[i]);
  }
  return count % 2 == 0;
}

}  // namespace pgap
