#include <gtest/gtest.h>

#include <complex>
#include <string>

#include "dense_oracle.hpp"
#include "pgap/pauli_string.hpp"
#include "pgap/random.hpp"

using pgap::PauliString;
using pgap::Phase;

namespace {

std::string all_strings_of(std::size_t n, std::size_t index) {
  std::string s(n, 'I');
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = "IXYZ"[index % 4];
    index /= 4;
  }
  return s;
}

std::complex<double> phase_value(Phase p) {
  const auto [re, im] = p.value();
  return {static_cast<double>(re), static_cast<double>(im)};
}

PauliString random_string(std::size_t n, pgap::SplitMix64& rng) {
  PauliString p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto code = rng.below(4);
    p.set(j, code & 1u, code & 2u);
  }
  return p;
}

}  // namespace

TEST(PauliStringTest, ParseEncodesSiteBits) {
  const auto id = PauliString::parse("I");
  EXPECT_FALSE(id.x(0));
  EXPECT_FALSE(id.z(0));

  const auto xz = PauliString::parse("XZ");
  EXPECT_TRUE(xz.x(0));
  EXPECT_FALSE(xz.z(0));
  EXPECT_FALSE(xz.x(1));
  EXPECT_TRUE(xz.z(1));

  const auto y = PauliString::parse("Y");
  EXPECT_TRUE(y.x(0));
  EXPECT_TRUE(y.z(0));
}

TEST(PauliStringTest, ParseRoundTripsThroughStr) {
  for (const char* s : {"I", "XZ", "Y", "IXYZIZYX"}) EXPECT_EQ(PauliString::parse(s).str(), s);
}

TEST(PauliStringTest, ParseErrorsNamePosition) {
  EXPECT_THROW(PauliString::parse(""), pgap::ParseError);
  try {
    PauliString::parse("XQ");
    FAIL() << "expected a parse error";
  } catch (const pgap::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos) << e.what();
  }
}

TEST(PauliStringTest, MulExamples) {
  const auto x = PauliString::parse("X");
  const auto z = PauliString::parse("Z");
  const auto y = PauliString::parse("Y");

  auto [p1, r1] = pgap::pauli_mul(x, x);
  EXPECT_EQ(p1, Phase(0));
  EXPECT_EQ(r1.str(), "I");

  auto [p2, r2] = pgap::pauli_mul(x, z);
  EXPECT_EQ(p2, Phase(3));  // -i
  EXPECT_EQ(r2.str(), "Y");

  auto [p3, r3] = pgap::pauli_mul(y, y);
  EXPECT_EQ(p3, Phase(0));
  EXPECT_EQ(r3.str(), "I");
}

TEST(PauliStringTest, MulRejectsMismatchedSizes) {
  EXPECT_THROW(pgap::pauli_mul(PauliString::parse("X"), PauliString::parse("XX")), pgap::DimensionError);
  EXPECT_THROW(pgap::commutes(PauliString::parse("X"), PauliString::parse("XX")), pgap::DimensionError);
}

TEST(PauliStringTest, CommutesExamples) {
  EXPECT_TRUE(pgap::commutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
  EXPECT_FALSE(pgap::commutes(PauliString::parse("X"), PauliString::parse("Z")));
  EXPECT_TRUE(pgap::commutes(PauliString::parse("XI"), PauliString::parse("IZ")));
}

// Every pair at n <= 2 against explicit matrices: P·Q = i^e R.
TEST(PauliStringTest, MulMatchesMatrixProductExhaustively) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        const auto sa = all_strings_of(n, a);
        const auto sb = all_strings_of(n, b);
        const auto [phase, r] = pgap::pauli_mul(PauliString::parse(sa), PauliString::parse(sb));
        const oracle::Mat lhs = oracle::pauli_matrix(sa) * oracle::pauli_matrix(sb);
        const oracle::Mat rhs = phase_value(phase) * oracle::pauli_matrix(r.str());
        EXPECT_LT(oracle::max_abs_diff(lhs, rhs), 1e-14) << sa << " * " << sb;

        const oracle::Mat comm = oracle::pauli_matrix(sa) * oracle::pauli_matrix(sb) -
                                 oracle::pauli_matrix(sb) * oracle::pauli_matrix(sa);
        EXPECT_EQ(pgap::commutes(PauliString::parse(sa), PauliString::parse(sb)), comm.cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
}

TEST(PauliStringTest, MulIsAssociativeAndInvolutive) {
  pgap::SplitMix64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const auto p = random_string(n, rng);
    const auto q = random_string(n, rng);
    const auto r = random_string(n, rng);

    const auto [e_pq, pq] = pgap::pauli_mul(p, q);
    const auto [e_pq_r, pq_r] = pgap::pauli_mul(pq, r);
    const auto [e_qr, qr] = pgap::pauli_mul(q, r);
    const auto [e_p_qr, p_qr] = pgap::pauli_mul(p, qr);
    EXPECT_EQ(pq_r, p_qr);
    EXPECT_EQ(e_pq * e_pq_r, e_qr * e_p_qr);

    const auto [e_pp, pp] = pgap::pauli_mul(p, p);
    EXPECT_EQ(e_pp, Phase(0));
    EXPECT_TRUE(pp.is_identity());
  }
}

TEST(PauliStringTest, MulMatchesMatrixProductRandomly) {
  pgap::SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng.below(4);
    const auto p = random_string(n, rng);
    const auto q = random_string(n, rng);
    const auto [phase, r] = pgap::pauli_mul(p, q);
    const oracle::Mat lhs = oracle::pauli_matrix(p.str()) * oracle::pauli_matrix(q.str());
    EXPECT_LT(oracle::max_abs_diff(lhs, phase_value(phase) * oracle::pauli_matrix(r.str())), 1e-12);
  }
}

// Strings wider than one 64-bit word keep the same algebra.
TEST(PauliStringTest, WideStringsSpanWords) {
  std::string a(130, 'I');
  std::string b(130, 'I');
  a[0] = 'X';
  a[70] = 'Z';
  a[129] = 'Y';
  b[70] = 'X';
  b[129] = 'Y';
  const auto pa = PauliString::parse(a);
  const auto pb = PauliString::parse(b);
  EXPECT_EQ(pa.str(), a);
  EXPECT_EQ(pa.weight(), 3u);
  EXPECT_FALSE(pgap::commutes(pa, pb));
  const auto [phase, r] = pgap::pauli_mul(pa, pb);
  // Z·X = iY at site 70, Y·Y = I at site 129.
  EXPECT_EQ(phase, Phase(1));
  std::string expected(130, 'I');
  expected[0] = 'X';
  expected[70] = 'Y';
  EXPECT_EQ(r.str(), expected);

  const auto joined = pa.concat(PauliString::parse("ZY"));
  EXPECT_EQ(joined.str(), a + "ZY");
}

TEST(PauliStringTest, OrderingFollowsText) {
  EXPECT_LT(PauliString::parse("IX"), PauliString::parse("XI"));
  EXPECT_LT(PauliString::parse("XZ"), PauliString::parse("XY"));
  EXPECT_LT(PauliString::parse("X"), PauliString::parse("II"));
}
