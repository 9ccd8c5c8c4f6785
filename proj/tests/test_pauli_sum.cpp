#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dense_oracle.hpp"
#include "pgap/models.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/spectra.hpp"

using pgap::Hamiltonian;
using pgap::PauliString;

namespace {

Hamiltonian ham(std::initializer_list<std::pair<const char*, double>> terms) {
  std::vector<std::pair<PauliString, double>> v;
  for (const auto& [s, c] : terms) v.emplace_back(PauliString::parse(s), c);
  return Hamiltonian(v.front().first.size(), v);
}

const Hamiltonian kHad = ham({{"X", M_SQRT1_2}, {"Z", M_SQRT1_2}});

}  // namespace

TEST(PauliSumTest, ConstructionMergesAndPrunes) {
  const auto h = ham({{"X", 0.5}, {"X", 0.5}, {"Z", 1e-13}, {"Y", 2.0}, {"Y", -2.0}});
  EXPECT_EQ(h.num_terms(), 1u);
  EXPECT_DOUBLE_EQ(h.coeff(PauliString::parse("X")), 1.0);
}

TEST(PauliSumTest, ConstructionRejectsWrongLengths) {
  std::vector<std::pair<PauliString, double>> v{{PauliString::parse("X"), 1.0}, {PauliString::parse("XX"), 1.0}};
  EXPECT_THROW(Hamiltonian(1, v), pgap::DimensionError);
}

TEST(PauliSumTest, TensorExamples) {
  const auto zi = pgap::tensor(ham({{"Z", 1.0}}), ham({{"I", 1.0}}));
  EXPECT_EQ(zi, ham({{"ZI", 1.0}}));

  const auto xz = ham({{"X", 1.0}, {"Z", 1.0}});
  EXPECT_EQ(pgap::tensor(xz, xz), ham({{"XX", 1.0}, {"XZ", 1.0}, {"ZX", 1.0}, {"ZZ", 1.0}}));

  EXPECT_NEAR(pgap::pauli_1_norm(pgap::tensor(kHad, kHad)), 2.0, 1e-15);
}

TEST(PauliSumTest, TensorMatchesKronecker) {
  const auto a = pgap::random_local(2, 1, 3, 1);
  const auto b = pgap::random_local(2, 2, 4, 2);
  const auto ab = pgap::tensor(a, b);
  EXPECT_LT(oracle::max_abs_diff(oracle::dense(ab), oracle::kron(oracle::dense(a), oracle::dense(b))), 1e-14);
}

TEST(PauliSumTest, TensorRespectsTermCap) {
  const auto h = pgap::random_local(3, 2, 8, 3);
  pgap::AlgebraLimits small{};
  small.term_cap = 10;
  EXPECT_THROW(pgap::tensor(h, h, small), pgap::CapacityError);
  EXPECT_THROW(pgap::tensor_power(h, 3, small), pgap::CapacityError);
}

TEST(PauliSumTest, LinearCombineExamples) {
  const auto z = ham({{"Z", 1.0}});
  EXPECT_TRUE(pgap::linear_combine({{1.0, z}, {-1.0, z}}).is_zero());

  const auto proj = pgap::linear_combine({{0.5, ham({{"I", 1.0}})}, {0.5, z}});
  EXPECT_EQ(proj, ham({{"I", 0.5}, {"Z", 0.5}}));

  const auto combo = pgap::linear_combine({{2.0, ham({{"X", 1.0}})}, {3.0, ham({{"X", 1.0}, {"Z", 1.0}})}});
  EXPECT_EQ(combo, ham({{"X", 5.0}, {"Z", 3.0}}));

  EXPECT_THROW(pgap::linear_combine({{1.0, z}, {1.0, ham({{"ZZ", 1.0}})}}), pgap::DimensionError);
}

TEST(PauliSumTest, PolynomialExamples) {
  const auto x = ham({{"X", 1.0}});
  EXPECT_EQ(pgap::apply_polynomial(x, {0.0, 0.0, 1.0}), ham({{"I", 1.0}}));

  const auto h = pgap::random_local(3, 2, 5, 9);
  const auto id = pgap::apply_polynomial(h, {0.0, 1.0});
  ASSERT_EQ(id.num_terms(), h.num_terms());
  for (const auto& [p, c] : h.terms()) EXPECT_NEAR(id.coeff(p), c, 1e-15);

  // ((X+Z)/√2)^2 = I: the XZ and ZX cross terms carry ∓i and cancel.
  const auto sq = pgap::apply_polynomial(kHad, {0.0, 0.0, 1.0});
  ASSERT_EQ(sq.num_terms(), 1u);
  EXPECT_NEAR(sq.coeff(PauliString::parse("I")), 1.0, 1e-15);
  EXPECT_LT(oracle::max_abs_diff(oracle::dense(sq), oracle::dense(kHad) * oracle::dense(kHad)), 1e-14);
}

TEST(PauliSumTest, PolynomialMatchesDenseCubic) {
  const auto h = pgap::random_local(3, 2, 6, 21);
  const auto f = pgap::apply_polynomial(h, {0.5, -1.0, 0.25, 2.0});
  const oracle::Mat m = oracle::dense(h);
  const oracle::Mat id = oracle::Mat::Identity(m.rows(), m.cols());
  const oracle::Mat expected = 0.5 * id - m + 0.25 * m * m + 2.0 * m * m * m;
  EXPECT_LT(oracle::max_abs_diff(oracle::dense(f), expected), 1e-12);
}

TEST(PauliSumTest, PolynomialRespectsTermCap) {
  const auto h = pgap::random_local(4, 2, 10, 4);
  pgap::AlgebraLimits small{};
  small.term_cap = 20;
  EXPECT_THROW(pgap::apply_polynomial(h, {0.0, 0.0, 0.0, 1.0}, small), pgap::CapacityError);
  EXPECT_THROW(pgap::apply_polynomial(h, std::span<const double>{}), pgap::PreconditionError);
}

TEST(PauliSumTest, NonHermitianResidueIsReported) {
  pgap::PauliOperator op(1, {{PauliString::parse("Y"), std::complex<double>(0.0, 1.0)}});
  EXPECT_THROW(pgap::to_hamiltonian(op), pgap::AlgebraError);
}

TEST(PauliSumTest, PauliOneNormExamples) {
  EXPECT_NEAR(pgap::pauli_1_norm(kHad), std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(pgap::pauli_1_norm(ham({{"Z", 1.0}})), 1.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_NEAR(pgap::pauli_1_norm(pgap::hadamard_power(n)), std::pow(2.0, n / 2.0), 1e-12);
  }
  EXPECT_DOUBLE_EQ(pgap::pauli_1_norm(Hamiltonian(3)), 0.0);
}

TEST(PauliSumTest, NormPropertiesOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t na = 1 + seed % 3;
    const std::size_t nb = 1 + (seed / 3) % 3;
    const auto a = pgap::random_local(na, 1 + seed % na, 1 + seed % 7, seed);
    const auto b = pgap::random_local(nb, 1, 1 + seed % 5, seed + 100);
    const auto a2 = pgap::random_local(na, 1, 2 + seed % 4, seed + 200);

    // Multiplicativity under tensor products.
    EXPECT_NEAR(pgap::pauli_1_norm(pgap::tensor(a, b)), pgap::pauli_1_norm(a) * pgap::pauli_1_norm(b), 1e-12);
    // Triangle inequality.
    EXPECT_LE(pgap::pauli_1_norm(a + a2), pgap::pauli_1_norm(a) + pgap::pauli_1_norm(a2) + 1e-12);
  }
}

TEST(PauliSumTest, OperatorNormNeverExceedsPauliOneNorm) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const auto h = pgap::random_local(n, 1 + seed % n, 1 + seed % 12, seed);
    const double op = oracle::spectrum(oracle::dense(h)).cwiseAbs().maxCoeff();
    EXPECT_LE(op, pgap::pauli_1_norm(h) + 1e-12);
  }
}

TEST(PauliSumTest, LocalityIsMaxWeight) {
  EXPECT_EQ(ham({{"XIZ", 1.0}, {"IIY", 1.0}}).locality(), 2u);
  EXPECT_EQ(Hamiltonian(3).locality(), 0u);
}
