#include "hnsir/algebra.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace hnsir {
namespace {

using testing::max_abs_diff;
using testing::random_hypernumber;

// Closed-form block product, written out independently of the table.
HyperNumberd block_product(const HyperNumberd& x, const HyperNumberd& y) {
  HyperNumberd out(x.dim());
  for (BasisIndex p = 1; p < x.dim(); p += 2) {
    const BasisIndex q = p + 1;
    out.set(p, x[p] * y[p] + x[q] * y[q]);
    out.set(q, x[p] * y[q] + x[q] * y[p]);
  }
  return out;
}

TEST(MultiplicationTable, TwoTermsMatchesPrintedRows) {
  // Rows e1..e4 of the printed table; 0 stands for a zero product.
  const int printed[4][4] = {{1, 2, 0, 0}, {2, 1, 0, 0}, {0, 0, 3, 4}, {0, 0, 4, 3}};
  const auto t = build_ir_table(2);
  EXPECT_EQ(t.dim(), 4u);
  for (BasisIndex a = 1; a <= 4; ++a)
    for (BasisIndex b = 1; b <= 4; ++b) {
      const auto e = t.entry(a, b);
      const int expected = printed[a - 1][b - 1];
      if (expected == 0)
        EXPECT_FALSE(e.has_value()) << a << "," << b;
      else
        EXPECT_EQ(e, static_cast<BasisIndex>(expected)) << a << "," << b;
    }
  EXPECT_EQ(t.entry(1, 2), 2u);
  EXPECT_EQ(t.entry(2, 2), 1u);
  EXPECT_FALSE(t.entry(2, 3));
  EXPECT_EQ(t.entry(3, 4), 4u);
}

TEST(MultiplicationTable, SingleTerm) {
  const auto t = build_ir_table(1);
  EXPECT_EQ(t.entry(1, 1), 1u);
  EXPECT_EQ(t.entry(1, 2), 2u);
  EXPECT_EQ(t.entry(2, 2), 1u);
}

TEST(MultiplicationTable, BlockPatternExtends) {
  const auto t = build_ir_table(3);
  EXPECT_EQ(t.entry(5, 6), 6u);
  EXPECT_EQ(t.entry(6, 6), 5u);
  EXPECT_FALSE(t.entry(1, 6));
  // Brute force against the per-block rule for several sizes.
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u}) {
    const auto table = build_ir_table(n);
    for (BasisIndex a = 1; a <= 2 * n; ++a)
      for (BasisIndex b = 1; b <= 2 * n; ++b) {
        const std::size_t block_a = (a + 1) / 2, block_b = (b + 1) / 2;
        std::optional<BasisIndex> expected;
        if (block_a == block_b) {
          const BasisIndex p = 2 * block_a - 1;
          const int evens = (a == p + 1) + (b == p + 1);
          expected = evens == 1 ? p + 1 : p;
        }
        ASSERT_EQ(table.entry(a, b), expected) << n << ": " << a << "," << b;
        ASSERT_EQ(table.entry(a, b), table.entry(b, a));
      }
  }
}

TEST(MultiplicationTable, RejectsBadSizes) {
  EXPECT_THROW(build_ir_table(0), std::invalid_argument);
  EXPECT_THROW(build_ir_table(kMaxTerms + 1), std::invalid_argument);
  EXPECT_NO_THROW(build_ir_table(kMaxTerms));
  EXPECT_THROW((void)build_ir_table(2).entry(0, 1), std::out_of_range);
  EXPECT_THROW((void)build_ir_table(2).entry(1, 5), std::out_of_range);
}

TEST(HyperNumber, RejectsNonFiniteCoefficients) {
  HyperNumberd x(2);
  EXPECT_THROW(x.set(1, std::nan("")), std::invalid_argument);
  EXPECT_THROW(x.set(2, INFINITY), std::invalid_argument);
  EXPECT_THROW(x.set(3, 1.0), std::out_of_range);
}

TEST(HyperNumber, SparseStorageDropsZeros) {
  HyperNumberd x(6);
  x.set(3, 2.0);
  x.set(5, 1.0);
  x.set(3, 0.0);
  EXPECT_EQ(x.nonzeros(), 1u);
  EXPECT_EQ(x[5], 1.0);
  EXPECT_EQ(x.dense().size(), 6);
}

TEST(Mul, Examples) {
  const auto t = build_ir_table(1);
  HyperNumberd half(2);
  half.set(1, 0.5);
  half.set(2, 0.5);
  EXPECT_EQ(mul(t, half, HyperNumberd::basis(2, 1)), half);
  EXPECT_EQ(mul(t, HyperNumberd::basis(2, 2), HyperNumberd::basis(2, 2)), HyperNumberd::basis(2, 1));

  std::mt19937_64 rng(7);
  const auto t3 = build_ir_table(3);
  const auto x = random_hypernumber(rng, 3);
  EXPECT_EQ(mul(t3, unit_element(t3), x), x);
}

TEST(Mul, DimensionMismatch) {
  const auto t = build_ir_table(2);
  EXPECT_THROW(mul(t, HyperNumberd(4), HyperNumberd(2)), DimensionMismatch);
  EXPECT_THROW(add(HyperNumberd(4), HyperNumberd(2)), DimensionMismatch);
  EXPECT_THROW(sim(t, HyperNumberd(2), HyperNumberd(2)), DimensionMismatch);
  EXPECT_THROW(sim1(t, HyperNumberd(4), HyperNumberd(6)), DimensionMismatch);
}

TEST(Mul, MatchesClosedFormBlockProduct) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 16;
    const auto t = build_ir_table(n);
    const auto x = random_hypernumber(rng, n);
    const auto y = random_hypernumber(rng, n);
    ASSERT_LE(max_abs_diff(mul(t, x, y), block_product(x, y)), 1e-15);
  }
}

TEST(AddScale, Examples) {
  const auto sum = add(HyperNumberd::basis(2, 1), HyperNumberd::basis(2, 2));
  EXPECT_EQ(sum[1], 1.0);
  EXPECT_EQ(sum[2], 1.0);
  std::mt19937_64 rng(3);
  EXPECT_EQ(scale(0.0, random_hypernumber(rng, 4)), HyperNumberd::zero(8));
  EXPECT_EQ(scale(2.0, HyperNumberd::basis(2, 1, 0.5)), HyperNumberd::basis(2, 1));
}

TEST(UnitElement, OddBasisOnly) {
  EXPECT_EQ(unit_element(build_ir_table(1)), HyperNumberd::basis(2, 1));
  const auto e3 = unit_element(build_ir_table(3));
  for (BasisIndex k = 1; k <= 6; ++k) EXPECT_EQ(e3[k], k % 2 == 1 ? 1.0 : 0.0);
}

TEST(Est, Examples) {
  EXPECT_EQ(est(HyperNumberd::basis(2, 1)), 1.0);
  EXPECT_EQ(est(HyperNumberd::basis(2, 2)), -1.0);
  EXPECT_EQ(est(HyperNumberd::zero(4)), 0.0);
}

TEST(Sim, WorkedCases) {
  const auto t = build_ir_table(1);
  HyperNumberd half(2);
  half.set(1, 0.5);
  half.set(2, 0.5);
  HyperNumberd d3(2);
  d3.set(1, 0.8);
  d3.set(2, 0.2);
  EXPECT_NEAR(sim(t, half, HyperNumberd::basis(2, 1)), 0.0, 1e-12);
  EXPECT_NEAR(sim(t, half, half), 0.0, 1e-12);
  EXPECT_NEAR(sim(t, HyperNumberd::basis(2, 1), d3), 0.6, 1e-12);
  // e2 * e1 = e2 by the table, and Est(e2) = -1.
  EXPECT_EQ(sim(t, HyperNumberd::basis(2, 2), HyperNumberd::basis(2, 1)), -1.0);
}

TEST(Sim1, Examples) {
  const auto t = build_ir_table(1);
  std::mt19937_64 rng(5);
  const auto a = random_hypernumber(rng, 1);
  EXPECT_EQ(sim1(t, a, a), 0.0);
  // (1-0)^2 (0-1)^2
  EXPECT_EQ(sim1(t, HyperNumberd::basis(2, 1), HyperNumberd::basis(2, 2)), 1.0);
  const auto doc = add(HyperNumberd::basis(2, 1), HyperNumberd::basis(2, 2));
  EXPECT_EQ(sim1(t, HyperNumberd::zero(2), doc), 1.0);
}

TEST(Sim1, MatchesLiteralFormula) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const auto t = build_ir_table(n);
    const auto a = random_hypernumber(rng, n);
    const auto b = random_hypernumber(rng, n);
    double expected = 0.0;
    for (BasisIndex p = 1; p < 2 * n; p += 2) {
      const double dp = a[p] - b[p], dm = a[p + 1] - b[p + 1];
      expected += dp * dp * dm * dm;
    }
    ASSERT_NEAR(sim1(t, a, b), expected, 1e-12);
  }
}

TEST(SignedProjection, Examples) {
  HyperNumberd half(2);
  half.set(1, 0.5);
  half.set(2, 0.5);
  const auto s = signed_projection(half);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.values.coeff(0), 0.0);

  HyperNumberd d3(2);
  d3.set(1, 0.8);
  d3.set(2, 0.2);
  EXPECT_NEAR(signed_projection(d3).values.coeff(0), 0.6, 1e-15);

  const auto e3 = signed_projection(HyperNumberd::basis(4, 3));
  EXPECT_EQ(e3.size(), 2u);
  EXPECT_EQ(e3.values.coeff(0), 0.0);
  EXPECT_EQ(e3.values.coeff(1), 1.0);
}

TEST(MatrixRep, Examples) {
  const auto t = build_ir_table(1);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  EXPECT_TRUE(Eigen::MatrixXd(matrix_rep(t, HyperNumberd::basis(2, 1))).isApprox(id));
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  const Eigen::MatrixXd e2 = matrix_rep(t, HyperNumberd::basis(2, 2));
  EXPECT_EQ(e2, swap);
  EXPECT_EQ(Eigen::MatrixXd(e2 * e2), id);
}

TEST(MatrixRep, RepresentsLeftMultiplication) {
  // Column b of the representation of x is the coefficient vector of x * e_b.
  std::mt19937_64 rng(9);
  const auto t = build_ir_table(4);
  const auto x = random_hypernumber(rng, 4);
  const Eigen::MatrixXd m = matrix_rep(t, x);
  for (BasisIndex b = 1; b <= t.dim(); ++b)
    EXPECT_LE((m.col(static_cast<Eigen::Index>(b - 1)) - mul(t, x, HyperNumberd::basis(t.dim(), b)).dense())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
}

// Algebraic laws on random elements.

class AlgebraLaws : public ::testing::TestWithParam<std::size_t> {};

TEST_P(AlgebraLaws, Commutative) {
  std::mt19937_64 rng(100 + GetParam());
  const auto t = build_ir_table(GetParam());
  for (int i = 0; i < 250; ++i) {
    const auto x = random_hypernumber(rng, GetParam());
    const auto y = random_hypernumber(rng, GetParam());
    ASSERT_EQ(mul(t, x, y), mul(t, y, x));
  }
}

TEST_P(AlgebraLaws, Associative) {
  std::mt19937_64 rng(200 + GetParam());
  const auto t = build_ir_table(GetParam());
  for (int i = 0; i < 125; ++i) {
    const auto x = random_hypernumber(rng, GetParam());
    const auto y = random_hypernumber(rng, GetParam());
    const auto z = random_hypernumber(rng, GetParam());
    ASSERT_LE(max_abs_diff(mul(t, mul(t, x, y), z), mul(t, x, mul(t, y, z))), 1e-9);
  }
}

TEST_P(AlgebraLaws, UnitElement) {
  std::mt19937_64 rng(300 + GetParam());
  const auto t = build_ir_table(GetParam());
  const auto e = unit_element(t);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_hypernumber(rng, GetParam());
    ASSERT_LE(max_abs_diff(mul(t, e, x), x), 1e-12);
    ASSERT_LE(max_abs_diff(mul(t, x, e), x), 1e-12);
  }
}

TEST_P(AlgebraLaws, MatrixHomomorphism) {
  std::mt19937_64 rng(400 + GetParam());
  const auto t = build_ir_table(GetParam());
  for (int i = 0; i < 100; ++i) {
    const auto x = random_hypernumber(rng, GetParam());
    const auto y = random_hypernumber(rng, GetParam());
    const Eigen::MatrixXd lhs = matrix_rep(t, mul(t, x, y));
    const Eigen::MatrixXd rhs = Eigen::MatrixXd(matrix_rep(t, x)) * Eigen::MatrixXd(matrix_rep(t, y));
    ASSERT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST_P(AlgebraLaws, EstIsLinear) {
  std::mt19937_64 rng(500 + GetParam());
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_hypernumber(rng, GetParam());
    const auto y = random_hypernumber(rng, GetParam());
    const double k = c(rng);
    ASSERT_NEAR(est(add(x, y)), est(x) + est(y), 1e-12);
    ASSERT_NEAR(est(scale(k, x)), k * est(x), 1e-12);
  }
}

TEST_P(AlgebraLaws, SimClosedFormSymmetryBilinearity) {
  std::mt19937_64 rng(600 + GetParam());
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  const auto t = build_ir_table(GetParam());
  for (int i = 0; i < 100; ++i) {
    const auto a = random_hypernumber(rng, GetParam());
    const auto b = random_hypernumber(rng, GetParam());
    const double k = c(rng);
    const double s = sim(t, a, b);
    ASSERT_NEAR(s, dot(signed_projection(a), signed_projection(b)), 1e-12);
    ASSERT_NEAR(s, sim(t, b, a), 1e-12);
    ASSERT_NEAR(sim(t, scale(k, a), b), k * s, 1e-12);
  }
}

TEST_P(AlgebraLaws, Sim1IsNonNegativeAndZeroOnDiagonal) {
  std::mt19937_64 rng(700 + GetParam());
  const auto t = build_ir_table(GetParam());
  for (int i = 0; i < 100; ++i) {
    const auto a = random_hypernumber(rng, GetParam());
    const auto b = random_hypernumber(rng, GetParam());
    ASSERT_EQ(sim1(t, a, a), 0.0);
    ASSERT_GE(sim1(t, a, b), 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, AlgebraLaws, ::testing::Values(1u, 2u, 7u, 16u));

}  // namespace
}  // namespace hnsir
