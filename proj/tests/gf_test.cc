/*
 * Copyright 2026 The DSA Keyrate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dsa/error.h"
#include "dsa/gf.h"
#include "gtest/gtest.h"

namespace dsa::gf {
namespace {

bool SlowIsPrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

TEST(PrimeTest, MatchesTrialDivision) {
  for (uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(IsPrime(n), SlowIsPrime(n)) << n;
}

TEST(PrimeTest, LargeKnownValues) {
  EXPECT_TRUE(IsPrime(2147483647));
  EXPECT_TRUE(IsPrime(2305843009213693951ull));
  EXPECT_FALSE(IsPrime(2305843009213693953ull));
  EXPECT_FALSE(IsPrime(3215031751ull));  // strong pseudoprime to 2, 3, 5, 7
}

TEST(PrimeTest, SmallestPrimeGeq) {
  EXPECT_EQ(SmallestPrimeGeq(2), 2u);
  EXPECT_EQ(SmallestPrimeGeq(5), 5u);
  EXPECT_EQ(SmallestPrimeGeq(6), 7u);
  EXPECT_EQ(SmallestPrimeGeq(3 * 4 + 1), 13u);
  for (uint64_t n = 2; n < 2000; ++n) {
    uint64_t p = n;
    while (!SlowIsPrime(p)) ++p;
    EXPECT_EQ(SmallestPrimeGeq(n), p);
  }
}

TEST(FieldElementTest, RingAxiomsAndInverses) {
  std::mt19937_64 rng(1);
  for (uint64_t q : {2ull, 3ull, 5ull, 13ull, 2147483647ull,
                     2305843009213693951ull}) {
    std::uniform_int_distribution<uint64_t> draw(0, q - 1);
    for (int i = 0; i < 200; ++i) {
      const FieldElement a(static_cast<int64_t>(draw(rng) % (1ull << 62)), q);
      const FieldElement b(static_cast<int64_t>(draw(rng) % (1ull << 62)), q);
      const FieldElement c(static_cast<int64_t>(draw(rng) % (1ull << 62)), q);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a + (-a), FieldElement(0, q));
      EXPECT_EQ(a - b, a + (-b));
      if (a.value() != 0) EXPECT_EQ(a * a.Inverse(), FieldElement(1, q));
    }
    EXPECT_THROW(FieldElement(0, q).Inverse(), std::domain_error);
  }
}

TEST(FieldElementTest, NegativeValuesReduce) {
  EXPECT_EQ(FieldElement(-1, 5).value(), 4u);
  EXPECT_EQ(Reduce(-7, 5), 3u);
  EXPECT_EQ(Reduce(12, 5), 2u);
}

TEST(FieldElementTest, MixedModuliRejected) {
  try {
    (void)(FieldElement(1, 5) + FieldElement(1, 7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(RankTest, Basics) {
  EXPECT_EQ(Rank(FqMatrix::Identity(3, 5)), 3u);
  EXPECT_EQ(Rank(FqMatrix(4, 6, 7)), 0u);
  EXPECT_EQ(Rank(FqMatrix(0, 6, 7)), 0u);
  EXPECT_EQ(Rank(FqMatrix(3, 0, 7)), 0u);
}

TEST(RankTest, ExampleTwoKeyRows) {
  const FqMatrix z12 = FqMatrix::FromRows({{-1, 0, -1, -1, -1, -1},
                                           {0, -1, -1, -2, -3, -4},
                                           {1, 0, 0, 0, 0, 0},
                                           {0, 1, 0, 0, 0, 0}},
                                          5);
  EXPECT_EQ(Rank(z12), 4u);
}

TEST(RankTest, DependentRowsOverSmallField) {
  // Row 3 = row 1 + row 2 over F_2 only.
  const std::vector<std::vector<int64_t>> rows{{1, 0, 1}, {0, 1, 1}, {1, 1, 0}};
  EXPECT_EQ(Rank(FqMatrix::FromRows(rows, 2)), 2u);
  EXPECT_EQ(Rank(FqMatrix::FromRows(rows, 3)), 3u);
}

TEST(RankPropertyTest, Invariances) {
  std::mt19937_64 rng(2);
  for (uint64_t q : {2ull, 3ull, 5ull, 101ull}) {
    for (int i = 0; i < 40; ++i) {
      const size_t r = rng() % 7;
      const size_t c = rng() % 7;
      // Low-rank products exercise dependent rows.
      const size_t inner = rng() % 5;
      Rng g(rng());
      const FqMatrix m =
          RandomMatrix(r, inner, q, g) * RandomMatrix(inner, c, q, g);
      const size_t rank = Rank(m);
      EXPECT_LE(rank, std::min({r, c, inner}));
      EXPECT_EQ(rank, Rank(m.Transpose()));
      const std::vector<FqMatrix> twice{m, m};
      EXPECT_EQ(rank, Rank(FqMatrix::VStack(twice, c, q)));
      // Reverse the rows and scale each by a nonzero element.
      FqMatrix moved(r, c, q);
      for (size_t row = 0; row < r; ++row) {
        const uint64_t s = 1 + g.Uniform(q - 1);
        for (size_t col = 0; col < c; ++col) {
          moved.set(r - 1 - row, col, MulMod(m.at(row, col), s, q));
        }
      }
      EXPECT_EQ(rank, Rank(moved));
      EXPECT_EQ(RankSerial(m), RankParallel(m));
    }
  }
}

TEST(RankPropertyTest, ParallelMatchesSerialOnLargeMatrices) {
  Rng g(3);
  for (uint64_t q : {2ull, 2147483647ull}) {
    const FqMatrix a = RandomMatrix(70, 40, q, g) * RandomMatrix(40, 90, q, g);
    EXPECT_EQ(RankSerial(a), RankParallel(a));
    EXPECT_EQ(Rank(a), RankSerial(a));
    EXPECT_EQ(RankSerial(a), 40u);
  }
}

TEST(EchelonTest, ReducedFormProperties) {
  Rng g(4);
  const uint64_t q = 7;
  const FqMatrix m = RandomMatrix(5, 3, q, g) * RandomMatrix(3, 6, q, g);
  const Echelon e = ReducedRowEchelon(m);
  EXPECT_EQ(e.rank, Rank(m));
  ASSERT_EQ(e.pivot_columns.size(), e.rank);
  for (size_t i = 0; i < e.rank; ++i) {
    const size_t col = e.pivot_columns[i];
    for (size_t r = 0; r < e.reduced.rows(); ++r) {
      EXPECT_EQ(e.reduced.at(r, col), r == i ? 1u : 0u);
    }
    for (size_t c = 0; c < col; ++c) EXPECT_EQ(e.reduced.at(i, c), 0u);
  }
  for (size_t r = e.rank; r < e.reduced.rows(); ++r) {
    for (size_t c = 0; c < e.reduced.cols(); ++c) {
      EXPECT_EQ(e.reduced.at(r, c), 0u);
    }
  }
  // Same row space.
  const std::vector<FqMatrix> both{m, e.reduced};
  EXPECT_EQ(Rank(FqMatrix::VStack(both, m.cols(), q)), e.rank);
}

TEST(RandomMatrixTest, Deterministic) {
  const FqMatrix a = RandomMatrix(2, 3, 5, 42);
  const FqMatrix b = RandomMatrix(2, 3, 5, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, RandomMatrix(2, 3, 5, 43));
  EXPECT_EQ(RandomMatrix(0, 3, 5, 1).rows(), 0u);
  EXPECT_EQ(Rank(RandomMatrix(0, 3, 5, 1)), 0u);
}

TEST(RandomMatrixTest, UniformHistogram) {
  const uint64_t q = 5;
  const size_t n = 100000;
  const FqMatrix m = RandomMatrix(1, n, q, 7);
  std::vector<double> counts(q, 0);
  for (size_t i = 0; i < n; ++i) counts[m.at(0, i)] += 1;
  const double p = 1.0 / q;
  const double sigma = std::sqrt(n * p * (1 - p));
  double chi2 = 0;
  for (double c : counts) {
    EXPECT_LT(std::abs(c - n * p), 5 * sigma);
    chi2 += (c - n * p) * (c - n * p) / (n * p);
  }
  // 99.99th percentile of chi-square with 4 degrees of freedom.
  EXPECT_LT(chi2, 23.5);
}

TEST(MatrixTest, ArithmeticAndShapes) {
  const FqMatrix a = FqMatrix::FromRows({{1, 2}, {3, 4}}, 5);
  const FqMatrix i2 = FqMatrix::Identity(2, 5);
  EXPECT_EQ(a * i2, a);
  EXPECT_EQ(i2 * a, a);
  EXPECT_TRUE((a - a).IsZero());
  EXPECT_TRUE((a + a.Negate()).IsZero());
  EXPECT_EQ(a.Scale(2), a + a);
  EXPECT_EQ(a.Transpose().Transpose(), a);
  EXPECT_EQ(a.RowRange(1, 2), FqMatrix::FromRows({{3, 4}}, 5));
  EXPECT_EQ(a.ToRows(), (std::vector<std::vector<int64_t>>{{1, 2}, {3, 4}}));
  FqMatrix big(3, 3, 5);
  big.Paste(a, 1, 1);
  EXPECT_EQ(big.at(2, 2), 4u);
  EXPECT_EQ(big.at(0, 0), 0u);
  EXPECT_THROW(a * FqMatrix(3, 1, 5), Error);
  EXPECT_THROW(FqMatrix::FromRows({{1, 2}, {3}}, 5), Error);
}

}  // namespace
}  // namespace dsa::gf
