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


#include <cstdint>
#include <vector>

#include "dsa/error.h"
#include "dsa/gf.h"
#include "dsa/pipeline.h"
#include "dsa/scheme.h"
#include "dsa/sim.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dsa {
namespace {

using gf::FqMatrix;

// Column sums of W, computed directly.
std::vector<uint64_t> ColumnSums(const FqMatrix& w) {
  std::vector<uint64_t> out(w.cols(), 0);
  for (size_t r = 0; r < w.rows(); ++r) {
    for (size_t c = 0; c < w.cols(); ++c) {
      out[c] = (out[c] + w.at(r, c)) % w.modulus();
    }
  }
  return out;
}

std::vector<uint64_t> Row(const FqMatrix& m, size_t r) {
  return {m.row(r).begin(), m.row(r).end()};
}

SchemeSpec ExampleOneScheme() {
  const pipeline::Analysis a = pipeline::Analyze(testing::Example1());
  return scheme::Synthesize(a.derived, 5, nullptr, 13, 2);
}

TEST(SimTest, ZeroInputsDecodeToZero) {
  const SchemeSpec s = testing::Example2ReferenceScheme();
  const Transcript t = sim::RunRound(s, 3, FqMatrix(6, 2, 5));
  EXPECT_TRUE(t.inputs.IsZero());
  for (int u = 1; u <= 6; ++u) {
    EXPECT_EQ(Row(t.decoded, u - 1), (std::vector<uint64_t>{0, 0}));
  }
  // With W = 0 the messages are the keys.
  EXPECT_EQ(t.messages, t.keys);
}

TEST(SimTest, ExampleTwoDecodes) {
  const SchemeSpec s = testing::Example2ReferenceScheme();
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Transcript t = sim::RunRound(s, seed);
    EXPECT_EQ(t.rng_seed, seed);
    const std::vector<uint64_t> truth = ColumnSums(t.inputs);
    EXPECT_EQ(sim::TrueSum(t), truth);
    EXPECT_EQ(t.messages, t.inputs + t.keys);
    for (int u = 1; u <= 6; ++u) {
      EXPECT_EQ(Row(t.decoded, u - 1), truth);
      EXPECT_EQ(sim::DecodeAtUser(u, s, t), truth);
    }
  }
}

TEST(SimTest, BasisInputs) {
  const SchemeSpec s = ExampleOneScheme();
  for (size_t k = 0; k < 5; ++k) {
    FqMatrix w(5, 1, 13);
    w.set(k, 0, 1);
    const Transcript t = sim::RunRound(s, 0, w);
    for (int u = 1; u <= 5; ++u) {
      EXPECT_EQ(sim::DecodeAtUser(u, s, t), (std::vector<uint64_t>{1}));
    }
  }
}

TEST(SimTest, ClassicalThousandRounds) {
  const SchemeSpec s = scheme::SynthesizeClassical(5, 7, 2);
  int agreeing = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    const Transcript t = sim::RunRound(s, seed);
    const std::vector<uint64_t> truth = ColumnSums(t.inputs);
    bool ok = true;
    for (int u = 1; u <= 5; ++u) ok = ok && Row(t.decoded, u - 1) == truth;
    agreeing += ok;
  }
  EXPECT_EQ(agreeing, 1000);
}

TEST(SimTest, KeysFollowKeyMaps) {
  const SchemeSpec s = ExampleOneScheme();
  const Transcript t = sim::RunRound(s, 17);
  for (int k = 1; k <= 5; ++k) {
    const FqMatrix z = s.KeyMap(k) * t.source.Transpose();
    EXPECT_EQ(Row(t.keys, k - 1), Row(z.Transpose(), 0));
  }
}

TEST(SimTest, Deterministic) {
  const SchemeSpec s = ExampleOneScheme();
  const Transcript a = sim::RunRound(s, 99);
  const Transcript b = sim::RunRound(s, 99);
  EXPECT_EQ(a.inputs, b.inputs);
  EXPECT_EQ(a.source, b.source);
  EXPECT_EQ(a.messages, b.messages);
  EXPECT_EQ(a.decoded, b.decoded);
  EXPECT_NE(sim::RunRound(s, 100).inputs, a.inputs);
}

TEST(SimTest, Errors) {
  const SchemeSpec s = ExampleOneScheme();
  const Transcript t = sim::RunRound(s, 0);
  for (int bad : {0, 6, -1}) {
    try {
      sim::DecodeAtUser(bad, s, t);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnknownUser);
    }
  }
  for (const FqMatrix& w : {FqMatrix(4, 1, 13), FqMatrix(5, 2, 13),
                            FqMatrix(5, 1, 7)}) {
    try {
      sim::RunRound(s, 0, w);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
    }
  }
}

TEST(SimTest, BrokenZeroSumMismatches) {
  SchemeSpec s = ExampleOneScheme();
  pipeline::BreakZeroSum(s);
  int mismatched = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Transcript t = sim::RunRound(s, seed);
    if (sim::DecodeAtUser(2, s, t) != sim::TrueSum(t)) ++mismatched;
  }
  // The error term is N_1, which is zero with probability 1/13 per round.
  EXPECT_GE(mismatched, 15);
}

// Chi-square frequency test on the first symbol of X_k for k in S̄.
TEST(SimTest, MessagesLookUniform) {
  const SchemeSpec s = ExampleOneScheme();
  const int rounds = 2600;
  std::vector<std::vector<int>> counts(5, std::vector<int>(13, 0));
  for (int i = 0; i < rounds; ++i) {
    const Transcript t = sim::RunRound(s, 1000 + i);
    for (int k = 1; k <= 4; ++k) ++counts[k - 1][t.messages.at(k - 1, 0)];
  }
  const double expected = rounds / 13.0;
  for (int k = 1; k <= 4; ++k) {
    double chi2 = 0;
    for (int c : counts[k - 1]) chi2 += (c - expected) * (c - expected) / expected;
    // 99.99th percentile of chi-square with 12 degrees of freedom.
    EXPECT_LT(chi2, 39.1) << "X_" << k;
  }
}

}  // namespace
}  // namespace dsa
