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


// Serial reference kernels against their OpenMP counterparts.

#include <cstdint>
#include <random>

#include "benchmark/benchmark.h"
#include "dsa/derived.h"
#include "dsa/gf.h"
#include "dsa/instance.h"
#include "dsa/linsec.h"
#include "dsa/lp.h"
#include "dsa/pipeline.h"
#include "dsa/scheme.h"
#include "test_util.h"

namespace dsa {
namespace {

constexpr uint64_t kField = 2147483647;

void BM_RankSerial(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const gf::FqMatrix m = gf::RandomMatrix(n, n, kField, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gf::RankSerial(m));
}
void BM_RankParallel(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const gf::FqMatrix m = gf::RandomMatrix(n, n, kField, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gf::RankParallel(m));
}
BENCHMARK(BM_RankSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_RankParallel)->Arg(64)->Arg(256);

// A dense instance: many overlapping generators over K = 14 users.
ClosedSystems DenseClosure() {
  std::mt19937_64 rng(3);
  ProblemInstance inst{14, {}, {}};
  for (int i = 0; i < 6; ++i) {
    inst.security_generators.push_back(UserSet(rng() & 0x3fffu & rng()) -
                                       UserSet{13, 14});
    inst.collusion_generators.push_back(UserSet(rng() & 0x3fffu & rng()) -
                                        UserSet{13, 14});
  }
  inst.security_generators.push_back(UserSet{1});
  return instance::CloseDownward(instance::Validate(inst));
}

void BM_TriplesSerial(benchmark::State& state) {
  const ClosedSystems c = DenseClosure();
  const UserSet bar = derived::ComputeTotalSecuritySet(
      c, derived::ComputeImplicitSetSerial(c, 14));
  for (auto _ : state) {
    benchmark::DoNotOptimize(derived::ComputeAStarAndTriplesSerial(c, bar, 14));
  }
}
void BM_TriplesParallel(benchmark::State& state) {
  const ClosedSystems c = DenseClosure();
  const UserSet bar = derived::ComputeTotalSecuritySet(
      c, derived::ComputeImplicitSet(c, 14));
  for (auto _ : state) {
    benchmark::DoNotOptimize(derived::ComputeAStarAndTriples(c, bar, 14));
  }
}
BENCHMARK(BM_TriplesSerial);
BENCHMARK(BM_TriplesParallel);

lp::RationalLp SampleLp() {
  std::mt19937_64 rng(11);
  const ProblemInstance inst = testing::RandomFractionalInstance(rng, 6, 7, 6);
  const DerivedSets d =
      derived::Derive(instance::CloseDownward(inst), inst.num_users);
  return lp::BuildLp(d, inst.num_users);
}

void BM_OracleSerial(benchmark::State& state) {
  const lp::RationalLp l = SampleLp();
  for (auto _ : state) benchmark::DoNotOptimize(lp::SolveOracleSerial(l));
}
void BM_OracleParallel(benchmark::State& state) {
  const lp::RationalLp l = SampleLp();
  for (auto _ : state) benchmark::DoNotOptimize(lp::SolveOracle(l));
}
void BM_SolveExact(benchmark::State& state) {
  const lp::RationalLp l = SampleLp();
  for (auto _ : state) benchmark::DoNotOptimize(lp::SolveExact(l));
}
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveExact)->Unit(benchmark::kMillisecond);

struct Prepared {
  pipeline::Analysis analysis;
  SchemeSpec spec;
};

Prepared ExampleTwo() {
  pipeline::Analysis a = pipeline::Analyze(testing::Example2());
  pipeline::Options o;
  SchemeSpec s = pipeline::SynthesizeFor(a, o);
  return {std::move(a), std::move(s)};
}

void BM_BlocksSerial(benchmark::State& state) {
  const Prepared p = ExampleTwo();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scheme::BlocksIndependentSerial(p.spec, p.spec.seed_length));
  }
}
void BM_BlocksParallel(benchmark::State& state) {
  const Prepared p = ExampleTwo();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scheme::BlocksIndependent(p.spec, p.spec.seed_length));
  }
}
BENCHMARK(BM_BlocksSerial);
BENCHMARK(BM_BlocksParallel);

void BM_SecuritySerial(benchmark::State& state) {
  const Prepared p = ExampleTwo();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        linsec::VerifySecuritySerial(p.spec, p.analysis.closed));
  }
}
void BM_SecurityParallel(benchmark::State& state) {
  const Prepared p = ExampleTwo();
  for (auto _ : state) {
    benchmark::DoNotOptimize(linsec::VerifySecurity(p.spec, p.analysis.closed));
  }
}
BENCHMARK(BM_SecuritySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SecurityParallel)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dsa

BENCHMARK_MAIN();
