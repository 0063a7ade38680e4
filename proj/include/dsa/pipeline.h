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


#ifndef DSA_PIPELINE_H_
#define DSA_PIPELINE_H_

#include <cstdint>
#include <optional>

#include "dsa/derived.h"
#include "dsa/instance.h"
#include "dsa/io.h"
#include "dsa/lp.h"
#include "dsa/scheme.h"

namespace dsa::pipeline {

// Everything the rate characterization needs, computed once.
struct Analysis {
  ProblemInstance instance;
  ClosedSystems closed;
  DerivedSets derived;
  std::optional<lp::RationalLp> lp;
  std::optional<lp::LpSolution> solution;
  Rates rates;

  const lp::LpSolution* SolutionOrNull() const {
    return solution ? &*solution : nullptr;
  }
};

// Validates, closes, derives and (for Fractional instances) solves the LP.
Analysis Analyze(const ProblemInstance& raw,
                 size_t closure_cap = kDefaultClosureCap);

struct Options {
  std::optional<uint64_t> q;
  uint64_t seed = 0;
  int rounds = 1000;
  int max_attempts = kDefaultMaxAttempts;
  uint64_t fractional_field = kDefaultFractionalField;
  bool break_zero_sum = false;
};

io::Json RatesReport(const Analysis& analysis);

// Correctness, security, key independence, converse lemmas and the scheme
// postconditions. "passed" is true iff every part passes.
io::Json VerificationReport(const SchemeSpec& spec, const Analysis& analysis);

// Round i uses seed `seed + i`; the first round is reported in full.
io::Json SimulationReport(const SchemeSpec& spec, uint64_t seed, int rounds);

SchemeSpec SynthesizeFor(const Analysis& analysis, const Options& options);

struct Result {
  io::Json report;
  bool passed = false;
};

// rates -> synthesize -> verify -> simulate.
Result RunPipeline(const Analysis& analysis, const Options& options);

// Test hooks for the negative paths.
void BreakZeroSum(SchemeSpec& spec);
void ZeroKeyMap(SchemeSpec& spec, int user);

}  // namespace dsa::pipeline

#endif  // DSA_PIPELINE_H_
