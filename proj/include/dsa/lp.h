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

#ifndef DSA_LP_H_
#define DSA_LP_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dsa/derived.h"
#include "dsa/user_set.h"

namespace dsa::lp {

// Arbitrary-precision rational, always reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// "3", "-1/2".
std::string ToString(const Rational& r);
// Accepts "p" or "p/q"; throws Error(kParseError).
Rational ParseRational(const std::string& text);

// Epigraph form of the min-max key program:
//   minimize t
//   subject to  sum_{k in upper_sets[i]} b_k <= t   for every i
//               sum_{k in lower_sets[j]} b_k >= 1   for every j
//               b_k >= 0, t >= 0.
// Variables are indexed by user id.
struct RationalLp {
  UserSet variables;
  std::vector<UserSet> upper_sets;
  std::vector<UserSet> lower_sets;
};

struct LpSolution {
  Rational optimum;
  std::map<int, Rational> assignment;
  std::vector<size_t> tight_upper;
  std::vector<size_t> tight_lower;
};

// One upper and one lower constraint per maximal triple; variables are
// [K] \ S̄. Throws kNotFractionalCase unless the case tag is kFractional.
RationalLp BuildLp(const DerivedSets& derived, int num_users);

// Throws kInvalidSet if a constraint references an undeclared variable.
void CheckWellFormed(const RationalLp& lp);

// Two-phase simplex over exact rationals with Bland's rule. Among optimal
// points the lexicographically smallest assignment (by user id) is returned,
// which is a vertex.
LpSolution SolveExact(const RationalLp& lp);

struct OracleCaps {
  size_t max_variables = 10;
  uint64_t max_combinations = 50'000'000;
};

// Enumerates every intersection of (variables + 1) constraint hyperplanes,
// keeps the feasible ones and returns the best (ties: lexicographically
// smallest assignment). Throws kTooLarge past the caps.
LpSolution SolveOracle(const RationalLp& lp, const OracleCaps& caps = {});
LpSolution SolveOracleSerial(const RationalLp& lp,
                             const OracleCaps& caps = {});

bool IsFeasible(const RationalLp& lp, const std::map<int, Rational>& b);
// Solution record for an arbitrary assignment: optimum is the largest upper
// left-hand side (0 if there are none).
LpSolution Evaluate(const RationalLp& lp, const std::map<int, Rational>& b);

// b* == (sum_k b_k*) - 1.
bool CheckLemma5(const LpSolution& solution);

// CPLEX LP text format.
std::string DumpLp(const RationalLp& lp);

}  // namespace dsa::lp

#endif  // DSA_LP_H_
