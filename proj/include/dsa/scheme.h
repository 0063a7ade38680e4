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


#ifndef DSA_SCHEME_H_
#define DSA_SCHEME_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsa/derived.h"
#include "dsa/gf.h"
#include "dsa/lp.h"

namespace dsa {

struct Rates {
  lp::Rational communication;  // R_X
  lp::Rational source_key;     // R_ZΣ
  bool operator==(const Rates&) const = default;
};

struct FractionalData {
  uint64_t q_bar = 1;
  std::map<int, uint64_t> p;  // p_k for every k outside S̄
  uint64_t p_bar = 0;
  bool operator==(const FractionalData&) const = default;
};

// The key of user k is Z_k = key_map * N with key_map = mixing * basis.
// `basis` holds the rows that take part in the independence condition
// (H_k, or G_k for fractional users outside S̄); `mixing` is L x rows(basis).
// Unkeyed users have a zero-row basis and an all-zero key map.
struct UserKey {
  gf::FqMatrix basis;
  gf::FqMatrix mixing;
  gf::FqMatrix key_map;  // L x seed_length
  bool operator==(const UserKey&) const = default;
};

struct SchemeSpec {
  uint64_t q = 2;
  size_t block_length = 1;  // L
  size_t seed_length = 0;
  int num_users = 0;
  CaseTag case_tag = CaseTag::kClassicalFull;
  int a_star = 0;
  std::vector<UserKey> keys;  // keys[k - 1]
  Rates rates;
  std::optional<FractionalData> fractional;

  const gf::FqMatrix& KeyMap(int user) const { return keys[user - 1].key_map; }
  bool operator==(const SchemeSpec&) const = default;
};

inline constexpr int kDefaultMaxAttempts = 64;
inline constexpr uint64_t kDefaultFractionalField = 2147483647;  // 2^31 - 1
inline constexpr uint64_t kMaxField = 2305843009213693951;        // 2^61 - 1

namespace scheme {

// R_X = 1 and the case's key rate. Throws kMissingLpSolution when the
// instance is fractional and `lp_solution` is null.
Rates OptimalRates(const DerivedSets& derived, int num_users,
                   const lp::LpSolution* lp_solution);

// Z_k selects seed block k for k < K; Z_K is the negated sum.
SchemeSpec SynthesizeClassical(int num_users, uint64_t q, size_t block_length);

// Throw kResampleExhausted after `max_attempts` rejected draws.
SchemeSpec SynthesizeSubcaseOne(const DerivedSets& derived, int num_users,
                                uint64_t q, gf::Rng& rng, int max_attempts);
SchemeSpec SynthesizeSubcaseTwo(const DerivedSets& derived, int num_users,
                                uint64_t q, gf::Rng& rng, int max_attempts);
SchemeSpec SynthesizeFractional(const DerivedSets& derived, int num_users,
                                const lp::LpSolution& lp_solution, uint64_t q,
                                gf::Rng& rng, int max_attempts);

// Dispatches on the case tag. Classical schemes use L = 1.
SchemeSpec Synthesize(const DerivedSets& derived, int num_users,
                      const lp::LpSolution* lp_solution, uint64_t q,
                      uint64_t seed, int max_attempts = kDefaultMaxAttempts);

// Throws kOverrideNotPrime for a composite override.
uint64_t ChooseField(const DerivedSets& derived,
                     std::optional<uint64_t> user_override,
                     uint64_t fractional_default = kDefaultFractionalField);

// Fractional block sizes from the LP solution: q̄ is the lcm of the
// denominators, p_k = b_k * q̄.
FractionalData FractionalSizes(const DerivedSets& derived, int num_users,
                               const lp::LpSolution& lp_solution);

// Rows of every user with a non-empty basis.
std::vector<int> BlockUsers(const SchemeSpec& spec);

// True iff every collection of bases with at most `row_bound` rows in total
// stacks to full row rank. Only maximal collections are ranked.
bool BlocksIndependent(const SchemeSpec& spec, size_t row_bound);
bool BlocksIndependentSerial(const SchemeSpec& spec, size_t row_bound);

// Human-readable list of violated postconditions; empty for a valid spec.
// Covers shapes, key_map = mixing * basis, zero-sum, the rank of the stacked
// key maps, the block independence condition, the per-user ranks and rates.
std::vector<std::string> CheckPostconditions(const SchemeSpec& spec);

bool IsZeroSum(const SchemeSpec& spec);

}  // namespace scheme
}  // namespace dsa

#endif  // DSA_SCHEME_H_
