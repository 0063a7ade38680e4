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

#ifndef DSA_DERIVED_H_
#define DSA_DERIVED_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "dsa/instance.h"
#include "dsa/user_set.h"

namespace dsa {

// Branch of the optimal key-rate characterization an instance falls into.
enum class CaseTag {
  kClassicalFull,  // a* = K: source key rate K - 1.
  kSubcaseOne,     // a* < |S̄|: rate a*.
  kSubcaseTwo,     // a* = |S̄|, |Q| < K: rate a*.
  kFractional,     // a* = |S̄|, |Q| = K, a* < K: rate a* + b*.
};

std::string_view CaseTagName(CaseTag tag);

// One (S_m, T_n, u) choice over the closures. Indices point into
// ClosedSystems; the sets are copied for convenience.
struct Triple {
  size_t security_index = 0;
  size_t collusion_index = 0;
  int user = 0;
  UserSet security_set;
  UserSet collusion_set;
  UserSet union_set;  // S_m ∪ T_n ∪ {u}
  UserSet a_set;      // union_set ∩ S̄
};

struct DerivedSets {
  UserSet implicit_set;
  UserSet total_security_set;
  int a_star = 0;
  // Every triple with |A| = a*, deduplicated by union_set (which determines
  // a_set and both LP constraint sets), in first-seen (m, n, u) order.
  std::vector<Triple> max_triples;
  UserSet q_set;
  CaseTag case_tag = CaseTag::kSubcaseOne;
};

namespace derived {

// Leftover users of every triple whose union has exactly K - 1 members,
// minus the union of the explicit security sets.
UserSet ComputeImplicitSet(const ClosedSystems& closed, int num_users);
UserSet ComputeImplicitSetSerial(const ClosedSystems& closed, int num_users);

UserSet ComputeTotalSecuritySet(const ClosedSystems& closed,
                                UserSet implicit_set);

struct MaxTriples {
  int a_star = 0;
  std::vector<Triple> triples;
};

// Exhaustive over |closure_S| x |closure_T| x K. The parallel version splits
// over security sets and merges in index order, so both return identical
// results.
MaxTriples ComputeAStarAndTriples(const ClosedSystems& closed,
                                  UserSet total_security_set, int num_users);
MaxTriples ComputeAStarAndTriplesSerial(const ClosedSystems& closed,
                                        UserSet total_security_set,
                                        int num_users);

UserSet ComputeQ(const std::vector<Triple>& max_triples);

// Throws kInternalInconsistency if no branch matches.
CaseTag Classify(int a_star, UserSet total_security_set, UserSet q_set,
                 int num_users);

DerivedSets Derive(const ClosedSystems& closed, int num_users);

}  // namespace derived
}  // namespace dsa

#endif  // DSA_DERIVED_H_
