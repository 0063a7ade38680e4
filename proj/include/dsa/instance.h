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

#ifndef DSA_INSTANCE_H_
#define DSA_INSTANCE_H_

#include <cstddef>
#include <vector>

#include "dsa/user_set.h"

namespace dsa {

// A decentralized secure aggregation instance: K users, the generators of
// the security set system and the generators of the collusion set system.
// User ids are 1-based.
struct ProblemInstance {
  int num_users = 0;
  std::vector<UserSet> security_generators;
  std::vector<UserSet> collusion_generators;
};

// Downward closures of both set systems. Members are sorted by
// (cardinality, mask) and always include the empty set.
struct ClosedSystems {
  std::vector<UserSet> security_closure;
  std::vector<UserSet> collusion_closure;
};

inline constexpr size_t kDefaultClosureCap = size_t{1} << 16;

namespace instance {

// Checks every instance invariant and returns the instance unchanged.
// Throws Error with kInvalidUserCount, kInvalidSet, kNothingToProtect or
// kCollusionTooLarge.
ProblemInstance Validate(const ProblemInstance& raw);

// Union of the power sets of the generators, deduplicated. `cap` bounds the
// total number of sets across both closures (kClosureTooLarge).
ClosedSystems CloseDownward(const ProblemInstance& instance,
                            size_t cap = kDefaultClosureCap);

// Closure of a single generator list; exposed for tests and idempotence
// checks.
std::vector<UserSet> CloseFamily(const std::vector<UserSet>& generators,
                                 size_t cap = kDefaultClosureCap);

}  // namespace instance
}  // namespace dsa

#endif  // DSA_INSTANCE_H_
