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

#include "dsa/instance.h"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "dsa/error.h"

namespace dsa {

namespace instance {

ProblemInstance Validate(const ProblemInstance& raw) {
  const int k = raw.num_users;
  if (k < 3) {
    throw Error(ErrorCode::kInvalidUserCount,
                "K must be at least 3, got " + std::to_string(k));
  }
  if (k > kMaxUsers) {
    throw Error(ErrorCode::kInvalidUserCount,
                "K must be at most " + std::to_string(kMaxUsers) + ", got " +
                    std::to_string(k));
  }
  const UserSet all = UserSet::All(k);
  UserSet security_union;
  for (UserSet s : raw.security_generators) {
    if (!s.IsSubsetOf(all)) {
      throw Error(ErrorCode::kInvalidSet,
                  "security set " + s.ToString() + " is not a subset of [K]");
    }
    security_union |= s;
  }
  for (UserSet t : raw.collusion_generators) {
    if (!t.IsSubsetOf(all)) {
      throw Error(ErrorCode::kInvalidSet,
                  "collusion set " + t.ToString() + " is not a subset of [K]");
    }
  }
  if (security_union.empty()) {
    throw Error(ErrorCode::kNothingToProtect,
                "the union of all security sets is empty");
  }
  for (UserSet t : raw.collusion_generators) {
    if (t.size() > k - 2) {
      throw Error(ErrorCode::kCollusionTooLarge,
                  "collusion set " + t.ToString() + " has more than K-2 users");
    }
  }
  return raw;
}

std::vector<UserSet> CloseFamily(const std::vector<UserSet>& generators,
                                 size_t cap) {
  std::unordered_set<UserSet, UserSetHash> members;
  members.insert(UserSet());
  for (UserSet g : generators) {
    if (g.size() >= 63 || (size_t{1} << g.size()) > cap) {
      throw Error(ErrorCode::kClosureTooLarge,
                  "power set of " + g.ToString() + " exceeds the closure cap");
    }
    // Walk every submask of g, including g and the empty set.
    const uint32_t full = g.bits();
    uint32_t sub = full;
    while (true) {
      members.insert(UserSet(sub));
      if (members.size() > cap) {
        throw Error(ErrorCode::kClosureTooLarge,
                    "closure exceeds " + std::to_string(cap) + " sets");
      }
      if (sub == 0) break;
      sub = (sub - 1) & full;
    }
  }
  std::vector<UserSet> out(members.begin(), members.end());
  std::sort(out.begin(), out.end());
  return out;
}

ClosedSystems CloseDownward(const ProblemInstance& instance, size_t cap) {
  ClosedSystems closed;
  closed.security_closure = CloseFamily(instance.security_generators, cap);
  closed.collusion_closure = CloseFamily(instance.collusion_generators, cap);
  if (closed.security_closure.size() + closed.collusion_closure.size() > cap) {
    throw Error(ErrorCode::kClosureTooLarge,
                "combined closure size exceeds " + std::to_string(cap));
  }
  return closed;
}

}  // namespace instance
}  // namespace dsa
