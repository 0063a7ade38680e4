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

#include "dsa/derived.h"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "dsa/error.h"

namespace dsa {

std::string_view CaseTagName(CaseTag tag) {
  switch (tag) {
    case CaseTag::kClassicalFull: return "ClassicalFull";
    case CaseTag::kSubcaseOne: return "SubcaseOne";
    case CaseTag::kSubcaseTwo: return "SubcaseTwo";
    case CaseTag::kFractional: return "Fractional";
  }
  return "Unknown";
}

namespace derived {
namespace {

// Leftovers contributed by one security set against every collusion set.
uint32_t LeftoversFor(UserSet s, const std::vector<UserSet>& collusion,
                      int num_users) {
  const UserSet all = UserSet::All(num_users);
  uint32_t bits = 0;
  for (UserSet t : collusion) {
    for (int u = 1; u <= num_users; ++u) {
      const UserSet uni = s | t | UserSet::Single(u);
      if (uni.size() == num_users - 1) bits |= (all - uni).bits();
    }
  }
  return bits;
}

UserSet SecurityUnion(const ClosedSystems& closed) {
  UserSet u;
  for (UserSet s : closed.security_closure) u |= s;
  return u;
}

// Triples of one security set attaining the per-set maximum, deduplicated
// by union in (n, u) order.
MaxTriples ScanSecuritySet(const ClosedSystems& closed, size_t m,
                           UserSet total, int num_users) {
  MaxTriples local;
  local.a_star = -1;
  std::unordered_set<UserSet, UserSetHash> seen;
  const UserSet s = closed.security_closure[m];
  for (size_t n = 0; n < closed.collusion_closure.size(); ++n) {
    const UserSet t = closed.collusion_closure[n];
    for (int u = 1; u <= num_users; ++u) {
      const UserSet uni = s | t | UserSet::Single(u);
      const UserSet a = uni & total;
      if (a.size() < local.a_star) continue;
      if (a.size() > local.a_star) {
        local.a_star = a.size();
        local.triples.clear();
        seen.clear();
      }
      if (!seen.insert(uni).second) continue;
      local.triples.push_back(Triple{m, n, u, s, t, uni, a});
    }
  }
  return local;
}

}  // namespace

UserSet ComputeImplicitSetSerial(const ClosedSystems& closed, int num_users) {
  uint32_t bits = 0;
  for (UserSet s : closed.security_closure) {
    bits |= LeftoversFor(s, closed.collusion_closure, num_users);
  }
  return UserSet(bits) - SecurityUnion(closed);
}

UserSet ComputeImplicitSet(const ClosedSystems& closed, int num_users) {
  uint32_t bits = 0;
  const auto count = static_cast<long>(closed.security_closure.size());
#pragma omp parallel for reduction(| : bits) schedule(static)
  for (long m = 0; m < count; ++m) {
    bits |= LeftoversFor(closed.security_closure[m], closed.collusion_closure,
                         num_users);
  }
  return UserSet(bits) - SecurityUnion(closed);
}

UserSet ComputeTotalSecuritySet(const ClosedSystems& closed,
                                UserSet implicit_set) {
  return SecurityUnion(closed) | implicit_set;
}

MaxTriples ComputeAStarAndTriplesSerial(const ClosedSystems& closed,
                                        UserSet total, int num_users) {
  MaxTriples best;
  std::unordered_set<UserSet, UserSetHash> seen;
  for (size_t m = 0; m < closed.security_closure.size(); ++m) {
    const UserSet s = closed.security_closure[m];
    for (size_t n = 0; n < closed.collusion_closure.size(); ++n) {
      const UserSet t = closed.collusion_closure[n];
      for (int u = 1; u <= num_users; ++u) {
        const UserSet uni = s | t | UserSet::Single(u);
        const UserSet a = uni & total;
        if (a.size() < best.a_star) continue;
        if (a.size() > best.a_star) {
          best.a_star = a.size();
          best.triples.clear();
          seen.clear();
        }
        if (seen.insert(uni).second) {
          best.triples.push_back(Triple{m, n, u, s, t, uni, a});
        }
      }
    }
  }
  return best;
}

MaxTriples ComputeAStarAndTriples(const ClosedSystems& closed, UserSet total,
                                  int num_users) {
  const auto count = static_cast<long>(closed.security_closure.size());
  std::vector<MaxTriples> per_set(closed.security_closure.size());
#pragma omp parallel for schedule(dynamic)
  for (long m = 0; m < count; ++m) {
    per_set[m] = ScanSecuritySet(closed, static_cast<size_t>(m), total,
                                 num_users);
  }
  MaxTriples best;
  for (const MaxTriples& local : per_set) {
    best.a_star = std::max(best.a_star, local.a_star);
  }
  std::unordered_set<UserSet, UserSetHash> seen;
  for (const MaxTriples& local : per_set) {
    if (local.a_star != best.a_star) continue;
    for (const Triple& triple : local.triples) {
      if (seen.insert(triple.union_set).second) best.triples.push_back(triple);
    }
  }
  return best;
}

UserSet ComputeQ(const std::vector<Triple>& max_triples) {
  UserSet q;
  for (const Triple& t : max_triples) q |= t.union_set;
  return q;
}

CaseTag Classify(int a_star, UserSet total, UserSet q_set, int num_users) {
  const int total_size = total.size();
  if (a_star == num_users) return CaseTag::kClassicalFull;
  if (a_star < total_size) return CaseTag::kSubcaseOne;
  if (a_star == total_size && q_set.size() < num_users) {
    return CaseTag::kSubcaseTwo;
  }
  if (a_star == total_size && q_set.size() == num_users &&
      a_star < num_users) {
    return CaseTag::kFractional;
  }
  throw Error(ErrorCode::kInternalInconsistency,
              "no case matches a*=" + std::to_string(a_star) +
                  " |S̄|=" + std::to_string(total_size) +
                  " |Q|=" + std::to_string(q_set.size()));
}

DerivedSets Derive(const ClosedSystems& closed, int num_users) {
  DerivedSets d;
  d.implicit_set = ComputeImplicitSet(closed, num_users);
  d.total_security_set = ComputeTotalSecuritySet(closed, d.implicit_set);
  MaxTriples max = ComputeAStarAndTriples(closed, d.total_security_set,
                                          num_users);
  d.a_star = max.a_star;
  d.max_triples = std::move(max.triples);
  d.q_set = ComputeQ(d.max_triples);
  d.case_tag = Classify(d.a_star, d.total_security_set, d.q_set, num_users);
  return d;
}

}  // namespace derived
}  // namespace dsa
