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

#ifndef DSA_USER_SET_H_
#define DSA_USER_SET_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dsa {

// Largest supported user count; sets are 32-bit masks over user ids 1..K.
inline constexpr int kMaxUsers = 31;

// A subset of [K], stored as a bitmask where bit (id - 1) marks user id.
class UserSet {
 public:
  constexpr UserSet() = default;
  constexpr explicit UserSet(uint32_t bits) : bits_(bits) {}
  UserSet(std::initializer_list<int> ids) {
    for (int id : ids) Insert(id);
  }

  static UserSet FromIds(const std::vector<int>& ids) {
    UserSet s;
    for (int id : ids) s.Insert(id);
    return s;
  }
  // [K] = {1, ..., K}.
  static constexpr UserSet All(int num_users) {
    return UserSet(num_users >= 32 ? ~0u : ((1u << num_users) - 1u));
  }
  static constexpr UserSet Single(int id) { return UserSet(1u << (id - 1)); }

  constexpr uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool Contains(int id) const { return (bits_ >> (id - 1)) & 1u; }
  constexpr bool IsSubsetOf(UserSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  void Insert(int id) { bits_ |= 1u << (id - 1); }
  void Erase(int id) { bits_ &= ~(1u << (id - 1)); }

  // Smallest member id; undefined on the empty set.
  int Min() const { return std::countr_zero(bits_) + 1; }

  std::vector<int> Ids() const {
    std::vector<int> ids;
    for (uint32_t b = bits_; b != 0; b &= b - 1) {
      ids.push_back(std::countr_zero(b) + 1);
    }
    return ids;
  }

  // "{1,2,5}"; "{}" for the empty set.
  std::string ToString() const {
    std::string out = "{";
    bool first = true;
    for (int id : Ids()) {
      if (!first) out += ",";
      out += std::to_string(id);
      first = false;
    }
    return out + "}";
  }

  friend constexpr UserSet operator|(UserSet a, UserSet b) {
    return UserSet(a.bits_ | b.bits_);
  }
  friend constexpr UserSet operator&(UserSet a, UserSet b) {
    return UserSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr UserSet operator-(UserSet a, UserSet b) {
    return UserSet(a.bits_ & ~b.bits_);
  }
  constexpr UserSet& operator|=(UserSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr bool operator==(UserSet, UserSet) = default;

  // Canonical order: by cardinality, then by mask value.
  friend constexpr bool operator<(UserSet a, UserSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits_ < b.bits_;
  }

 private:
  uint32_t bits_ = 0;
};

struct UserSetHash {
  size_t operator()(UserSet s) const { return std::hash<uint32_t>{}(s.bits()); }
};

}  // namespace dsa

#endif  // DSA_USER_SET_H_
