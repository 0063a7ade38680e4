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


#include "dsa/scheme.h"

#include <algorithm>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsa/error.h"

namespace dsa::scheme {
namespace {

using gf::FqMatrix;
using lp::Rational;

constexpr size_t kMaxCollections = size_t{1} << 22;

uint64_t ToUint64(const boost::multiprecision::cpp_int& v,
                  const std::string& what) {
  if (v < 0 || v > std::numeric_limits<uint64_t>::max()) {
    throw Error(ErrorCode::kTooLarge, what + " does not fit in 64 bits");
  }
  return static_cast<uint64_t>(v);
}

// min(bound, a * C(n, k)) computed without overflow.
uint64_t SaturatingFieldBound(uint64_t a, uint64_t n, uint64_t k,
                              uint64_t bound) {
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > bound) return bound;
  }
  r *= a;
  return r > bound ? bound : static_cast<uint64_t>(r);
}

uint64_t NextPrimeAbove(uint64_t bound) {
  if (bound >= kMaxField) return kMaxField;
  return std::min(gf::SmallestPrimeGeq(bound + 1), kMaxField);
}

UserKey MakeKey(FqMatrix basis, FqMatrix mixing) {
  UserKey key;
  key.key_map = mixing * basis;
  key.basis = std::move(basis);
  key.mixing = std::move(mixing);
  return key;
}

UserKey EmptyKey(size_t block_length, size_t seed_length, uint64_t q) {
  return MakeKey(FqMatrix(0, seed_length, q), FqMatrix(block_length, 0, q));
}

SchemeSpec Skeleton(int num_users, uint64_t q, size_t block_length,
                    size_t seed_length, CaseTag tag, int a_star) {
  SchemeSpec spec;
  spec.q = q;
  spec.block_length = block_length;
  spec.seed_length = seed_length;
  spec.num_users = num_users;
  spec.case_tag = tag;
  spec.a_star = a_star;
  spec.keys.assign(num_users, EmptyKey(block_length, seed_length, q));
  spec.rates = {Rational(1), Rational(static_cast<long long>(seed_length),
                                      static_cast<long long>(block_length))};
  return spec;
}

// Key rows of all keyed users over {1} x a*, the last one balancing the sum.
SchemeSpec DrawSingleRow(const DerivedSets& derived, int num_users,
                         uint64_t q, UserSet keyed, int balancer,
                         gf::Rng& rng) {
  const size_t a = static_cast<size_t>(derived.a_star);
  SchemeSpec spec =
      Skeleton(num_users, q, 1, a, derived.case_tag, derived.a_star);
  FqMatrix sum(1, a, q);
  for (int k : keyed.Ids()) {
    if (k == balancer) continue;
    FqMatrix h = gf::RandomMatrix(1, a, q, rng);
    sum = sum + h;
    spec.keys[k - 1] = MakeKey(std::move(h), FqMatrix::Identity(1, q));
  }
  spec.keys[balancer - 1] = MakeKey(sum.Negate(), FqMatrix::Identity(1, q));
  return spec;
}

void RequirePrime(uint64_t q) {
  if (!gf::IsPrime(q)) {
    throw Error(ErrorCode::kOverrideNotPrime,
                "field size " + std::to_string(q) + " is not prime");
  }
}

[[noreturn]] void Exhausted(int max_attempts, uint64_t q) {
  throw Error(ErrorCode::kResampleExhausted,
              std::to_string(max_attempts) + " draws over F_" +
                  std::to_string(q) + " all failed the rank conditions");
}

template <typename Draw>
SchemeSpec Resample(Draw draw, int max_attempts, uint64_t q) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    SchemeSpec spec = draw();
    if (CheckPostconditions(spec).empty()) return spec;
  }
  Exhausted(max_attempts, q);
}

// Number of rows the independence condition must cover.
size_t RowBound(const SchemeSpec& spec) {
  switch (spec.case_tag) {
    case CaseTag::kClassicalFull:
      return static_cast<size_t>(spec.num_users - 1) * spec.block_length;
    case CaseTag::kSubcaseOne:
    case CaseTag::kSubcaseTwo:
      return static_cast<size_t>(spec.a_star);
    case CaseTag::kFractional: {
      // (a* + b*) q̄ with a* + b* the reported key rate.
      const Rational rows =
          spec.rates.source_key * static_cast<long long>(spec.block_length);
      if (boost::multiprecision::denominator(rows) != 1) return 0;
      return static_cast<size_t>(boost::multiprecision::numerator(rows));
    }
  }
  return 0;
}

// Every maximal collection of blocks with at most `row_bound` rows, as
// masks over the indices of `rows`.
std::vector<uint32_t> MaximalCollections(const std::vector<size_t>& rows,
                                         size_t row_bound) {
  std::vector<uint32_t> out;
  size_t visited = 0;
  const size_t n = rows.size();
  auto dfs = [&](auto&& self, size_t i, uint32_t mask, size_t total) -> void {
    if (++visited > kMaxCollections) {
      throw Error(ErrorCode::kTooLarge, "too many block collections");
    }
    if (i == n) {
      for (size_t j = 0; j < n; ++j) {
        if (!((mask >> j) & 1u) && total + rows[j] <= row_bound) return;
      }
      out.push_back(mask);
      return;
    }
    if (total + rows[i] <= row_bound) {
      self(self, i + 1, mask | (1u << i), total + rows[i]);
    }
    self(self, i + 1, mask, total);
  };
  dfs(dfs, 0, 0, 0);
  return out;
}

bool CollectionIndependent(const SchemeSpec& spec,
                           const std::vector<int>& users, uint32_t mask) {
  std::vector<FqMatrix> blocks;
  size_t total = 0;
  for (size_t j = 0; j < users.size(); ++j) {
    if ((mask >> j) & 1u) {
      blocks.push_back(spec.keys[users[j] - 1].basis);
      total += blocks.back().rows();
    }
  }
  return gf::RankSerial(FqMatrix::VStack(blocks, spec.seed_length, spec.q)) ==
         total;
}

bool BlocksIndependentImpl(const SchemeSpec& spec, size_t row_bound,
                           bool parallel) {
  const std::vector<int> users = BlockUsers(spec);
  std::vector<size_t> rows;
  for (int k : users) rows.push_back(spec.keys[k - 1].basis.rows());
  const std::vector<uint32_t> masks = MaximalCollections(rows, row_bound);
  bool ok = true;
  const long count = static_cast<long>(masks.size());
#pragma omp parallel for if (parallel) reduction(&& : ok) schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    ok = CollectionIndependent(spec, users, masks[i]) && ok;
  }
  return ok;
}

}  // namespace

Rates OptimalRates(const DerivedSets& derived, int num_users,
                   const lp::LpSolution* lp_solution) {
  switch (derived.case_tag) {
    case CaseTag::kClassicalFull:
      return {Rational(1), Rational(num_users - 1)};
    case CaseTag::kSubcaseOne:
    case CaseTag::kSubcaseTwo:
      return {Rational(1), Rational(derived.a_star)};
    case CaseTag::kFractional:
      if (lp_solution == nullptr) {
        throw Error(ErrorCode::kMissingLpSolution,
                    "fractional instance needs the LP optimum");
      }
      return {Rational(1), Rational(derived.a_star) + lp_solution->optimum};
  }
  throw Error(ErrorCode::kInternalInconsistency, "unknown case tag");
}

SchemeSpec SynthesizeClassical(int num_users, uint64_t q,
                               size_t block_length) {
  const size_t l = block_length;
  const size_t seed = static_cast<size_t>(num_users - 1) * l;
  SchemeSpec spec =
      Skeleton(num_users, q, l, seed, CaseTag::kClassicalFull, num_users);
  FqMatrix last(l, seed, q);
  for (int k = 1; k < num_users; ++k) {
    FqMatrix select(l, seed, q);
    for (size_t i = 0; i < l; ++i) select.set(i, (k - 1) * l + i, 1);
    last = last - select;
    spec.keys[k - 1] = MakeKey(std::move(select), FqMatrix::Identity(l, q));
  }
  spec.keys[num_users - 1] = MakeKey(std::move(last), FqMatrix::Identity(l, q));
  return spec;
}

SchemeSpec SynthesizeSubcaseOne(const DerivedSets& derived, int num_users,
                                uint64_t q, gf::Rng& rng, int max_attempts) {
  if (derived.case_tag != CaseTag::kSubcaseOne) {
    throw Error(ErrorCode::kInternalInconsistency, "not a SubcaseOne instance");
  }
  RequirePrime(q);
  const UserSet keyed = derived.total_security_set;
  const int balancer = keyed.Ids().back();
  return Resample(
      [&] { return DrawSingleRow(derived, num_users, q, keyed, balancer, rng); },
      max_attempts, q);
}

SchemeSpec SynthesizeSubcaseTwo(const DerivedSets& derived, int num_users,
                                uint64_t q, gf::Rng& rng, int max_attempts) {
  if (derived.case_tag != CaseTag::kSubcaseTwo) {
    throw Error(ErrorCode::kInternalInconsistency, "not a SubcaseTwo instance");
  }
  RequirePrime(q);
  const int extra = (UserSet::All(num_users) - derived.q_set).Min();
  const UserSet keyed = derived.total_security_set | UserSet::Single(extra);
  return Resample(
      [&] { return DrawSingleRow(derived, num_users, q, keyed, extra, rng); },
      max_attempts, q);
}

FractionalData FractionalSizes(const DerivedSets& derived, int num_users,
                               const lp::LpSolution& lp_solution) {
  using boost::multiprecision::cpp_int;
  const UserSet outside = UserSet::All(num_users) - derived.total_security_set;
  cpp_int q_bar = 1;
  for (int k : outside.Ids()) {
    auto it = lp_solution.assignment.find(k);
    if (it == lp_solution.assignment.end() || it->second < 0) {
      throw Error(ErrorCode::kNonRationalSolution,
                  "no non-negative rational b_" + std::to_string(k));
    }
    const cpp_int den = boost::multiprecision::denominator(it->second);
    q_bar = q_bar / boost::multiprecision::gcd(q_bar, den) * den;
  }
  FractionalData data;
  data.q_bar = ToUint64(q_bar, "q̄");
  for (int k : outside.Ids()) {
    const Rational pk = lp_solution.assignment.at(k) * Rational(q_bar);
    data.p[k] = ToUint64(boost::multiprecision::numerator(pk), "p_k");
    data.p_bar += data.p[k];
  }
  return data;
}

SchemeSpec SynthesizeFractional(const DerivedSets& derived, int num_users,
                                const lp::LpSolution& lp_solution, uint64_t q,
                                gf::Rng& rng, int max_attempts) {
  if (derived.case_tag != CaseTag::kFractional) {
    throw Error(ErrorCode::kNotFractionalCase, "not a Fractional instance");
  }
  RequirePrime(q);
  if (!lp::CheckLemma5(lp_solution)) {
    throw Error(ErrorCode::kInternalInconsistency,
                "LP solution violates b* = sum b_k - 1");
  }
  const FractionalData sizes = FractionalSizes(derived, num_users, lp_solution);
  const size_t l = sizes.q_bar;
  const size_t seed =
      sizes.p_bar + static_cast<size_t>(derived.a_star - 1) * sizes.q_bar;
  const Rational target = Rational(derived.a_star) + lp_solution.optimum;
  if (Rational(static_cast<long long>(seed), static_cast<long long>(l)) !=
      target) {
    throw Error(ErrorCode::kInternalInconsistency,
                "seed length does not realize a* + b*");
  }
  const UserSet bar = derived.total_security_set;
  const int balancer = bar.Min();
  auto draw = [&] {
    SchemeSpec spec = Skeleton(num_users, q, l, seed, CaseTag::kFractional,
                               derived.a_star);
    spec.fractional = sizes;
    FqMatrix sum(l, seed, q);
    for (int k = 1; k <= num_users; ++k) {
      if (k == balancer) continue;
      UserKey key;
      if (bar.Contains(k)) {
        key = MakeKey(gf::RandomMatrix(l, seed, q, rng),
                      FqMatrix::Identity(l, q));
      } else {
        const size_t pk = sizes.p.at(k);
        FqMatrix f = gf::RandomMatrix(l, pk, q, rng);
        FqMatrix g = gf::RandomMatrix(pk, seed, q, rng);
        key = MakeKey(std::move(g), std::move(f));
      }
      sum = sum + key.key_map;
      spec.keys[k - 1] = std::move(key);
    }
    spec.keys[balancer - 1] = MakeKey(sum.Negate(), FqMatrix::Identity(l, q));
    return spec;
  };
  return Resample(draw, max_attempts, q);
}

SchemeSpec Synthesize(const DerivedSets& derived, int num_users,
                      const lp::LpSolution* lp_solution, uint64_t q,
                      uint64_t seed, int max_attempts) {
  gf::Rng rng(seed);
  switch (derived.case_tag) {
    case CaseTag::kClassicalFull:
      RequirePrime(q);
      return SynthesizeClassical(num_users, q, 1);
    case CaseTag::kSubcaseOne:
      return SynthesizeSubcaseOne(derived, num_users, q, rng, max_attempts);
    case CaseTag::kSubcaseTwo:
      return SynthesizeSubcaseTwo(derived, num_users, q, rng, max_attempts);
    case CaseTag::kFractional:
      if (lp_solution == nullptr) {
        throw Error(ErrorCode::kMissingLpSolution,
                    "fractional instance needs the LP optimum");
      }
      return SynthesizeFractional(derived, num_users, *lp_solution, q, rng,
                                  max_attempts);
  }
  throw Error(ErrorCode::kInternalInconsistency, "unknown case tag");
}

uint64_t ChooseField(const DerivedSets& derived,
                     std::optional<uint64_t> user_override,
                     uint64_t fractional_default) {
  if (user_override) {
    RequirePrime(*user_override);
    return *user_override;
  }
  const uint64_t a = static_cast<uint64_t>(derived.a_star);
  switch (derived.case_tag) {
    case CaseTag::kClassicalFull:
      return 2;
    case CaseTag::kSubcaseOne:
      return NextPrimeAbove(SaturatingFieldBound(
          a, static_cast<uint64_t>(derived.total_security_set.size()), a,
          kMaxField));
    case CaseTag::kSubcaseTwo:
      return NextPrimeAbove(a * (a + 1));
    case CaseTag::kFractional:
      return fractional_default;
  }
  throw Error(ErrorCode::kInternalInconsistency, "unknown case tag");
}

std::vector<int> BlockUsers(const SchemeSpec& spec) {
  std::vector<int> users;
  for (int k = 1; k <= spec.num_users; ++k) {
    if (spec.keys[k - 1].basis.rows() > 0) users.push_back(k);
  }
  return users;
}

bool BlocksIndependent(const SchemeSpec& spec, size_t row_bound) {
  return BlocksIndependentImpl(spec, row_bound, true);
}

bool BlocksIndependentSerial(const SchemeSpec& spec, size_t row_bound) {
  return BlocksIndependentImpl(spec, row_bound, false);
}

bool IsZeroSum(const SchemeSpec& spec) {
  FqMatrix sum(spec.block_length, spec.seed_length, spec.q);
  for (const UserKey& key : spec.keys) {
    if (key.key_map.rows() != sum.rows() || key.key_map.cols() != sum.cols()) {
      return false;
    }
    sum = sum + key.key_map;
  }
  return sum.IsZero();
}

std::vector<std::string> CheckPostconditions(const SchemeSpec& spec) {
  std::vector<std::string> bad;
  const size_t l = spec.block_length;
  const size_t seed = spec.seed_length;
  if (spec.keys.size() != static_cast<size_t>(spec.num_users)) {
    bad.push_back("expected one key per user");
    return bad;
  }
  for (int k = 1; k <= spec.num_users; ++k) {
    const UserKey& key = spec.keys[k - 1];
    const std::string who = "user " + std::to_string(k) + ": ";
    if (key.key_map.rows() != l || key.key_map.cols() != seed ||
        key.basis.cols() != seed || key.mixing.rows() != l ||
        key.mixing.cols() != key.basis.rows() ||
        key.key_map.modulus() != spec.q || key.mixing.modulus() != spec.q ||
        key.basis.modulus() != spec.q) {
      bad.push_back(who + "shape or field mismatch");
      return bad;
    }
    if (key.mixing * key.basis != key.key_map) {
      bad.push_back(who + "key map is not mixing * basis");
    }
    const size_t p = key.basis.rows();
    if (gf::Rank(key.mixing) != p) {
      bad.push_back(who + "mixing matrix lacks full column rank");
    }
    if (gf::Rank(key.key_map) != p) {
      bad.push_back(who + "key map rank differs from its block size");
    }
    if (spec.fractional) {
      auto it = spec.fractional->p.find(k);
      const size_t want = it == spec.fractional->p.end() ? spec.fractional->q_bar
                                                         : it->second;
      if (p != want) bad.push_back(who + "block size differs from p_k / q̄");
    }
  }
  if (!IsZeroSum(spec)) bad.push_back("key maps do not sum to zero");

  switch (spec.case_tag) {
    case CaseTag::kSubcaseOne:
    case CaseTag::kSubcaseTwo:
      if (l != 1) bad.push_back("subcase schemes use L = 1");
      break;
    case CaseTag::kFractional:
      if (!spec.fractional) {
        bad.push_back("fractional data missing");
      } else if (l != spec.fractional->q_bar ||
                 seed != spec.fractional->p_bar +
                             static_cast<size_t>(spec.a_star - 1) * l) {
        bad.push_back("L or seed length disagree with q̄, p̄ and a*");
      }
      break;
    case CaseTag::kClassicalFull:
      break;
  }

  if (spec.rates.communication != 1 ||
      spec.rates.source_key !=
          Rational(static_cast<long long>(seed), static_cast<long long>(l))) {
    bad.push_back("reported rates differ from (1, seed_length / L)");
  }
  const size_t bound = RowBound(spec);
  if (bound != seed) {
    bad.push_back("independence bound " + std::to_string(bound) +
                  " differs from the seed length");
  }
  std::vector<FqMatrix> maps;
  for (const UserKey& key : spec.keys) maps.push_back(key.key_map);
  if (gf::Rank(FqMatrix::VStack(maps, seed, spec.q)) != seed) {
    bad.push_back("stacked key maps do not span the seed space");
  }
  if (bad.empty() && !BlocksIndependent(spec, bound)) {
    bad.push_back("some collection of at most " + std::to_string(bound) +
                  " block rows is dependent");
  }
  return bad;
}

}  // namespace dsa::scheme
