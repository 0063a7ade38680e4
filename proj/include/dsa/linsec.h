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


#ifndef DSA_LINSEC_H_
#define DSA_LINSEC_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dsa/derived.h"
#include "dsa/gf.h"
#include "dsa/instance.h"
#include "dsa/lp.h"
#include "dsa/scheme.h"

namespace dsa {

// A block of F_q-linear functionals of the joint seed. Columns are ordered
// W_{1,1..L}, ..., W_{K,1..L}, N_1, ..., N_seed_length.
struct LinearVariable {
  std::string label;
  gf::FqMatrix coeffs;
};

// Result of one (S_m, T_n, u) check. `value` is in q-ary symbols.
struct TripleResult {
  size_t security_index = 0;
  size_t collusion_index = 0;
  int user = 0;
  UserSet security_set;
  UserSet collusion_set;
  lp::Rational value;
  bool passed = false;
};

struct MiReport {
  std::vector<TripleResult> entries;
  bool AllPassed() const;
};

struct LemmaCheck {
  std::string lemma;    // "lemma1", "lemma2", "corollary1", "lemma4"
  std::string context;  // e.g. "S={1} T={2,5} u=3"
  lp::Rational lhs;
  lp::Rational rhs;
  bool holds = false;
};

struct ConverseReport {
  std::vector<LemmaCheck> checks;
  // Lemma 4 evaluated at every maximal triple with |U| <= K - 1, with S
  // reduced to S \ (T ∪ {u}); `tight` records lhs == rhs.
  std::vector<LemmaCheck> lemma4_at_max;
  bool AllHold() const;
  bool Lemma4TightAtMax() const;
};

namespace linsec {

// Labels "W_k", "Z_k", "X_k" for every user and "SUM".
std::map<std::string, LinearVariable> ProtocolVariables(
    const SchemeSpec& spec);

// Rank of the stacked coefficients. Throws kDimensionMismatch if the
// variables disagree on the field or the seed space.
lp::Rational Entropy(const std::vector<LinearVariable>& vars);

// I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C).
lp::Rational ConditionalMi(const std::vector<LinearVariable>& a,
                           const std::vector<LinearVariable>& b,
                           const std::vector<LinearVariable>& c);

// H(SUM | {X_k}_{k != u}, W_u, Z_u) == 0 for each user u; index u - 1.
std::vector<bool> VerifyCorrectness(const SchemeSpec& spec);

// Every closure triple, deduplicated by (S_m, T_n ∪ {u}) in first-seen
// (m, n, u) order: I(W_S; {X_k}_{k != u} | SUM, W_u, Z_u, {W_k, Z_k}_{T}).
MiReport VerifySecurity(const SchemeSpec& spec, const ClosedSystems& closed);
MiReport VerifySecuritySerial(const SchemeSpec& spec,
                              const ClosedSystems& closed);

// H({Z_k}_{S \ (T ∪ {u})} | {Z_k}_{T ∪ {u}}) == |S \ (T ∪ {u})| L on every
// deduplicated closure triple. For ClassicalFull specs, triples covering all
// of [K] are left out.
MiReport VerifyKeyIndependence(const SchemeSpec& spec,
                               const ClosedSystems& closed);

ConverseReport VerifyConverseLemmas(const SchemeSpec& spec,
                                    const ClosedSystems& closed,
                                    const DerivedSets& derived);

inline constexpr uint64_t kDefaultBruteForceCap = uint64_t{1} << 22;

// Enumerates every seed realization. Entropies are exact because the joint
// distributions are uniform on their supports; both facts are checked by
// counting rather than assumed. Throws kTooLarge past `cap` realizations.
class BruteForceOracle {
 public:
  BruteForceOracle(const SchemeSpec& spec,
                   uint64_t cap = kDefaultBruteForceCap);

  lp::Rational Entropy(const std::vector<std::string>& labels) const;
  lp::Rational Mi(const std::vector<std::string>& a,
                  const std::vector<std::string>& b,
                  const std::vector<std::string>& c) const;

 private:
  uint64_t q_ = 2;
  uint64_t realizations_ = 0;
  // Per label, the row offset into each realization's value table.
  std::map<std::string, std::pair<size_t, size_t>> rows_;
  size_t row_count_ = 0;
  std::vector<uint8_t> values_;  // realizations_ x row_count_
};

lp::Rational BruteForceMi(const SchemeSpec& spec,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b,
                          const std::vector<std::string>& c,
                          uint64_t cap = kDefaultBruteForceCap);

}  // namespace linsec
}  // namespace dsa

#endif  // DSA_LINSEC_H_
