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


#include "dsa/linsec.h"

#include <string>
#include <unordered_set>
#include <vector>

#include "dsa/error.h"

namespace dsa {

bool MiReport::AllPassed() const {
  for (const TripleResult& e : entries) {
    if (!e.passed) return false;
  }
  return true;
}

bool ConverseReport::AllHold() const {
  for (const LemmaCheck& c : checks) {
    if (!c.holds) return false;
  }
  for (const LemmaCheck& c : lemma4_at_max) {
    if (!c.holds) return false;
  }
  return true;
}

bool ConverseReport::Lemma4TightAtMax() const {
  for (const LemmaCheck& c : lemma4_at_max) {
    if (c.lhs != c.rhs) return false;
  }
  return true;
}

namespace linsec {
namespace {

using gf::FqMatrix;
using lp::Rational;

// Coefficient blocks of every protocol variable, indexed by user - 1.
struct Blocks {
  std::vector<FqMatrix> w, z, x;
  FqMatrix sum;
  size_t cols = 0;
  uint64_t q = 2;
};

Blocks BuildBlocks(const SchemeSpec& spec) {
  const size_t k_users = static_cast<size_t>(spec.num_users);
  const size_t l = spec.block_length;
  Blocks b;
  b.q = spec.q;
  b.cols = k_users * l + spec.seed_length;
  b.sum = FqMatrix(l, b.cols, spec.q);
  for (size_t k = 0; k < k_users; ++k) {
    FqMatrix w(l, b.cols, spec.q);
    for (size_t i = 0; i < l; ++i) {
      w.set(i, k * l + i, 1);
      b.sum.set(i, k * l + i, 1);
    }
    FqMatrix z(l, b.cols, spec.q);
    z.Paste(spec.keys[k].key_map, 0, k_users * l);
    b.x.push_back(w + z);
    b.w.push_back(std::move(w));
    b.z.push_back(std::move(z));
  }
  return b;
}

using Refs = std::vector<const FqMatrix*>;

size_t RankOf(const Blocks& b, const Refs& parts) {
  size_t rows = 0;
  for (const FqMatrix* m : parts) rows += m->rows();
  FqMatrix stacked(rows, b.cols, b.q);
  size_t offset = 0;
  for (const FqMatrix* m : parts) {
    stacked.Paste(*m, offset, 0);
    offset += m->rows();
  }
  return gf::RankSerial(stacked);
}

Refs Join(Refs a, const Refs& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// H(A | C) as an integer rank difference.
long CondEntropy(const Blocks& b, const Refs& a, const Refs& c) {
  return static_cast<long>(RankOf(b, Join(a, c))) -
         static_cast<long>(RankOf(b, c));
}

long Mi(const Blocks& b, const Refs& a, const Refs& bb, const Refs& c) {
  const Refs ac = Join(a, c);
  const Refs bc = Join(bb, c);
  return static_cast<long>(RankOf(b, ac)) + static_cast<long>(RankOf(b, bc)) -
         static_cast<long>(RankOf(b, Join(ac, bb))) -
         static_cast<long>(RankOf(b, c));
}

Refs Pick(const std::vector<FqMatrix>& blocks, UserSet users) {
  Refs out;
  for (int k : users.Ids()) out.push_back(&blocks[k - 1]);
  return out;
}

// Closure triples deduplicated by (S, T ∪ {u}), first-seen order.
std::vector<TripleResult> DistinctTriples(const ClosedSystems& closed,
                                          int num_users) {
  std::vector<TripleResult> out;
  std::unordered_set<uint64_t> seen;
  for (size_t m = 0; m < closed.security_closure.size(); ++m) {
    const UserSet s = closed.security_closure[m];
    for (size_t n = 0; n < closed.collusion_closure.size(); ++n) {
      const UserSet t = closed.collusion_closure[n];
      for (int u = 1; u <= num_users; ++u) {
        const UserSet tu = t | UserSet::Single(u);
        const uint64_t key = (uint64_t{s.bits()} << 32) | tu.bits();
        if (!seen.insert(key).second) continue;
        TripleResult r;
        r.security_index = m;
        r.collusion_index = n;
        r.user = u;
        r.security_set = s;
        r.collusion_set = t;
        out.push_back(r);
      }
    }
  }
  return out;
}

std::string Context(UserSet s, UserSet t, int u) {
  return "S=" + s.ToString() + " T=" + t.ToString() + " u=" + std::to_string(u);
}

MiReport Security(const SchemeSpec& spec, const ClosedSystems& closed,
                  bool parallel) {
  const Blocks b = BuildBlocks(spec);
  const UserSet all = UserSet::All(spec.num_users);
  MiReport report;
  report.entries = DistinctTriples(closed, spec.num_users);
  const long count = static_cast<long>(report.entries.size());
#pragma omp parallel for if (parallel) schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    TripleResult& e = report.entries[i];
    const UserSet self = UserSet::Single(e.user);
    Refs cond{&b.sum};
    for (int k : (e.collusion_set | self).Ids()) {
      cond.push_back(&b.w[k - 1]);
      cond.push_back(&b.z[k - 1]);
    }
    const long mi = Mi(b, Pick(b.w, e.security_set), Pick(b.x, all - self),
                       cond);
    e.value = Rational(mi);
    e.passed = mi == 0;
  }
  return report;
}

}  // namespace

std::map<std::string, LinearVariable> ProtocolVariables(
    const SchemeSpec& spec) {
  Blocks b = BuildBlocks(spec);
  std::map<std::string, LinearVariable> vars;
  for (int k = 1; k <= spec.num_users; ++k) {
    const std::string id = std::to_string(k);
    vars["W_" + id] = {"W_" + id, std::move(b.w[k - 1])};
    vars["Z_" + id] = {"Z_" + id, std::move(b.z[k - 1])};
    vars["X_" + id] = {"X_" + id, std::move(b.x[k - 1])};
  }
  vars["SUM"] = {"SUM", std::move(b.sum)};
  return vars;
}

Rational Entropy(const std::vector<LinearVariable>& vars) {
  if (vars.empty()) return Rational(0);
  const size_t cols = vars.front().coeffs.cols();
  const uint64_t q = vars.front().coeffs.modulus();
  std::vector<FqMatrix> parts;
  for (const LinearVariable& v : vars) {
    if (v.coeffs.cols() != cols || v.coeffs.modulus() != q) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "variable " + v.label + " lives on a different seed space");
    }
    parts.push_back(v.coeffs);
  }
  return Rational(
      static_cast<long long>(gf::Rank(FqMatrix::VStack(parts, cols, q))));
}

Rational ConditionalMi(const std::vector<LinearVariable>& a,
                       const std::vector<LinearVariable>& b,
                       const std::vector<LinearVariable>& c) {
  auto join = [](std::vector<LinearVariable> x,
                 const std::vector<LinearVariable>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  const auto ac = join(a, c);
  const auto bc = join(b, c);
  return Entropy(ac) + Entropy(bc) - Entropy(join(ac, b)) - Entropy(c);
}

std::vector<bool> VerifyCorrectness(const SchemeSpec& spec) {
  const Blocks b = BuildBlocks(spec);
  std::vector<bool> ok;
  for (int u = 1; u <= spec.num_users; ++u) {
    Refs view = Pick(b.x, UserSet::All(spec.num_users) - UserSet::Single(u));
    view.push_back(&b.w[u - 1]);
    view.push_back(&b.z[u - 1]);
    ok.push_back(CondEntropy(b, {&b.sum}, view) == 0);
  }
  return ok;
}

MiReport VerifySecurity(const SchemeSpec& spec, const ClosedSystems& closed) {
  return Security(spec, closed, true);
}

MiReport VerifySecuritySerial(const SchemeSpec& spec,
                              const ClosedSystems& closed) {
  return Security(spec, closed, false);
}

MiReport VerifyKeyIndependence(const SchemeSpec& spec,
                               const ClosedSystems& closed) {
  const Blocks b = BuildBlocks(spec);
  MiReport report;
  report.entries = DistinctTriples(closed, spec.num_users);
  if (spec.case_tag == CaseTag::kClassicalFull) {
    // K zero-sum keys span only K - 1 blocks.
    std::erase_if(report.entries, [&](const TripleResult& e) {
      return (e.security_set | e.collusion_set | UserSet::Single(e.user)) ==
             UserSet::All(spec.num_users);
    });
  }
  const long count = static_cast<long>(report.entries.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    TripleResult& e = report.entries[i];
    const UserSet known = e.collusion_set | UserSet::Single(e.user);
    const UserSet hidden = e.security_set - known;
    const long h = CondEntropy(b, Pick(b.z, hidden), Pick(b.z, known));
    e.value = Rational(h);
    e.passed = h == static_cast<long>(hidden.size() * spec.block_length);
  }
  return report;
}

ConverseReport VerifyConverseLemmas(const SchemeSpec& spec,
                                    const ClosedSystems& closed,
                                    const DerivedSets& derived) {
  const Blocks b = BuildBlocks(spec);
  const int k_users = spec.num_users;
  const UserSet all = UserSet::All(k_users);
  const UserSet bar = derived.total_security_set;
  const Rational l(static_cast<long long>(spec.block_length));
  ConverseReport report;
  auto add = [&](std::vector<LemmaCheck>& out, std::string lemma,
                 std::string context, long lhs, const Rational& rhs) {
    const Rational value(lhs);
    out.push_back({std::move(lemma), std::move(context), value, rhs,
                   value >= rhs});
  };
  auto lemma4_lhs = [&](UserSet u_set, UserSet tu) {
    return CondEntropy(b, Pick(b.z, u_set & bar), Pick(b.z, tu - bar));
  };

  for (int u = 1; u <= k_users; ++u) {
    Refs others;
    for (int k : (all - UserSet::Single(u)).Ids()) {
      others.push_back(&b.w[k - 1]);
      others.push_back(&b.z[k - 1]);
    }
    add(report.checks, "lemma1", "u=" + std::to_string(u),
        CondEntropy(b, {&b.x[u - 1]}, others), l);
  }

  for (const TripleResult& t : DistinctTriples(closed, k_users)) {
    const UserSet tu = t.collusion_set | UserSet::Single(t.user);
    const UserSet s = t.security_set;
    const UserSet u_set = s | tu;
    if (!(s & tu).empty() || u_set.size() > k_users - 1) continue;
    const std::string ctx = Context(s, t.collusion_set, t.user);
    if (!s.empty()) {
      add(report.checks, "lemma2", ctx,
          CondEntropy(b, Pick(b.z, all - u_set), Pick(b.z, tu)), l);
      if (u_set.size() == k_users - 1) {
        add(report.checks, "corollary1", ctx,
            CondEntropy(b, Pick(b.z, all - u_set), Pick(b.z, tu)), l);
      }
    }
    add(report.checks, "lemma4", ctx, lemma4_lhs(u_set, tu),
        l * (u_set & bar).size());
  }

  for (const Triple& t : derived.max_triples) {
    if (t.union_set.size() > k_users - 1) continue;
    const UserSet tu = t.collusion_set | UserSet::Single(t.user);
    add(report.lemma4_at_max, "lemma4",
        Context(t.security_set - tu, t.collusion_set, t.user),
        lemma4_lhs(t.union_set, tu), l * t.a_set.size());
  }
  return report;
}

}  // namespace linsec
}  // namespace dsa
