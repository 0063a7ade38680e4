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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (capped at 1).

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsa/derived.h"
#include "dsa/error.h"
#include "dsa/gf.h"
#include "dsa/instance.h"
#include "dsa/io.h"
#include "dsa/linsec.h"
#include "dsa/lp.h"
#include "dsa/pipeline.h"
#include "dsa/scheme.h"
#include "dsa/sim.h"
#include "test_util.h"

namespace dsa {
namespace {

using lp::Rational;
using Labels = std::vector<std::string>;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      if (!passed) detail << "; ";
      detail << what;
      passed = false;
    }
  }
};

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string Instance(const std::string& name) {
  return std::string(DSA_SOURCE_DIR) + "/instances/" + name + ".json";
}

void Example1(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  const pipeline::Analysis a =
      pipeline::Analyze(io::LoadInstance(Instance("example1")));
  const DerivedSets& d = a.derived;
  out.Require(d.implicit_set == UserSet{3, 4},
              "S_I = " + d.implicit_set.ToString());
  out.Require(d.total_security_set == UserSet{1, 2, 3, 4},
              "S_bar = " + d.total_security_set.ToString());
  out.Require(d.a_star == 3, "a* = " + std::to_string(d.a_star));
  out.Require(d.q_set == UserSet{1, 2, 3, 4},
              "Q = " + d.q_set.ToString() + ", expected {1,2,3,4}");
  out.Require(d.case_tag == CaseTag::kSubcaseOne,
              "case " + std::string(CaseTagName(d.case_tag)));
  out.Require(a.rates == Rates{Rational(1), Rational(3)},
              "rates (" + lp::ToString(a.rates.communication) + ", " +
                  lp::ToString(a.rates.source_key) + ")");
  const double t = SecondsSince(start);
  out.Require(t < 1.0, "took " + std::to_string(t) + " s");
}

void Example2(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  const pipeline::Analysis a =
      pipeline::Analyze(io::LoadInstance(Instance("example2")));
  const DerivedSets& d = a.derived;
  out.Require(d.implicit_set.empty(), "S_I = " + d.implicit_set.ToString());
  out.Require(d.total_security_set == UserSet{1, 2},
              "S_bar = " + d.total_security_set.ToString());
  out.Require(d.a_star == 2, "a* = " + std::to_string(d.a_star));
  out.Require(d.q_set.size() == 6, "Q = " + d.q_set.ToString());
  out.Require(d.case_tag == CaseTag::kFractional,
              "case " + std::string(CaseTagName(d.case_tag)));
  if (!a.solution) {
    out.Require(false, "no LP solution");
    return;
  }
  out.Require(a.solution->optimum == 1,
              "b* = " + lp::ToString(a.solution->optimum));
  for (int k = 3; k <= 6; ++k) {
    out.Require(a.solution->assignment.at(k) == Rational(1, 2),
                "b_" + std::to_string(k) + " = " +
                    lp::ToString(a.solution->assignment.at(k)));
  }
  out.Require(a.rates.source_key == 3,
              "R_ZSigma = " + lp::ToString(a.rates.source_key));

  pipeline::Options o;
  o.q = 5;
  const SchemeSpec s = pipeline::SynthesizeFor(a, o);
  out.Require(s.fractional && s.fractional->q_bar == 2, "q_bar != 2");
  out.Require(s.seed_length == 6,
              "seed_length = " + std::to_string(s.seed_length));
  out.Require(scheme::IsZeroSum(s), "zero-sum violated");
  out.Require(scheme::CheckPostconditions(s).empty(), "rank postconditions");
  for (bool ok : linsec::VerifyCorrectness(s)) out.Require(ok, "correctness");
  out.Require(linsec::VerifySecurity(s, a.closed).AllPassed(), "security");
  const double t = SecondsSince(start);
  out.Require(t < 5.0, "took " + std::to_string(t) + " s");
}

void Lemma5(Outcome& out) {
  std::mt19937_64 rng(2026);
  int holds = 0;
  for (int i = 0; i < 50; ++i) {
    const ProblemInstance inst = testing::RandomFractionalInstance(rng, 4, 8);
    const DerivedSets d =
        derived::Derive(instance::CloseDownward(inst), inst.num_users);
    const lp::RationalLp l = lp::BuildLp(d, inst.num_users);
    const lp::LpSolution s = lp::SolveExact(l);
    if (lp::CheckLemma5(s)) {
      ++holds;
    } else {
      out.Require(false, "instance " + std::to_string(i) + ": b* = " +
                             lp::ToString(s.optimum));
    }
  }
  out.detail << (out.passed ? "" : "; ") << holds << "/50 instances";
}

void OracleEquivalence(Outcome& out) {
  std::mt19937_64 rng(4);
  int equal = 0;
  for (int i = 0; i < 50; ++i) {
    const ProblemInstance inst =
        testing::RandomFractionalInstance(rng, 4, 8, 8);
    const DerivedSets d =
        derived::Derive(instance::CloseDownward(inst), inst.num_users);
    const lp::RationalLp l = lp::BuildLp(d, inst.num_users);
    try {
      const Rational exact = lp::SolveExact(l).optimum;
      const Rational oracle = lp::SolveOracle(l).optimum;
      if (exact == oracle) {
        ++equal;
      } else {
        out.Require(false, "instance " + std::to_string(i) + ": " +
                               lp::ToString(exact) + " vs " +
                               lp::ToString(oracle));
      }
    } catch (const Error& e) {
      out.Require(false, "instance " + std::to_string(i) + ": " + e.what());
    }
  }
  out.detail << (out.passed ? "" : "; ") << equal << "/50 equal";
}

std::string L(const char* prefix, int k) {
  return prefix + std::to_string(k);
}

// Brute force against rank on every security triple and 20 random picks.
bool CompareOnScheme(const SchemeSpec& s, const ClosedSystems& closed,
                     std::mt19937_64& rng, Outcome& out, int& comparisons) {
  const linsec::BruteForceOracle oracle(s);
  const auto vars = linsec::ProtocolVariables(s);
  auto pick = [&](const Labels& labels) {
    std::vector<LinearVariable> v;
    for (const std::string& l : labels) v.push_back(vars.at(l));
    return v;
  };
  bool ok = true;
  for (const TripleResult& t : linsec::VerifySecurity(s, closed).entries) {
    Labels a, b, c = {"SUM", L("W_", t.user), L("Z_", t.user)};
    for (int k : t.security_set.Ids()) a.push_back(L("W_", k));
    for (int k = 1; k <= s.num_users; ++k) {
      if (k != t.user) b.push_back(L("X_", k));
    }
    for (int k : t.collusion_set.Ids()) {
      c.push_back(L("W_", k));
      c.push_back(L("Z_", k));
    }
    const Rational brute = oracle.Mi(a, b, c);
    ++comparisons;
    ok = ok && brute == t.value &&
         brute == linsec::ConditionalMi(pick(a), pick(b), pick(c));
  }
  Labels all;
  for (const auto& [label, _] : vars) all.push_back(label);
  auto draw = [&] {
    Labels l;
    for (const std::string& x : all) {
      if (rng() % 3 == 0) l.push_back(x);
    }
    return l;
  };
  for (int i = 0; i < 20; ++i) {
    const Labels a = draw(), b = draw(), c = draw();
    ++comparisons;
    ok = ok && oracle.Mi(a, b, c) ==
                   linsec::ConditionalMi(pick(a), pick(b), pick(c));
  }
  if (!ok) out.Require(false, "mismatch on q=" + std::to_string(s.q) +
                                  " K=" + std::to_string(s.num_users));
  return ok;
}

void BruteForceEquivalence(Outcome& out) {
  std::mt19937_64 rng(5);
  int schemes = 0;
  int comparisons = 0;
  auto fits = [](const SchemeSpec& s) {
    return s.num_users * s.block_length + s.seed_length <= 12;
  };
  for (int k : {3, 4}) {
    const ClosedSystems closed =
        instance::CloseDownward(testing::ClassicalInstance(k));
    for (uint64_t q : {2, 3}) {
      for (size_t l : {1, 2}) {
        const SchemeSpec s = scheme::SynthesizeClassical(k, q, l);
        if (!fits(s)) continue;
        CompareOnScheme(s, closed, rng, out, comparisons);
        ++schemes;
      }
    }
  }
  // Synthesized non-classical schemes, intact and with one key removed.
  for (int attempt = 0; attempt < 400 && schemes < 24; ++attempt) {
    const ProblemInstance inst = testing::RandomInstance(rng, 3, 4);
    const pipeline::Analysis a = pipeline::Analyze(inst);
    if (a.derived.case_tag == CaseTag::kClassicalFull) continue;
    const uint64_t q = attempt % 2 == 0 ? 3 : 2;
    std::optional<SchemeSpec> s;
    try {
      s = scheme::Synthesize(a.derived, inst.num_users, a.SolutionOrNull(), q,
                             attempt);
    } catch (const Error&) {
      continue;
    }
    if (!fits(*s)) continue;
    if (attempt % 3 == 0) {
      pipeline::ZeroKeyMap(*s, a.derived.total_security_set.Min());
    }
    CompareOnScheme(*s, a.closed, rng, out, comparisons);
    ++schemes;
  }
  out.Require(schemes >= 20, "only " + std::to_string(schemes) + " schemes");
  out.detail << (out.passed ? "" : "; ") << schemes << " schemes, "
             << comparisons << " comparisons";
}

void CorrectnessUniversality(Outcome& out) {
  long decodes = 0;
  long correct = 0;
  for (const testing::Golden& g : testing::GoldenInstances()) {
    const pipeline::Analysis a = pipeline::Analyze(g.instance);
    pipeline::Options o;
    o.q = g.q;
    const SchemeSpec s = pipeline::SynthesizeFor(a, o);
    for (uint64_t round = 0; round < 1000; ++round) {
      const Transcript t = sim::RunRound(s, round);
      std::vector<uint64_t> truth(s.block_length, 0);
      for (int k = 0; k < s.num_users; ++k) {
        for (size_t j = 0; j < s.block_length; ++j) {
          truth[j] = gf::AddMod(truth[j], t.inputs.at(k, j), s.q);
        }
      }
      for (int u = 1; u <= s.num_users; ++u) {
        ++decodes;
        correct += sim::DecodeAtUser(u, s, t) == truth;
      }
    }
  }
  out.Require(correct == decodes, "decode failures");
  out.detail << (out.passed ? "" : "; ") << correct << "/" << decodes
             << " decodes";
}

void ClassicalBenchmark(Outcome& out) {
  for (int k = 3; k <= 8; ++k) {
    const pipeline::Analysis a =
        pipeline::Analyze(testing::ClassicalInstance(k));
    const std::string tag = "K=" + std::to_string(k);
    out.Require(a.derived.a_star == k, tag + ": a* != K");
    out.Require(a.rates.source_key == k - 1,
                tag + ": R_ZSigma = " + lp::ToString(a.rates.source_key));
    const SchemeSpec s = pipeline::SynthesizeFor(a, pipeline::Options{});
    out.Require(linsec::VerifySecurity(s, a.closed).AllPassed(),
                tag + ": security");
    out.Require(pipeline::VerificationReport(s, a)["passed"].get<bool>(),
                tag + ": verification report");
  }
}

void ConverseConformance(Outcome& out) {
  for (const testing::Golden& g : testing::GoldenInstances()) {
    const pipeline::Analysis a = pipeline::Analyze(g.instance);
    pipeline::Options o;
    o.q = g.q;
    const SchemeSpec s = pipeline::SynthesizeFor(a, o);
    const ConverseReport r =
        linsec::VerifyConverseLemmas(s, a.closed, a.derived);
    out.Require(r.AllHold(), g.name + ": inequality violated");
    if (a.derived.case_tag == CaseTag::kSubcaseOne) {
      out.Require(r.Lemma4TightAtMax(), g.name + ": Lemma 4 not tight");
    }
  }
}

void NegativePaths(Outcome& out) {
  for (const testing::Golden& g : testing::GoldenInstances()) {
    const pipeline::Analysis a = pipeline::Analyze(g.instance);
    pipeline::Options o;
    o.q = g.q;
    const SchemeSpec s = pipeline::SynthesizeFor(a, o);

    SchemeSpec broken = s;
    pipeline::BreakZeroSum(broken);
    bool all_correct = true;
    for (bool ok : linsec::VerifyCorrectness(broken)) all_correct &= ok;
    out.Require(!all_correct, g.name + ": broken zero-sum still decodes");

    UserSet protected_users;
    for (UserSet sm : a.closed.security_closure) protected_users |= sm;
    SchemeSpec open = s;
    pipeline::ZeroKeyMap(open, protected_users.Min());
    out.Require(!linsec::VerifySecurity(open, a.closed).AllPassed(),
                g.name + ": zeroed key still secure");
  }
}

}  // namespace
}  // namespace dsa

int main() {
  const std::vector<std::pair<std::string,
                              std::function<void(dsa::Outcome&)>>>
      criteria = {
          {"AC1 Example 1 reproduction", dsa::Example1},
          {"AC2 Example 2 reproduction", dsa::Example2},
          {"AC3 Lemma 5 identity", dsa::Lemma5},
          {"AC4 LP oracle equivalence", dsa::OracleEquivalence},
          {"AC5 rank vs enumeration MI", dsa::BruteForceEquivalence},
          {"AC6 correctness universality", dsa::CorrectnessUniversality},
          {"AC7 classical case", dsa::ClassicalBenchmark},
          {"AC8 converse lemmas", dsa::ConverseConformance},
          {"AC9 negative paths", dsa::NegativePaths},
      };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    dsa::Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(out);
    } catch (const std::exception& e) {
      out.Require(false, std::string("exception: ") + e.what());
    }
    const double t = dsa::SecondsSince(start);
    failed += !out.passed;
    std::cout << name.substr(0, 3) << (out.passed ? " PASS " : " FAIL ")
              << name.substr(4) << " (" << t << " s)";
    const std::string detail = out.detail.str();
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << std::endl;
  }
  std::cout << (9 - failed) << "/9 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
