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


#include "dsa/pipeline.h"

#include <chrono>
#include <string>
#include <vector>

#include "dsa/linsec.h"
#include "dsa/sim.h"

namespace dsa::pipeline {
namespace {

using io::Json;

Json Ids(UserSet s) { return s.Ids(); }

Json TripleJson(UserSet s, UserSet t, int u) {
  return {{"S", Ids(s)}, {"T", Ids(t)}, {"u", u}};
}

Json MiJson(const MiReport& report, const char* value_name) {
  Json entries = Json::array();
  size_t failed = 0;
  for (const TripleResult& e : report.entries) {
    Json row = TripleJson(e.security_set, e.collusion_set, e.user);
    row[value_name] = lp::ToString(e.value);
    row["passed"] = e.passed;
    if (!e.passed) ++failed;
    entries.push_back(std::move(row));
  }
  return {{"triples", report.entries.size()},
          {"failed", failed},
          {"passed", failed == 0},
          {"entries", std::move(entries)}};
}

Json LemmaJson(const LemmaCheck& c) {
  return {{"lemma", c.lemma},
          {"context", c.context},
          {"lhs", lp::ToString(c.lhs)},
          {"rhs", lp::ToString(c.rhs)},
          {"holds", c.holds}};
}

}  // namespace

Analysis Analyze(const ProblemInstance& raw, size_t closure_cap) {
  Analysis a;
  a.instance = instance::Validate(raw);
  a.closed = instance::CloseDownward(a.instance, closure_cap);
  a.derived = derived::Derive(a.closed, a.instance.num_users);
  if (a.derived.case_tag == CaseTag::kFractional) {
    a.lp = lp::BuildLp(a.derived, a.instance.num_users);
    a.solution = lp::SolveExact(*a.lp);
  }
  a.rates = scheme::OptimalRates(a.derived, a.instance.num_users,
                                 a.SolutionOrNull());
  return a;
}

Json RatesReport(const Analysis& a) {
  const DerivedSets& d = a.derived;
  Json j;
  j["instance"] = io::InstanceToJson(a.instance);
  j["closure_sizes"] = {{"security", a.closed.security_closure.size()},
                        {"collusion", a.closed.collusion_closure.size()}};
  j["implicit_set"] = Ids(d.implicit_set);
  j["total_security_set"] = Ids(d.total_security_set);
  j["a_star"] = d.a_star;
  j["q_set"] = Ids(d.q_set);
  j["case"] = std::string(CaseTagName(d.case_tag));
  Json triples = Json::array();
  for (const Triple& t : d.max_triples) {
    Json row = TripleJson(t.security_set, t.collusion_set, t.user);
    row["union"] = Ids(t.union_set);
    triples.push_back(std::move(row));
  }
  j["max_triples"] = std::move(triples);
  if (a.solution) {
    Json b = Json::object();
    for (const auto& [k, v] : a.solution->assignment) {
      b[std::to_string(k)] = lp::ToString(v);
    }
    Json upper = Json::array();
    for (UserSet s : a.lp->upper_sets) upper.push_back(Ids(s));
    Json lower = Json::array();
    for (UserSet s : a.lp->lower_sets) lower.push_back(Ids(s));
    j["lp"] = {{"variables", Ids(a.lp->variables)},
               {"upper", std::move(upper)},
               {"lower", std::move(lower)},
               {"b", std::move(b)},
               {"b_star", lp::ToString(a.solution->optimum)},
               {"lemma5", lp::CheckLemma5(*a.solution)}};
  } else {
    j["lp"] = nullptr;
  }
  j["rates"] = {{"R_X", lp::ToString(a.rates.communication)},
                {"R_ZSigma", lp::ToString(a.rates.source_key)}};
  return j;
}

Json VerificationReport(const SchemeSpec& spec, const Analysis& a) {
  Json j;
  const std::vector<std::string> post = scheme::CheckPostconditions(spec);
  j["zero_sum"] = scheme::IsZeroSum(spec);
  j["postconditions"] = {{"passed", post.empty()}, {"violations", post}};
  j["rates_match_theorem"] = spec.rates == a.rates;

  const std::vector<bool> correct = linsec::VerifyCorrectness(spec);
  bool all_correct = true;
  for (bool ok : correct) all_correct = all_correct && ok;
  j["correctness"] = {{"passed", all_correct}, {"per_user", correct}};

  const MiReport security = linsec::VerifySecurity(spec, a.closed);
  j["security"] = MiJson(security, "mi");
  const MiReport keys = linsec::VerifyKeyIndependence(spec, a.closed);
  j["key_independence"] = MiJson(keys, "conditional_entropy");

  const ConverseReport converse =
      linsec::VerifyConverseLemmas(spec, a.closed, a.derived);
  Json violations = Json::array();
  for (const LemmaCheck& c : converse.checks) {
    if (!c.holds) violations.push_back(LemmaJson(c));
  }
  Json at_max = Json::array();
  for (const LemmaCheck& c : converse.lemma4_at_max) {
    at_max.push_back(LemmaJson(c));
  }
  j["converse"] = {{"passed", converse.AllHold()},
                   {"checks", converse.checks.size()},
                   {"violations", std::move(violations)},
                   {"lemma4_at_max", std::move(at_max)},
                   {"lemma4_tight_at_max", converse.Lemma4TightAtMax()}};

  j["passed"] = post.empty() && spec.rates == a.rates && all_correct &&
                security.AllPassed() && keys.AllPassed() &&
                converse.AllHold();
  return j;
}

Json SimulationReport(const SchemeSpec& spec, uint64_t seed, int rounds) {
  Json j;
  j["rounds"] = rounds;
  j["seed"] = seed;
  uint64_t decodes = 0;
  uint64_t correct = 0;
  uint64_t agreeing_rounds = 0;
  for (int r = 0; r < rounds; ++r) {
    const Transcript t = sim::RunRound(spec, seed + static_cast<uint64_t>(r));
    const std::vector<uint64_t> truth = sim::TrueSum(t);
    bool agree = true;
    for (int u = 1; u <= spec.num_users; ++u) {
      const auto row = t.decoded.row(u - 1);
      const bool ok = std::vector<uint64_t>(row.begin(), row.end()) == truth;
      ++decodes;
      if (ok) ++correct;
      agree = agree && ok;
    }
    if (agree) ++agreeing_rounds;
    if (r == 0) {
      j["first_round"] = {{"rng_seed", t.rng_seed},
                          {"inputs", io::MatrixToJson(t.inputs)},
                          {"source", io::MatrixToJson(t.source)},
                          {"keys", io::MatrixToJson(t.keys)},
                          {"messages", io::MatrixToJson(t.messages)},
                          {"decoded", io::MatrixToJson(t.decoded)},
                          {"sum", truth}};
    }
  }
  j["decodes"] = decodes;
  j["correct_decodes"] = correct;
  j["agreeing_rounds"] = agreeing_rounds;
  j["passed"] = correct == decodes;
  return j;
}

SchemeSpec SynthesizeFor(const Analysis& a, const Options& options) {
  const uint64_t q =
      scheme::ChooseField(a.derived, options.q, options.fractional_field);
  return scheme::Synthesize(a.derived, a.instance.num_users,
                            a.SolutionOrNull(), q, options.seed,
                            options.max_attempts);
}

Result RunPipeline(const Analysis& a, const Options& options) {
  SchemeSpec spec = SynthesizeFor(a, options);
  if (options.break_zero_sum) BreakZeroSum(spec);
  Result result;
  result.report["rates"] = RatesReport(a);
  result.report["field"] = spec.q;
  result.report["seed"] = options.seed;
  result.report["scheme"] = io::SchemeToJson(spec);
  result.report["verification"] = VerificationReport(spec, a);
  result.report["simulation"] = SimulationReport(spec, options.seed,
                                                 options.rounds);
  result.passed = result.report["verification"]["passed"].get<bool>() &&
                  result.report["simulation"]["passed"].get<bool>();
  result.report["passed"] = result.passed;
  return result;
}

void BreakZeroSum(SchemeSpec& spec) {
  gf::FqMatrix& z = spec.keys[0].key_map;
  z.set(0, 0, gf::AddMod(z.at(0, 0), 1, spec.q));
}

void ZeroKeyMap(SchemeSpec& spec, int user) {
  UserKey& key = spec.keys[user - 1];
  key.key_map = gf::FqMatrix(key.key_map.rows(), key.key_map.cols(), spec.q);
}

}  // namespace dsa::pipeline
