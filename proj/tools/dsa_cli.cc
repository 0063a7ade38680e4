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


// dsa_cli: key rates, scheme synthesis, simulation and verification for
// decentralized secure aggregation instances.
//
// Exit codes: 0 pass, 2 input error, 3 verification failure.

#include <cstdint>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dsa/error.h"
#include "dsa/io.h"
#include "dsa/linsec.h"
#include "dsa/lp.h"
#include "dsa/pipeline.h"
#include "dsa/scheme.h"

namespace {

using dsa::io::Json;

constexpr int kExitPass = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

struct RunConfig {
  std::string command;
  std::string instance_path;
  std::string scheme_path;
  std::optional<uint64_t> q;
  uint64_t seed = 0;
  int rounds = 1000;
  std::string out_path;
  bool json_only = false;
  bool dump_lp = false;
  bool break_zero_sum = false;
  size_t closure_cap = dsa::kDefaultClosureCap;
  dsa::lp::OracleCaps oracle_caps;
  int max_attempts = dsa::kDefaultMaxAttempts;
};

template <typename T>
void EnvOverride(const char* name, T& value) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    value = static_cast<T>(std::stoull(raw));
  } catch (const std::exception&) {
    throw dsa::Error(dsa::ErrorCode::kParseError,
                     std::string(name) + " must be a non-negative integer");
  }
}

void Row(const std::string& key, const std::string& value) {
  std::cout << "  " << std::left << std::setw(22) << key << value << "\n";
}

void PrintSet(const std::string& key, const Json& ids) {
  std::string s = "{";
  for (size_t i = 0; i < ids.size(); ++i) {
    s += (i ? "," : "") + std::to_string(ids[i].get<int>());
  }
  Row(key, s + "}");
}

void PrintRates(const Json& r) {
  std::cout << "rates\n";
  PrintSet("S_I", r["implicit_set"]);
  PrintSet("S_bar", r["total_security_set"]);
  Row("a*", std::to_string(r["a_star"].get<int>()));
  PrintSet("Q", r["q_set"]);
  Row("case", r["case"].get<std::string>());
  if (!r["lp"].is_null()) {
    for (const auto& [k, v] : r["lp"]["b"].items()) {
      Row("b_" + k, v.get<std::string>());
    }
    Row("b*", r["lp"]["b_star"].get<std::string>());
  }
  Row("R_X", r["rates"]["R_X"].get<std::string>());
  Row("R_ZSigma", r["rates"]["R_ZSigma"].get<std::string>());
}

void PrintVerification(const Json& v) {
  auto mark = [](bool b) { return std::string(b ? "pass" : "FAIL"); };
  std::cout << "verification\n";
  Row("postconditions", mark(v["postconditions"]["passed"].get<bool>()));
  Row("zero-sum", mark(v["zero_sum"].get<bool>()));
  Row("correctness", mark(v["correctness"]["passed"].get<bool>()));
  Row("security",
      mark(v["security"]["passed"].get<bool>()) + " (" +
          std::to_string(v["security"]["triples"].get<size_t>()) + " triples)");
  Row("key independence", mark(v["key_independence"]["passed"].get<bool>()));
  Row("converse lemmas", mark(v["converse"]["passed"].get<bool>()));
  Row("overall", mark(v["passed"].get<bool>()));
}

void PrintSimulation(const Json& s) {
  std::cout << "simulation\n";
  Row("rounds", std::to_string(s["rounds"].get<int>()));
  Row("correct decodes", std::to_string(s["correct_decodes"].get<uint64_t>()) +
                             " / " +
                             std::to_string(s["decodes"].get<uint64_t>()));
}

void Emit(const RunConfig& config, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (!config.out_path.empty()) {
    dsa::io::WriteFile(config.out_path, text);
  } else {
    std::cout << text;
  }
}

dsa::pipeline::Options OptionsFrom(const RunConfig& config) {
  dsa::pipeline::Options o;
  o.q = config.q;
  o.seed = config.seed;
  o.rounds = config.rounds;
  o.max_attempts = config.max_attempts;
  o.break_zero_sum = config.break_zero_sum;
  return o;
}

dsa::SchemeSpec SchemeFor(const RunConfig& config,
                          const dsa::pipeline::Analysis& analysis) {
  if (!config.scheme_path.empty()) {
    return dsa::io::LoadScheme(config.scheme_path);
  }
  return dsa::pipeline::SynthesizeFor(analysis, OptionsFrom(config));
}

int CmdRates(const RunConfig& config, const dsa::pipeline::Analysis& a) {
  Json report = dsa::pipeline::RatesReport(a);
  if (!config.json_only) PrintRates(report);
  if (config.dump_lp && a.lp) {
    if (!config.json_only) std::cout << dsa::lp::DumpLp(*a.lp);
    report["lp_text"] = dsa::lp::DumpLp(*a.lp);
  }
  Emit(config, report);
  return kExitPass;
}

int CmdSynthesize(const RunConfig& config, const dsa::pipeline::Analysis& a) {
  const dsa::SchemeSpec spec =
      dsa::pipeline::SynthesizeFor(a, OptionsFrom(config));
  if (!config.json_only) {
    std::cout << "scheme\n";
    Row("q", std::to_string(spec.q));
    Row("L", std::to_string(spec.block_length));
    Row("seed_length", std::to_string(spec.seed_length));
    Row("R_ZSigma", dsa::lp::ToString(spec.rates.source_key));
  }
  Emit(config, dsa::io::SchemeToJson(spec));
  return kExitPass;
}

int CmdSimulate(const RunConfig& config, const dsa::pipeline::Analysis& a) {
  dsa::SchemeSpec spec = SchemeFor(config, a);
  if (config.break_zero_sum) dsa::pipeline::BreakZeroSum(spec);
  const Json report =
      dsa::pipeline::SimulationReport(spec, config.seed, config.rounds);
  if (!config.json_only) PrintSimulation(report);
  Emit(config, report);
  return report["passed"].get<bool>() ? kExitPass : kExitVerification;
}

int CmdVerify(const RunConfig& config, const dsa::pipeline::Analysis& a) {
  dsa::SchemeSpec spec = SchemeFor(config, a);
  if (config.break_zero_sum) dsa::pipeline::BreakZeroSum(spec);
  const auto start = std::chrono::steady_clock::now();
  Json report = dsa::pipeline::VerificationReport(spec, a);
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;
  report["timing_ms"] = elapsed.count();
  if (!config.json_only) PrintVerification(report);
  Emit(config, report);
  return report["passed"].get<bool>() ? kExitPass : kExitVerification;
}

int CmdOracleCheck(const RunConfig& config, const dsa::pipeline::Analysis& a) {
  Json report;
  bool ok = true;
  if (a.lp) {
    const dsa::lp::LpSolution oracle =
        dsa::lp::SolveOracle(*a.lp, config.oracle_caps);
    const bool same = oracle.optimum == a.solution->optimum &&
                      oracle.assignment == a.solution->assignment;
    report["lp"] = {{"exact", dsa::lp::ToString(a.solution->optimum)},
                    {"oracle", dsa::lp::ToString(oracle.optimum)},
                    {"same_assignment", same}};
    ok = ok && same;
  } else {
    report["lp"] = nullptr;
  }

  const dsa::SchemeSpec spec = SchemeFor(config, a);
  try {
    const dsa::linsec::BruteForceOracle brute(spec);
    const dsa::MiReport rank = dsa::linsec::VerifySecurity(spec, a.closed);
    size_t mismatches = 0;
    const int k_users = spec.num_users;
    for (const dsa::TripleResult& e : rank.entries) {
      std::vector<std::string> w_s, x_rest, cond{"SUM"};
      for (int k : e.security_set.Ids()) w_s.push_back("W_" + std::to_string(k));
      for (int k = 1; k <= k_users; ++k) {
        if (k != e.user) x_rest.push_back("X_" + std::to_string(k));
      }
      for (int k : (e.collusion_set | dsa::UserSet::Single(e.user)).Ids()) {
        cond.push_back("W_" + std::to_string(k));
        cond.push_back("Z_" + std::to_string(k));
      }
      if (brute.Mi(w_s, x_rest, cond) != e.value) ++mismatches;
    }
    report["mi"] = {{"triples", rank.entries.size()},
                    {"mismatches", mismatches}};
    ok = ok && mismatches == 0;
  } catch (const dsa::Error& e) {
    if (e.code() != dsa::ErrorCode::kTooLarge) throw;
    report["mi"] = {{"skipped", e.what()}};
  }
  report["passed"] = ok;
  if (!config.json_only) {
    std::cout << "oracle-check\n";
    Row("result", ok ? "pass" : "FAIL");
  }
  Emit(config, report);
  return ok ? kExitPass : kExitVerification;
}

int CmdPipeline(const RunConfig& config, const dsa::pipeline::Analysis& a) {
  const dsa::pipeline::Result result =
      dsa::pipeline::RunPipeline(a, OptionsFrom(config));
  if (!config.json_only) {
    PrintRates(result.report["rates"]);
    PrintVerification(result.report["verification"]);
    PrintSimulation(result.report["simulation"]);
  }
  Emit(config, result.report);
  return result.passed ? kExitPass : kExitVerification;
}

int Dispatch(const RunConfig& config) {
  const dsa::pipeline::Analysis analysis = dsa::pipeline::Analyze(
      dsa::io::LoadInstance(config.instance_path), config.closure_cap);
  if (config.command == "rates") return CmdRates(config, analysis);
  if (config.command == "synthesize") return CmdSynthesize(config, analysis);
  if (config.command == "simulate") return CmdSimulate(config, analysis);
  if (config.command == "verify") return CmdVerify(config, analysis);
  if (config.command == "oracle-check") return CmdOracleCheck(config, analysis);
  return CmdPipeline(config, analysis);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized secure aggregation key rates"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", config.instance_path, "Instance JSON file")
        ->required();
    sub->add_option("--q", config.q, "Prime field size override");
    sub->add_option("--seed", config.seed, "RNG seed");
    sub->add_option("--out", config.out_path, "Write the JSON report here");
    sub->add_flag("--json-only", config.json_only, "Suppress tables");
  };
  CLI::App* rates = app.add_subcommand("rates", "Derived sets, LP and rates");
  add_common(rates);
  rates->add_flag("--dump-lp", config.dump_lp, "Print the LP in CPLEX format");
  CLI::App* synth = app.add_subcommand("synthesize", "Synthesize a scheme");
  add_common(synth);
  CLI::App* simulate = app.add_subcommand("simulate", "Run protocol rounds");
  add_common(simulate);
  simulate->add_option("--rounds", config.rounds, "Number of rounds");
  simulate->add_option("--scheme", config.scheme_path, "Scheme JSON file");
  simulate->add_flag("--break-zero-sum", config.break_zero_sum,
                     "Perturb one key map (test hook)");
  CLI::App* verify = app.add_subcommand("verify", "Verify a scheme");
  add_common(verify);
  verify->add_option("--scheme", config.scheme_path, "Scheme JSON file");
  verify->add_flag("--break-zero-sum", config.break_zero_sum,
                   "Perturb one key map (test hook)");
  CLI::App* oracle =
      app.add_subcommand("oracle-check", "Compare against brute-force oracles");
  add_common(oracle);
  oracle->add_option("--scheme", config.scheme_path, "Scheme JSON file");
  CLI::App* pipe = app.add_subcommand("pipeline", "Run every stage");
  add_common(pipe);
  pipe->add_option("--rounds", config.rounds, "Number of rounds");
  pipe->add_flag("--break-zero-sum", config.break_zero_sum,
                 "Perturb one key map (test hook)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    EnvOverride("DSA_CLOSURE_CAP", config.closure_cap);
    EnvOverride("DSA_ORACLE_CAP", config.oracle_caps.max_combinations);
    EnvOverride("DSA_MAX_ATTEMPTS", config.max_attempts);
    return Dispatch(config);
  } catch (const dsa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == dsa::ErrorCode::kInternalInconsistency ? kExitInternal
                                                              : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
