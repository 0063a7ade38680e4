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


#include <cstdio>
#include <string>

#include "dsa/error.h"
#include "dsa/io.h"
#include "dsa/pipeline.h"
#include "dsa/scheme.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dsa {
namespace {

ErrorCode ParseCode(const std::string& text) {
  try {
    io::ParseInstance(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::kInternalInconsistency;
}

TEST(IoTest, ParseInstance) {
  const ProblemInstance inst = io::ParseInstance(
      R"({"K":5,"security":[[],[1],[2]],"collusion":[[],[2,5]]})");
  EXPECT_EQ(inst.num_users, 5);
  ASSERT_EQ(inst.security_generators.size(), 3u);
  EXPECT_TRUE(inst.security_generators[0].empty());
  EXPECT_EQ(inst.collusion_generators[1], (UserSet{2, 5}));
}

TEST(IoTest, InstanceRoundTrip) {
  for (const testing::Golden& g : testing::GoldenInstances()) {
    const std::string text = io::InstanceToJson(g.instance).dump();
    const ProblemInstance back = io::ParseInstance(text);
    EXPECT_EQ(back.num_users, g.instance.num_users);
    EXPECT_EQ(back.security_generators, g.instance.security_generators);
    EXPECT_EQ(back.collusion_generators, g.instance.collusion_generators);
  }
}

TEST(IoTest, ShippedInstancesMatchGoldens) {
  const std::string dir = DSA_SOURCE_DIR "/instances/";
  for (const testing::Golden& g : testing::GoldenInstances()) {
    const ProblemInstance inst = io::LoadInstance(dir + g.name + ".json");
    EXPECT_EQ(inst.num_users, g.instance.num_users) << g.name;
    EXPECT_EQ(inst.security_generators, g.instance.security_generators);
    EXPECT_EQ(inst.collusion_generators, g.instance.collusion_generators);
  }
}

TEST(IoTest, MalformedInstances) {
  EXPECT_EQ(ParseCode("{"), ErrorCode::kParseError);
  EXPECT_EQ(ParseCode("[]"), ErrorCode::kParseError);
  EXPECT_EQ(ParseCode(R"({"security":[],"collusion":[]})"),
            ErrorCode::kParseError);
  EXPECT_EQ(ParseCode(R"({"K":"5","security":[],"collusion":[]})"),
            ErrorCode::kParseError);
  EXPECT_EQ(ParseCode(R"({"K":5,"security":[1],"collusion":[]})"),
            ErrorCode::kParseError);
  EXPECT_EQ(ParseCode(R"({"K":5,"security":[[1.5]],"collusion":[]})"),
            ErrorCode::kParseError);
  EXPECT_EQ(ParseCode(R"({"K":5,"security":[[0]],"collusion":[]})"),
            ErrorCode::kInvalidSet);
  EXPECT_EQ(ParseCode(R"({"K":5,"security":[[32]],"collusion":[]})"),
            ErrorCode::kInvalidSet);
  try {
    io::LoadInstance("/nonexistent/instance.json");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
}

TEST(IoTest, SchemeRoundTrip) {
  for (const testing::Golden& g : testing::GoldenInstances()) {
    const pipeline::Analysis a = pipeline::Analyze(g.instance);
    const SchemeSpec s = scheme::Synthesize(
        a.derived, g.instance.num_users, a.SolutionOrNull(), g.q, 3);
    const io::Json j = io::SchemeToJson(s);
    EXPECT_EQ(io::SchemeFromJson(j), s) << g.name;
    EXPECT_EQ(io::SchemeFromJson(io::Json::parse(j.dump())), s);
  }
  const SchemeSpec reference = testing::Example2ReferenceScheme();
  EXPECT_EQ(io::SchemeFromJson(io::SchemeToJson(reference)), reference);
}

TEST(IoTest, SchemeFieldOrder) {
  const io::Json j = io::SchemeToJson(testing::Example2ReferenceScheme());
  std::string keys;
  for (const auto& [k, _] : j.items()) keys += k + ",";
  EXPECT_EQ(keys, "q,L,seed_length,num_users,case,a_star,rates,fractional,users,");
  EXPECT_EQ(j["rates"]["R_ZSigma"], "3");
  EXPECT_EQ(j["fractional"]["q_bar"], 2);
  EXPECT_EQ(j["users"][3]["user"], 4);
  EXPECT_EQ(j["users"][3]["key_map"],
            io::Json::parse("[[0,0,0,1,0,0],[0,0,0,2,0,0]]"));
}

TEST(IoTest, MalformedSchemes) {
  io::Json j = io::SchemeToJson(scheme::SynthesizeClassical(3, 5, 1));
  auto code = [](const io::Json& bad) {
    try {
      io::SchemeFromJson(bad);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternalInconsistency;
  };
  io::Json bad = j;
  bad.erase("q");
  EXPECT_EQ(code(bad), ErrorCode::kParseError);
  bad = j;
  bad["users"][0]["key_map"][0][0] = 5;
  EXPECT_EQ(code(bad), ErrorCode::kParseError);
  bad = j;
  bad["users"][0]["key_map"][0][0] = "x";
  EXPECT_EQ(code(bad), ErrorCode::kParseError);
  bad = j;
  bad["users"].erase(0);
  EXPECT_EQ(code(bad), ErrorCode::kParseError);
  bad = j;
  bad["case"] = "Other";
  EXPECT_EQ(code(bad), ErrorCode::kParseError);
  bad = j;
  bad["rates"]["R_X"] = "one";
  EXPECT_EQ(code(bad), ErrorCode::kParseError);
}

TEST(IoTest, FileRoundTrip) {
  const std::string path = ::testing::TempDir() + "dsa_io_test.json";
  io::WriteFile(path, "{\"a\": 1}");
  EXPECT_EQ(io::ReadFile(path), "{\"a\": 1}");
  std::remove(path.c_str());
}

}  // namespace
}  // namespace dsa
