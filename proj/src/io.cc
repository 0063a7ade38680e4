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


#include "dsa/io.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dsa/error.h"

namespace dsa::io {
namespace {

using gf::FqMatrix;

CaseTag ParseCaseTag(const std::string& name) {
  for (CaseTag tag : {CaseTag::kClassicalFull, CaseTag::kSubcaseOne,
                      CaseTag::kSubcaseTwo, CaseTag::kFractional}) {
    if (CaseTagName(tag) == name) return tag;
  }
  throw Error(ErrorCode::kParseError, "unknown case tag " + name);
}

std::vector<UserSet> ParseFamily(const Json& list, const char* field) {
  if (!list.is_array()) {
    throw Error(ErrorCode::kParseError,
                std::string("\"") + field + "\" must be an array of arrays");
  }
  std::vector<UserSet> out;
  for (const Json& set : list) {
    if (!set.is_array()) {
      throw Error(ErrorCode::kParseError,
                  std::string("\"") + field + "\" entries must be arrays");
    }
    UserSet s;
    for (const Json& id : set) {
      if (!id.is_number_integer()) {
        throw Error(ErrorCode::kParseError, "user ids must be integers");
      }
      const int v = id.get<int>();
      if (v < 1 || v > kMaxUsers) {
        throw Error(ErrorCode::kInvalidSet,
                    "user id " + std::to_string(v) + " out of range");
      }
      s.Insert(v);
    }
    out.push_back(s);
  }
  return out;
}

FqMatrix MatrixFromJson(const Json& rows, size_t n_rows, size_t n_cols,
                        uint64_t q) {
  if (!rows.is_array() || rows.size() != n_rows) {
    throw Error(ErrorCode::kParseError, "matrix has the wrong row count");
  }
  FqMatrix m(n_rows, n_cols, q);
  for (size_t r = 0; r < n_rows; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n_cols) {
      throw Error(ErrorCode::kParseError, "matrix has the wrong column count");
    }
    for (size_t c = 0; c < n_cols; ++c) {
      const uint64_t v = rows[r][c].get<uint64_t>();
      if (v >= q) throw Error(ErrorCode::kParseError, "entry outside F_q");
      m.set(r, c, v);
    }
  }
  return m;
}

}  // namespace

ProblemInstance ParseInstance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!j.is_object() || !j.contains("K") || !j["K"].is_number_integer() ||
      !j.contains("security") || !j.contains("collusion")) {
    throw Error(ErrorCode::kParseError,
                "instance needs integer \"K\", \"security\" and \"collusion\"");
  }
  ProblemInstance inst;
  inst.num_users = j["K"].get<int>();
  inst.security_generators = ParseFamily(j["security"], "security");
  inst.collusion_generators = ParseFamily(j["collusion"], "collusion");
  return inst;
}

ProblemInstance LoadInstance(const std::string& path) {
  return ParseInstance(ReadFile(path));
}

Json InstanceToJson(const ProblemInstance& instance) {
  Json j;
  j["K"] = instance.num_users;
  j["security"] = Json::array();
  for (UserSet s : instance.security_generators) j["security"].push_back(s.Ids());
  j["collusion"] = Json::array();
  for (UserSet t : instance.collusion_generators) {
    j["collusion"].push_back(t.Ids());
  }
  return j;
}

Json MatrixToJson(const FqMatrix& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<uint64_t>(row.begin(), row.end()));
  }
  return rows;
}

Json SchemeToJson(const SchemeSpec& spec) {
  Json j;
  j["q"] = spec.q;
  j["L"] = spec.block_length;
  j["seed_length"] = spec.seed_length;
  j["num_users"] = spec.num_users;
  j["case"] = std::string(CaseTagName(spec.case_tag));
  j["a_star"] = spec.a_star;
  j["rates"] = {{"R_X", lp::ToString(spec.rates.communication)},
                {"R_ZSigma", lp::ToString(spec.rates.source_key)}};
  if (spec.fractional) {
    Json p = Json::object();
    for (const auto& [k, pk] : spec.fractional->p) p[std::to_string(k)] = pk;
    j["fractional"] = {{"q_bar", spec.fractional->q_bar},
                       {"p", p},
                       {"p_bar", spec.fractional->p_bar}};
  } else {
    j["fractional"] = nullptr;
  }
  j["users"] = Json::array();
  for (int k = 1; k <= spec.num_users; ++k) {
    const UserKey& key = spec.keys[k - 1];
    j["users"].push_back({{"user", k},
                          {"key_map", MatrixToJson(key.key_map)},
                          {"basis", MatrixToJson(key.basis)},
                          {"mixing", MatrixToJson(key.mixing)}});
  }
  return j;
}

SchemeSpec SchemeFromJson(const Json& j) {
  try {
    SchemeSpec spec;
    spec.q = j.at("q").get<uint64_t>();
    spec.block_length = j.at("L").get<size_t>();
    spec.seed_length = j.at("seed_length").get<size_t>();
    spec.num_users = j.at("num_users").get<int>();
    spec.case_tag = ParseCaseTag(j.at("case").get<std::string>());
    spec.a_star = j.at("a_star").get<int>();
    spec.rates = {lp::ParseRational(j.at("rates").at("R_X").get<std::string>()),
                  lp::ParseRational(
                      j.at("rates").at("R_ZSigma").get<std::string>())};
    if (!j.at("fractional").is_null()) {
      const Json& f = j.at("fractional");
      FractionalData data;
      data.q_bar = f.at("q_bar").get<uint64_t>();
      data.p_bar = f.at("p_bar").get<uint64_t>();
      for (const auto& [k, pk] : f.at("p").items()) {
        data.p[std::stoi(k)] = pk.get<uint64_t>();
      }
      spec.fractional = data;
    }
    const Json& users = j.at("users");
    if (!users.is_array() || users.size() != static_cast<size_t>(spec.num_users)) {
      throw Error(ErrorCode::kParseError, "expected one entry per user");
    }
    const size_t l = spec.block_length;
    const size_t seed = spec.seed_length;
    for (const Json& u : users) {
      UserKey key;
      const size_t p = u.at("basis").size();
      key.key_map = MatrixFromJson(u.at("key_map"), l, seed, spec.q);
      key.basis = MatrixFromJson(u.at("basis"), p, seed, spec.q);
      key.mixing = MatrixFromJson(u.at("mixing"), l, p, spec.q);
      spec.keys.push_back(std::move(key));
    }
    return spec;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  } catch (const std::logic_error& e) {
    // std::stoi on a malformed or out-of-range user key.
    throw Error(ErrorCode::kParseError, e.what());
  }
}

SchemeSpec LoadScheme(const std::string& path) {
  Json j;
  try {
    j = Json::parse(ReadFile(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return SchemeFromJson(j);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << contents;
}

}  // namespace dsa::io
