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


#ifndef DSA_IO_H_
#define DSA_IO_H_

#include <string>

#include "dsa/instance.h"
#include "dsa/scheme.h"
#include "json.hpp"

namespace dsa::io {

using Json = nlohmann::ordered_json;

// {"K": 5, "security": [[1], [2]], "collusion": [[], [2, 5]]}. Throws
// kParseError on malformed input; the instance is not validated here.
ProblemInstance ParseInstance(const std::string& text);
ProblemInstance LoadInstance(const std::string& path);
Json InstanceToJson(const ProblemInstance& instance);

// Stable field order: q, L, seed_length, num_users, case, a_star, rates,
// fractional, users[{user, key_map, basis, mixing}]. Matrices are arrays of
// rows of integers in [0, q).
Json SchemeToJson(const SchemeSpec& spec);
SchemeSpec SchemeFromJson(const Json& json);
SchemeSpec LoadScheme(const std::string& path);

Json MatrixToJson(const gf::FqMatrix& m);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace dsa::io

#endif  // DSA_IO_H_
