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


#ifndef DSA_SIM_H_
#define DSA_SIM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "dsa/gf.h"
#include "dsa/scheme.h"

namespace dsa {

// One protocol round over an in-memory broadcast log, messages ordered by
// user id. Row k - 1 of `inputs`, `messages` and `decoded` belongs to user k.
struct Transcript {
  uint64_t rng_seed = 0;
  gf::FqMatrix inputs;    // K x L
  gf::FqMatrix source;    // 1 x seed_length, the realization of N
  gf::FqMatrix keys;      // K x L
  gf::FqMatrix messages;  // K x L
  gf::FqMatrix decoded;   // K x L
};

namespace sim {

// Samples W (unless overridden) and then N from one generator seeded with
// `rng_seed`. Throws kShapeMismatch on an override that is not K x L over F_q.
Transcript RunRound(const SchemeSpec& spec, uint64_t rng_seed,
                    const std::optional<gf::FqMatrix>& inputs_override = {});

// sum_{k != u} X_k + W_u + Z_u from user u's view only. Throws kUnknownUser.
std::vector<uint64_t> DecodeAtUser(int user, const SchemeSpec& spec,
                                   const Transcript& transcript);

// Column sums of the inputs, i.e. the value every user should decode.
std::vector<uint64_t> TrueSum(const Transcript& transcript);

}  // namespace sim
}  // namespace dsa

#endif  // DSA_SIM_H_
