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


#include "dsa/sim.h"

#include <string>
#include <vector>

#include "dsa/error.h"

namespace dsa::sim {

using gf::FqMatrix;

Transcript RunRound(const SchemeSpec& spec, uint64_t rng_seed,
                    const std::optional<FqMatrix>& inputs_override) {
  const size_t k_users = static_cast<size_t>(spec.num_users);
  const size_t l = spec.block_length;
  gf::Rng rng(rng_seed);
  Transcript t;
  t.rng_seed = rng_seed;
  if (inputs_override) {
    if (inputs_override->rows() != k_users || inputs_override->cols() != l ||
        inputs_override->modulus() != spec.q) {
      throw Error(ErrorCode::kShapeMismatch,
                  "inputs override must be " + std::to_string(k_users) + " x " +
                      std::to_string(l) + " over F_" + std::to_string(spec.q));
    }
    t.inputs = *inputs_override;
  } else {
    t.inputs = gf::RandomMatrix(k_users, l, spec.q, rng);
  }
  t.source = gf::RandomMatrix(1, spec.seed_length, spec.q, rng);
  const FqMatrix n_column = t.source.Transpose();
  t.keys = FqMatrix(k_users, l, spec.q);
  for (size_t k = 0; k < k_users; ++k) {
    const FqMatrix z = spec.keys[k].key_map * n_column;
    for (size_t i = 0; i < l; ++i) t.keys.set(k, i, z.at(i, 0));
  }
  t.messages = t.inputs + t.keys;
  t.decoded = FqMatrix(k_users, l, spec.q);
  for (int u = 1; u <= spec.num_users; ++u) {
    const std::vector<uint64_t> d = DecodeAtUser(u, spec, t);
    for (size_t i = 0; i < l; ++i) t.decoded.set(u - 1, i, d[i]);
  }
  return t;
}

std::vector<uint64_t> DecodeAtUser(int user, const SchemeSpec& spec,
                                   const Transcript& transcript) {
  if (user < 1 || user > spec.num_users) {
    throw Error(ErrorCode::kUnknownUser,
                "user " + std::to_string(user) + " is not in [K]");
  }
  const uint64_t q = spec.q;
  std::vector<uint64_t> out(spec.block_length, 0);
  for (int k = 1; k <= spec.num_users; ++k) {
    for (size_t i = 0; i < spec.block_length; ++i) {
      const uint64_t v =
          k == user ? gf::AddMod(transcript.inputs.at(k - 1, i),
                                 transcript.keys.at(k - 1, i), q)
                    : transcript.messages.at(k - 1, i);
      out[i] = gf::AddMod(out[i], v, q);
    }
  }
  return out;
}

std::vector<uint64_t> TrueSum(const Transcript& transcript) {
  const FqMatrix& w = transcript.inputs;
  std::vector<uint64_t> out(w.cols(), 0);
  for (size_t r = 0; r < w.rows(); ++r) {
    for (size_t c = 0; c < w.cols(); ++c) {
      out[c] = gf::AddMod(out[c], w.at(r, c), w.modulus());
    }
  }
  return out;
}

}  // namespace dsa::sim
