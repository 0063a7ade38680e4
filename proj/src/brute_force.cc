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


#include <string>
#include <unordered_map>
#include <vector>

#include "dsa/error.h"
#include "dsa/linsec.h"

namespace dsa::linsec {

BruteForceOracle::BruteForceOracle(const SchemeSpec& spec, uint64_t cap)
    : q_(spec.q) {
  if (q_ > 255) {
    throw Error(ErrorCode::kTooLarge, "brute force needs q < 256");
  }
  const auto vars = ProtocolVariables(spec);
  const size_t dim = vars.begin()->second.coeffs.cols();
  realizations_ = 1;
  for (size_t i = 0; i < dim; ++i) {
    if (realizations_ > cap / q_) {
      throw Error(ErrorCode::kTooLarge,
                  "q^" + std::to_string(dim) + " seed realizations exceed cap");
    }
    realizations_ *= q_;
  }
  std::vector<std::vector<uint64_t>> functionals;
  for (const auto& [label, var] : vars) {
    rows_[label] = {row_count_, var.coeffs.rows()};
    for (size_t r = 0; r < var.coeffs.rows(); ++r) {
      const auto row = var.coeffs.row(r);
      functionals.emplace_back(row.begin(), row.end());
    }
    row_count_ += var.coeffs.rows();
  }

  values_.assign(realizations_ * row_count_, 0);
  std::vector<uint64_t> seed(dim, 0);
  for (uint64_t r = 0; r < realizations_; ++r) {
    for (size_t f = 0; f < row_count_; ++f) {
      uint64_t v = 0;
      for (size_t c = 0; c < dim; ++c) v += functionals[f][c] * seed[c];
      values_[r * row_count_ + f] = static_cast<uint8_t>(v % q_);
    }
    for (size_t c = 0; c < dim && ++seed[c] == q_; ++c) seed[c] = 0;
  }
}

lp::Rational BruteForceOracle::Entropy(
    const std::vector<std::string>& labels) const {
  std::vector<size_t> picks;
  for (const std::string& label : labels) {
    auto it = rows_.find(label);
    if (it == rows_.end()) {
      throw Error(ErrorCode::kDimensionMismatch, "unknown variable " + label);
    }
    for (size_t i = 0; i < it->second.second; ++i) {
      picks.push_back(it->second.first + i);
    }
  }
  std::unordered_map<std::string, uint64_t> counts;
  std::string key(picks.size(), '\0');
  for (uint64_t r = 0; r < realizations_; ++r) {
    const uint8_t* row = values_.data() + r * row_count_;
    for (size_t i = 0; i < picks.size(); ++i) key[i] = static_cast<char>(row[picks[i]]);
    ++counts[key];
  }
  const uint64_t each = counts.begin()->second;
  for (const auto& [value, count] : counts) {
    if (count != each) {
      throw Error(ErrorCode::kInternalInconsistency,
                  "joint distribution is not uniform on its support");
    }
  }
  uint64_t support = counts.size();
  long exponent = 0;
  while (support % q_ == 0) {
    support /= q_;
    ++exponent;
  }
  if (support != 1) {
    throw Error(ErrorCode::kInternalInconsistency,
                "support size is not a power of q");
  }
  return lp::Rational(exponent);
}

lp::Rational BruteForceOracle::Mi(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b,
                                  const std::vector<std::string>& c) const {
  auto join = [](std::vector<std::string> x, const std::vector<std::string>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  const auto ac = join(a, c);
  const auto bc = join(b, c);
  return Entropy(ac) + Entropy(bc) - Entropy(join(ac, b)) - Entropy(c);
}

lp::Rational BruteForceMi(const SchemeSpec& spec,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b,
                          const std::vector<std::string>& c, uint64_t cap) {
  return BruteForceOracle(spec, cap).Mi(a, b, c);
}

}  // namespace dsa::linsec
