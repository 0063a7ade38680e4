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

#include "dsa/gf.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

#include "dsa/error.h"

namespace dsa::gf {

uint64_t PowMod(uint64_t base, uint64_t exp, uint64_t q) {
  uint64_t result = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base, q);
    base = MulMod(base, base, q);
    exp >>= 1;
  }
  return result;
}

uint64_t InvMod(uint64_t a, uint64_t q) {
  if (a % q == 0) throw std::domain_error("zero has no inverse in F_q");
  return PowMod(a, q - 2, q);
}

uint64_t Reduce(int64_t v, uint64_t q) {
  if (v >= 0) return static_cast<uint64_t>(v) % q;
  const uint64_t mag = static_cast<uint64_t>(-(v + 1)) + 1;
  const uint64_t r = mag % q;
  return r == 0 ? 0 : q - r;
}

bool IsPrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    uint64_t x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t SmallestPrimeGeq(uint64_t n) {
  if (n <= 2) return 2;
  while (!IsPrime(n)) ++n;
  return n;
}

FieldElement::FieldElement(int64_t value, uint64_t modulus)
    : value_(Reduce(value, modulus)), modulus_(modulus) {}

void FieldElement::CheckSameField(const FieldElement& o) const {
  if (modulus_ != o.modulus_) {
    throw Error(ErrorCode::kDimensionMismatch, "field elements from F_" +
                                                   std::to_string(modulus_) +
                                                   " and F_" +
                                                   std::to_string(o.modulus_));
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  CheckSameField(o);
  return {AddMod(value_, o.value_, modulus_), modulus_, true};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  CheckSameField(o);
  return {SubMod(value_, o.value_, modulus_), modulus_, true};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  CheckSameField(o);
  return {MulMod(value_, o.value_, modulus_), modulus_, true};
}
FieldElement FieldElement::operator-() const {
  return {SubMod(0, value_, modulus_), modulus_, true};
}
FieldElement FieldElement::Inverse() const {
  return {InvMod(value_, modulus_), modulus_, true};
}

uint64_t Rng::Uniform(uint64_t q) {
  // Largest multiple of q that fits; reject above it.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % q + 1) % q;
  while (true) {
    const uint64_t x = engine_();
    if (x <= limit) return x % q;
  }
}

FqMatrix::FqMatrix(size_t rows, size_t cols, uint64_t q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {}

FqMatrix FqMatrix::Identity(size_t n, uint64_t q) {
  FqMatrix m(n, n, q);
  for (size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % q;
  return m;
}

FqMatrix FqMatrix::FromRows(const std::vector<std::vector<int64_t>>& rows,
                            uint64_t q) {
  const size_t cols = rows.empty() ? 0 : rows.front().size();
  FqMatrix m(rows.size(), cols, q);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    }
    for (size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = Reduce(rows[r][c], q);
  }
  return m;
}

FqMatrix FqMatrix::VStack(std::span<const FqMatrix> blocks, size_t cols,
                          uint64_t q) {
  size_t rows = 0;
  for (const FqMatrix& b : blocks) {
    if (b.cols_ != cols || (b.rows_ > 0 && b.q_ != q)) {
      throw Error(ErrorCode::kDimensionMismatch, "VStack shape mismatch");
    }
    rows += b.rows_;
  }
  FqMatrix out(rows, cols, q);
  size_t offset = 0;
  for (const FqMatrix& b : blocks) {
    std::copy(b.data_.begin(), b.data_.end(),
              out.data_.begin() + static_cast<long>(offset * cols));
    offset += b.rows_;
  }
  return out;
}

FqMatrix FqMatrix::Transpose() const {
  FqMatrix t(cols_, rows_, q_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  }
  return t;
}

FqMatrix FqMatrix::operator+(const FqMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || q_ != o.q_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix sum shape mismatch");
  }
  FqMatrix out(rows_, cols_, q_);
  for (size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = AddMod(data_[i], o.data_[i], q_);
  }
  return out;
}

FqMatrix FqMatrix::operator-(const FqMatrix& o) const {
  return *this + o.Negate();
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  if (cols_ != o.rows_ || q_ != o.q_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix product shape mismatch");
  }
  FqMatrix out(rows_, o.cols_, q_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t k = 0; k < cols_; ++k) {
      const uint64_t a = at(r, k);
      if (a == 0) continue;
      for (size_t c = 0; c < o.cols_; ++c) {
        uint64_t& dst = out.data_[r * o.cols_ + c];
        dst = AddMod(dst, MulMod(a, o.at(k, c), q_), q_);
      }
    }
  }
  return out;
}

FqMatrix FqMatrix::Negate() const {
  FqMatrix out(rows_, cols_, q_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = SubMod(0, data_[i], q_);
  return out;
}

FqMatrix FqMatrix::Scale(uint64_t factor) const {
  FqMatrix out(rows_, cols_, q_);
  for (size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = MulMod(data_[i], factor % q_, q_);
  }
  return out;
}

bool FqMatrix::IsZero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](uint64_t v) { return v == 0; });
}

FqMatrix FqMatrix::RowRange(size_t begin, size_t end) const {
  assert(begin <= end && end <= rows_);
  FqMatrix out(end - begin, cols_, q_);
  std::copy(data_.begin() + static_cast<long>(begin * cols_),
            data_.begin() + static_cast<long>(end * cols_), out.data_.begin());
  return out;
}

void FqMatrix::Paste(const FqMatrix& block, size_t row, size_t col) {
  if (row + block.rows_ > rows_ || col + block.cols_ > cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "Paste out of bounds");
  }
  for (size_t r = 0; r < block.rows_; ++r) {
    for (size_t c = 0; c < block.cols_; ++c) {
      data_[(row + r) * cols_ + col + c] = block.at(r, c) % q_;
    }
  }
}

std::vector<std::vector<int64_t>> FqMatrix::ToRows() const {
  std::vector<std::vector<int64_t>> out(rows_, std::vector<int64_t>(cols_));
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) {
      out[r][c] = static_cast<int64_t>(at(r, c));
    }
  }
  return out;
}

namespace {

// In-place forward elimination; returns rank. `parallel` splits the row
// updates below each pivot across threads.
size_t Eliminate(std::vector<uint64_t>& a, size_t rows, size_t cols,
                 uint64_t q, bool parallel) {
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(a.begin() + static_cast<long>(pivot * cols),
                       a.begin() + static_cast<long>((pivot + 1) * cols),
                       a.begin() + static_cast<long>(rank * cols));
    }
    const uint64_t inv = InvMod(a[rank * cols + c], q);
    const uint64_t* prow = a.data() + rank * cols;
    const long first = static_cast<long>(rank + 1);
    const long last = static_cast<long>(rows);
#pragma omp parallel for if (parallel) schedule(static)
    for (long r = first; r < last; ++r) {
      uint64_t* row = a.data() + static_cast<size_t>(r) * cols;
      const uint64_t lead = row[c];
      if (lead == 0) continue;
      const uint64_t factor = MulMod(lead, inv, q);
      for (size_t j = c; j < cols; ++j) {
        row[j] = SubMod(row[j], MulMod(factor, prow[j], q), q);
      }
    }
    ++rank;
  }
  return rank;
}

constexpr size_t kParallelRankCells = 64 * 64;

}  // namespace

size_t RankSerial(const FqMatrix& m) {
  std::vector<uint64_t> a = m.data();
  return Eliminate(a, m.rows(), m.cols(), m.modulus(), false);
}

size_t RankParallel(const FqMatrix& m) {
  std::vector<uint64_t> a = m.data();
  return Eliminate(a, m.rows(), m.cols(), m.modulus(), true);
}

size_t Rank(const FqMatrix& m) {
  return m.rows() * m.cols() >= kParallelRankCells ? RankParallel(m)
                                                   : RankSerial(m);
}

Echelon ReducedRowEchelon(const FqMatrix& m) {
  const size_t rows = m.rows();
  const size_t cols = m.cols();
  const uint64_t q = m.modulus();
  FqMatrix a = m;
  Echelon e;
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pivot = rank;
    while (pivot < rows && a.at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (size_t j = 0; j < cols; ++j) {
        const uint64_t tmp = a.at(pivot, j);
        a.set(pivot, j, a.at(rank, j));
        a.set(rank, j, tmp);
      }
    }
    const uint64_t inv = InvMod(a.at(rank, c), q);
    for (size_t j = 0; j < cols; ++j) a.set(rank, j, MulMod(a.at(rank, j), inv, q));
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const uint64_t factor = a.at(r, c);
      if (factor == 0) continue;
      for (size_t j = 0; j < cols; ++j) {
        a.set(r, j, SubMod(a.at(r, j), MulMod(factor, a.at(rank, j), q), q));
      }
    }
    e.pivot_columns.push_back(c);
    ++rank;
  }
  e.reduced = std::move(a);
  e.rank = rank;
  return e;
}

FqMatrix RandomMatrix(size_t rows, size_t cols, uint64_t q, Rng& rng) {
  FqMatrix m(rows, cols, q);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) m.set(r, c, rng.Uniform(q));
  }
  return m;
}

FqMatrix RandomMatrix(size_t rows, size_t cols, uint64_t q, uint64_t seed) {
  Rng rng(seed);
  return RandomMatrix(rows, cols, q, rng);
}

}  // namespace dsa::gf
