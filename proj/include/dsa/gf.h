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

#ifndef DSA_GF_H_
#define DSA_GF_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dsa::gf {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool IsPrime(uint64_t n);

// Least prime >= n (n >= 2).
uint64_t SmallestPrimeGeq(uint64_t n);

inline uint64_t AddMod(uint64_t a, uint64_t b, uint64_t q) {
  const uint64_t s = a + b;
  return (s >= q || s < a) ? s - q : s;
}
inline uint64_t SubMod(uint64_t a, uint64_t b, uint64_t q) {
  return a >= b ? a - b : a + (q - b);
}
inline uint64_t MulMod(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}
uint64_t PowMod(uint64_t base, uint64_t exp, uint64_t q);
// Inverse of a nonzero element of the prime field F_q.
uint64_t InvMod(uint64_t a, uint64_t q);
// Canonical representative of a signed integer.
uint64_t Reduce(int64_t v, uint64_t q);

// An element of F_q that carries its modulus.
class FieldElement {
 public:
  FieldElement(int64_t value, uint64_t modulus);

  uint64_t value() const { return value_; }
  uint64_t modulus() const { return modulus_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  // Throws std::domain_error on zero.
  FieldElement Inverse() const;
  bool operator==(const FieldElement& o) const = default;

 private:
  FieldElement(uint64_t value, uint64_t modulus, bool)
      : value_(value), modulus_(modulus) {}
  void CheckSameField(const FieldElement& o) const;

  uint64_t value_;
  uint64_t modulus_;
};

// Seeded generator of uniform field symbols. Sampling uses rejection on raw
// mt19937_64 output, so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  uint64_t Uniform(uint64_t q);
  uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Dense row-major matrix over a prime field.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(size_t rows, size_t cols, uint64_t q);

  static FqMatrix Identity(size_t n, uint64_t q);
  // Rows of signed integers, reduced mod q. All rows must share a length.
  static FqMatrix FromRows(const std::vector<std::vector<int64_t>>& rows,
                           uint64_t q);
  static FqMatrix VStack(std::span<const FqMatrix> blocks, size_t cols,
                         uint64_t q);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint64_t modulus() const { return q_; }

  uint64_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint64_t v) { data_[r * cols_ + c] = v % q_; }
  std::span<const uint64_t> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<uint64_t> mutable_row(size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<uint64_t>& data() const { return data_; }

  FqMatrix Transpose() const;
  FqMatrix operator+(const FqMatrix& o) const;
  FqMatrix operator-(const FqMatrix& o) const;
  FqMatrix operator*(const FqMatrix& o) const;
  FqMatrix Negate() const;
  FqMatrix Scale(uint64_t factor) const;
  bool IsZero() const;
  // Rows [begin, end).
  FqMatrix RowRange(size_t begin, size_t end) const;
  // Places `block` with its top-left corner at (row, col).
  void Paste(const FqMatrix& block, size_t row, size_t col);
  std::vector<std::vector<int64_t>> ToRows() const;

  bool operator==(const FqMatrix& o) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  uint64_t q_ = 2;
  std::vector<uint64_t> data_;
};

// Row rank by Gaussian elimination. Rank() switches to the OpenMP kernel
// above a size threshold; the serial kernel is the reference.
size_t Rank(const FqMatrix& m);
size_t RankSerial(const FqMatrix& m);
size_t RankParallel(const FqMatrix& m);

struct Echelon {
  FqMatrix reduced;  // reduced row echelon form
  size_t rank = 0;
  std::vector<size_t> pivot_columns;
};
Echelon ReducedRowEchelon(const FqMatrix& m);

FqMatrix RandomMatrix(size_t rows, size_t cols, uint64_t q, Rng& rng);
FqMatrix RandomMatrix(size_t rows, size_t cols, uint64_t q, uint64_t seed);

}  // namespace dsa::gf

#endif  // DSA_GF_H_
