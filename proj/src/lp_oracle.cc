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

// Vertex-enumeration oracle for the key LP. Independent of the simplex path:
// it works on the raw inequality system with fraction-free integer
// elimination, and only converts to Rational at the end.

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "dsa/error.h"
#include "dsa/lp.h"

namespace dsa::lp {
namespace {

using Int = __int128;

// a . x >= rhs over the variables (b_1 .. b_n, t).
struct Inequality {
  std::vector<int64_t> coeffs;
  int64_t rhs = 0;
  auto operator<=>(const Inequality&) const = default;
};

// A candidate point x_i = num[i] / den with den > 0.
struct Point {
  std::vector<int64_t> num;
  int64_t den = 1;
};

// Keeps the sets that are minimal (or maximal) under inclusion. Given b >= 0,
// a lower row over a superset of another lower row is implied, and so is an
// upper row over a subset of another upper row.
std::vector<UserSet> Extremal(const std::vector<UserSet>& sets, bool minimal) {
  std::vector<UserSet> out;
  for (size_t i = 0; i < sets.size(); ++i) {
    bool implied = false;
    for (size_t j = 0; j < sets.size() && !implied; ++j) {
      if (i == j) continue;
      const bool contained = minimal ? sets[j].IsSubsetOf(sets[i])
                                     : sets[i].IsSubsetOf(sets[j]);
      // Equal sets: keep the first copy only.
      implied = contained && (sets[i] != sets[j] || j < i);
    }
    if (!implied) out.push_back(sets[i]);
  }
  return out;
}

std::vector<Inequality> BuildSystem(const RationalLp& lp,
                                    const std::vector<int>& ids) {
  const size_t n = ids.size();
  auto index = [&](int id) {
    return static_cast<size_t>(std::lower_bound(ids.begin(), ids.end(), id) -
                               ids.begin());
  };
  std::vector<Inequality> rows;
  for (UserSet s : Extremal(lp.upper_sets, false)) {
    Inequality in{std::vector<int64_t>(n + 1, 0), 0};
    for (int id : s.Ids()) in.coeffs[index(id)] = -1;
    in.coeffs[n] = 1;
    rows.push_back(std::move(in));
  }
  for (UserSet s : Extremal(lp.lower_sets, true)) {
    Inequality in{std::vector<int64_t>(n + 1, 0), 1};
    for (int id : s.Ids()) in.coeffs[index(id)] = 1;
    rows.push_back(std::move(in));
  }
  for (size_t i = 0; i <= n; ++i) {
    Inequality in{std::vector<int64_t>(n + 1, 0), 0};
    in.coeffs[i] = 1;
    rows.push_back(std::move(in));
  }
  return rows;
}

// Bareiss determinant of a dim x dim integer matrix (destroyed).
int64_t Determinant(std::vector<int64_t>& m, size_t dim) {
  int64_t sign = 1;
  int64_t prev = 1;
  for (size_t k = 0; k + 1 < dim; ++k) {
    if (m[k * dim + k] == 0) {
      size_t swap = k + 1;
      while (swap < dim && m[swap * dim + k] == 0) ++swap;
      if (swap == dim) return 0;
      for (size_t j = 0; j < dim; ++j) std::swap(m[k * dim + j], m[swap * dim + j]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < dim; ++i) {
      for (size_t j = k + 1; j < dim; ++j) {
        const Int v = static_cast<Int>(m[i * dim + j]) * m[k * dim + k] -
                      static_cast<Int>(m[i * dim + k]) * m[k * dim + j];
        m[i * dim + j] = static_cast<int64_t>(v / prev);
      }
    }
    prev = m[k * dim + k];
  }
  return sign * m[(dim - 1) * dim + (dim - 1)];
}

// Cramer's rule on the chosen hyperplanes; false if they are not independent.
bool Intersect(const std::vector<Inequality>& planes,
               const std::vector<size_t>& chosen, size_t dim, Point& out) {
  std::vector<int64_t> m(dim * dim);
  auto fill = [&](size_t replaced_col) {
    for (size_t r = 0; r < dim; ++r) {
      const Inequality& p = planes[chosen[r]];
      for (size_t c = 0; c < dim; ++c) {
        m[r * dim + c] = c == replaced_col ? p.rhs : p.coeffs[c];
      }
    }
  };
  fill(dim);
  int64_t det = Determinant(m, dim);
  if (det == 0) return false;
  out.num.assign(dim, 0);
  for (size_t c = 0; c < dim; ++c) {
    fill(c);
    out.num[c] = Determinant(m, dim);
  }
  if (det < 0) {
    det = -det;
    for (int64_t& v : out.num) v = -v;
  }
  out.den = det;
  return true;
}

bool Satisfies(const std::vector<Inequality>& system, const Point& p) {
  for (const Inequality& in : system) {
    Int lhs = 0;
    for (size_t i = 0; i < in.coeffs.size(); ++i) {
      lhs += static_cast<Int>(in.coeffs[i]) * p.num[i];
    }
    if (lhs < static_cast<Int>(in.rhs) * p.den) return false;
  }
  return true;
}

// Strict order: smaller t first, then lexicographically smaller b.
bool Better(const Point& a, const Point& b, size_t t_index) {
  auto cmp = [&](size_t i) {
    const Int lhs = static_cast<Int>(a.num[i]) * b.den;
    const Int rhs = static_cast<Int>(b.num[i]) * a.den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  };
  const int ct = cmp(t_index);
  if (ct != 0) return ct < 0;
  for (size_t i = 0; i < t_index; ++i) {
    const int c = cmp(i);
    if (c != 0) return c < 0;
  }
  return false;
}

struct Best {
  bool found = false;
  Point point;
};

// Depth-first search over increasing hyperplane index sets. Each chosen
// normal is reduced against the previous ones, so a linearly dependent prefix
// prunes its whole subtree; only bases reach the Cramer solve.
class Search {
 public:
  Search(const std::vector<Inequality>& planes, size_t dim,
         std::atomic<uint64_t>& nodes, uint64_t cap, Best& best)
      : planes_(planes), dim_(dim), nodes_(nodes), cap_(cap), best_(best) {}

  // Every basis whose smallest member is `first`. Returns false once the
  // shared node budget is exhausted.
  bool RunFrom(size_t first) {
    if (!Push(first)) return true;
    const bool ok = Descend(first + 1);
    Pop();
    return ok;
  }

 private:
  bool Descend(size_t next) {
    if (chosen_.size() == dim_) {
      Point p;
      if (Intersect(planes_, chosen_, dim_, p) && Satisfies(planes_, p) &&
          (!best_.found || Better(p, best_.point, dim_ - 1))) {
        best_.found = true;
        best_.point = p;
      }
      return true;
    }
    const size_t needed = dim_ - chosen_.size();
    for (size_t i = next; i + needed <= planes_.size(); ++i) {
      if (nodes_.fetch_add(1, std::memory_order_relaxed) >= cap_) return false;
      if (!Push(i)) continue;
      const bool ok = Descend(i + 1);
      Pop();
      if (!ok) return false;
    }
    return true;
  }

  // Appends hyperplane i if its normal is independent of the chosen ones.
  bool Push(size_t i) {
    std::vector<int64_t> row = planes_[i].coeffs;
    for (size_t j = 0; j < basis_.size(); ++j) {
      const size_t p = pivots_[j];
      if (row[p] == 0) continue;
      const int64_t a = basis_[j][p];
      const int64_t c = row[p];
      int64_t g = 0;
      for (size_t k = 0; k < dim_; ++k) {
        const Int v = static_cast<Int>(row[k]) * a -
                      static_cast<Int>(basis_[j][k]) * c;
        row[k] = static_cast<int64_t>(v);
        g = std::gcd(g, row[k]);
      }
      if (g > 1) {
        for (int64_t& v : row) v /= g;
      }
    }
    size_t pivot = 0;
    while (pivot < dim_ && row[pivot] == 0) ++pivot;
    if (pivot == dim_) return false;
    basis_.push_back(std::move(row));
    pivots_.push_back(pivot);
    chosen_.push_back(i);
    return true;
  }

  void Pop() {
    basis_.pop_back();
    pivots_.pop_back();
    chosen_.pop_back();
  }

  const std::vector<Inequality>& planes_;
  const size_t dim_;
  std::atomic<uint64_t>& nodes_;
  const uint64_t cap_;
  Best& best_;
  std::vector<size_t> chosen_;
  std::vector<std::vector<int64_t>> basis_;
  std::vector<size_t> pivots_;
};

LpSolution Run(const RationalLp& lp, const OracleCaps& caps, bool parallel) {
  CheckWellFormed(lp);
  const std::vector<int> ids = lp.variables.Ids();
  if (ids.size() > caps.max_variables) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(ids.size()) + " variables exceed the oracle cap");
  }
  const size_t dim = ids.size() + 1;
  const std::vector<Inequality> system = BuildSystem(lp, ids);
  const std::set<Inequality> unique(system.begin(), system.end());
  const std::vector<Inequality> planes(unique.begin(), unique.end());
  const long firsts = static_cast<long>(planes.size());
  std::vector<Best> per_first(planes.size());
  std::atomic<uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
#pragma omp parallel for if (parallel) schedule(dynamic)
  for (long f = 0; f < firsts; ++f) {
    if (exhausted.load(std::memory_order_relaxed)) continue;
    Search search(planes, dim, nodes, caps.max_combinations, per_first[f]);
    if (!search.RunFrom(static_cast<size_t>(f))) exhausted = true;
  }
  if (exhausted) {
    throw Error(ErrorCode::kTooLarge,
                "more than " + std::to_string(caps.max_combinations) +
                    " search nodes over " +
                    std::to_string(planes.size()) + " hyperplanes");
  }
  Best best;
  for (const Best& b : per_first) {
    if (b.found && (!best.found || Better(b.point, best.point, dim - 1))) {
      best = b;
    }
  }
  if (!best.found) {
    throw Error(ErrorCode::kInfeasible, "no feasible vertex");
  }
  std::map<int, Rational> assignment;
  for (size_t i = 0; i < ids.size(); ++i) {
    assignment[ids[i]] = Rational(best.point.num[i], best.point.den);
  }
  LpSolution sol = Evaluate(lp, assignment);
  const Rational t(best.point.num[dim - 1], best.point.den);
  if (sol.optimum != t) {
    // At an optimal vertex t sits on the largest upper constraint (or on its
    // own bound when there are none).
    throw Error(ErrorCode::kInternalInconsistency,
                "oracle vertex t=" + ToString(t) + " but max upper is " +
                    ToString(sol.optimum));
  }
  return sol;
}

}  // namespace

LpSolution SolveOracle(const RationalLp& lp, const OracleCaps& caps) {
  return Run(lp, caps, true);
}

LpSolution SolveOracleSerial(const RationalLp& lp, const OracleCaps& caps) {
  return Run(lp, caps, false);
}

}  // namespace dsa::lp
