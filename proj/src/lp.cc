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

#include "dsa/lp.h"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dsa/error.h"

namespace dsa::lp {

std::string ToString(const Rational& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) {
    out << "/" << boost::multiprecision::denominator(r);
  }
  return out.str();
}

Rational ParseRational(const std::string& text) {
  static const std::regex kPattern(R"(-?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(text, kPattern)) {
    throw Error(ErrorCode::kParseError, "bad rational '" + text + "'");
  }
  try {
    const size_t slash = text.find('/');
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::runtime_error("zero denominator");
    return Rational(num, den);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParseError,
                "bad rational '" + text + "': " + e.what());
  }
}

RationalLp BuildLp(const DerivedSets& derived, int num_users) {
  if (derived.case_tag != CaseTag::kFractional) {
    throw Error(ErrorCode::kNotFractionalCase,
                std::string("BuildLp needs a Fractional instance, got ") +
                    std::string(CaseTagName(derived.case_tag)));
  }
  const UserSet all = UserSet::All(num_users);
  const UserSet total = derived.total_security_set;
  RationalLp lp;
  lp.variables = all - total;
  std::unordered_set<UserSet, UserSetHash> seen_upper;
  std::unordered_set<UserSet, UserSetHash> seen_lower;
  for (const Triple& t : derived.max_triples) {
    // S_m ⊆ S̄, so (T_n ∪ {u}) \ S̄ equals union \ S̄.
    const UserSet upper = (t.collusion_set | UserSet::Single(t.user)) - total;
    const UserSet lower = all - t.union_set;
    if (seen_upper.insert(upper).second) lp.upper_sets.push_back(upper);
    if (seen_lower.insert(lower).second) lp.lower_sets.push_back(lower);
  }
  CheckWellFormed(lp);
  return lp;
}

void CheckWellFormed(const RationalLp& lp) {
  for (UserSet s : lp.upper_sets) {
    if (!s.IsSubsetOf(lp.variables)) {
      throw Error(ErrorCode::kInvalidSet,
                  "upper constraint " + s.ToString() + " uses undeclared b_k");
    }
  }
  for (UserSet s : lp.lower_sets) {
    if (!s.IsSubsetOf(lp.variables)) {
      throw Error(ErrorCode::kInvalidSet,
                  "lower constraint " + s.ToString() + " uses undeclared b_k");
    }
  }
}

namespace {

Rational SumOver(UserSet set, const std::map<int, Rational>& b) {
  Rational s = 0;
  for (int id : set.Ids()) {
    auto it = b.find(id);
    if (it != b.end()) s += it->second;
  }
  return s;
}

// Dense tableau for  min c.x  s.t.  A x = rhs, x >= 0, rhs >= 0.
class Tableau {
 public:
  Tableau(size_t rows, size_t cols)
      : a_(rows, std::vector<Rational>(cols)), rhs_(rows), basis_(rows),
        allowed_(cols, true) {}

  Rational& at(size_t r, size_t c) { return a_[r][c]; }
  Rational& rhs(size_t r) { return rhs_[r]; }
  size_t& basis(size_t r) { return basis_[r]; }
  size_t rows() const { return a_.size(); }
  size_t cols() const { return allowed_.size(); }
  void Forbid(size_t c) { allowed_[c] = false; }

  // Runs Bland's-rule simplex on `cost`; returns false if unbounded.
  // Leaves reduced costs in last_reduced_.
  bool Optimize(const std::vector<Rational>& cost) {
    ComputeReduced(cost);
    while (true) {
      size_t enter = cols();
      for (size_t j = 0; j < cols(); ++j) {
        if (allowed_[j] && reduced_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols()) return true;
      size_t leave = rows();
      Rational best_ratio;
      for (size_t i = 0; i < rows(); ++i) {
        if (a_[i][enter] <= 0) continue;
        const Rational ratio = rhs_[i] / a_[i][enter];
        if (leave == rows() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows()) return false;
      Pivot(leave, enter);
    }
  }

  // Forbids every allowed nonbasic column whose reduced cost is positive;
  // afterwards only points optimal for the last objective remain reachable.
  void FreezeOptimalFace() {
    std::vector<bool> is_basic(cols(), false);
    for (size_t b : basis_) is_basic[b] = true;
    for (size_t j = 0; j < cols(); ++j) {
      if (!is_basic[j] && reduced_[j] > 0) allowed_[j] = false;
    }
  }

  void Pivot(size_t row, size_t col) {
    const Rational p = a_[row][col];
    for (Rational& v : a_[row]) v /= p;
    rhs_[row] /= p;
    for (size_t i = 0; i < rows(); ++i) {
      if (i == row || a_[i][col] == 0) continue;
      const Rational f = a_[i][col];
      for (size_t j = 0; j < cols(); ++j) {
        if (a_[row][j] != 0) a_[i][j] -= f * a_[row][j];
      }
      rhs_[i] -= f * rhs_[row];
    }
    if (!reduced_.empty() && reduced_[col] != 0) {
      const Rational f = reduced_[col];
      for (size_t j = 0; j < cols(); ++j) {
        if (a_[row][j] != 0) reduced_[j] -= f * a_[row][j];
      }
      objective_ += f * rhs_[row];
    }
    basis_[row] = col;
  }

  void DropRow(size_t row) {
    a_.erase(a_.begin() + static_cast<long>(row));
    rhs_.erase(rhs_.begin() + static_cast<long>(row));
    basis_.erase(basis_.begin() + static_cast<long>(row));
  }

  const Rational& objective() const { return objective_; }

  std::vector<Rational> Values() const {
    std::vector<Rational> x(cols());
    for (size_t i = 0; i < rows(); ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

 private:
  void ComputeReduced(const std::vector<Rational>& cost) {
    reduced_ = cost;
    objective_ = 0;
    for (size_t i = 0; i < rows(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (size_t j = 0; j < cols(); ++j) {
        if (a_[i][j] != 0) reduced_[j] -= cb * a_[i][j];
      }
      objective_ += cb * rhs_[i];
    }
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> rhs_;
  std::vector<size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<Rational> reduced_;
  Rational objective_;
};

void FillTightness(const RationalLp& lp, LpSolution& sol) {
  sol.tight_upper.clear();
  sol.tight_lower.clear();
  for (size_t i = 0; i < lp.upper_sets.size(); ++i) {
    if (SumOver(lp.upper_sets[i], sol.assignment) == sol.optimum) {
      sol.tight_upper.push_back(i);
    }
  }
  for (size_t j = 0; j < lp.lower_sets.size(); ++j) {
    if (SumOver(lp.lower_sets[j], sol.assignment) == 1) {
      sol.tight_lower.push_back(j);
    }
  }
}

// Removes rows implied under b >= 0: lower sets containing another lower
// set, upper sets contained in another upper set. The feasible region and
// objective are unchanged.
RationalLp WithoutImpliedRows(const RationalLp& lp) {
  auto keep = [](const std::vector<UserSet>& sets, bool lower) {
    const std::set<UserSet> unique(sets.begin(), sets.end());
    std::vector<UserSet> out;
    for (UserSet s : unique) {
      bool implied = false;
      for (UserSet o : unique) {
        if (o == s) continue;
        implied = implied || (lower ? o.IsSubsetOf(s) : s.IsSubsetOf(o));
      }
      if (!implied) out.push_back(s);
    }
    return out;
  };
  RationalLp reduced;
  reduced.variables = lp.variables;
  reduced.upper_sets = keep(lp.upper_sets, false);
  reduced.lower_sets = keep(lp.lower_sets, true);
  return reduced;
}

}  // namespace

LpSolution SolveExact(const RationalLp& input) {
  CheckWellFormed(input);
  const RationalLp lp = WithoutImpliedRows(input);
  const std::vector<int> ids = lp.variables.Ids();
  const size_t n = ids.size();
  const size_t mu = lp.upper_sets.size();
  const size_t ml = lp.lower_sets.size();
  // Columns: b (n) | t | upper slacks (mu) | lower surplus (ml) | artificial.
  const size_t col_t = n;
  const size_t col_slack = n + 1;
  const size_t col_surplus = col_slack + mu;
  const size_t col_art = col_surplus + ml;
  const size_t cols = col_art + ml;
  Tableau tab(mu + ml, cols);
  auto column_of = [&](int id) {
    return static_cast<size_t>(std::lower_bound(ids.begin(), ids.end(), id) -
                               ids.begin());
  };
  for (size_t i = 0; i < mu; ++i) {
    for (int id : lp.upper_sets[i].Ids()) tab.at(i, column_of(id)) = 1;
    tab.at(i, col_t) = -1;
    tab.at(i, col_slack + i) = 1;
    tab.rhs(i) = 0;
    tab.basis(i) = col_slack + i;
  }
  for (size_t j = 0; j < ml; ++j) {
    const size_t r = mu + j;
    for (int id : lp.lower_sets[j].Ids()) tab.at(r, column_of(id)) = 1;
    tab.at(r, col_surplus + j) = -1;
    tab.at(r, col_art + j) = 1;
    tab.rhs(r) = 1;
    tab.basis(r) = col_art + j;
  }

  // Phase 1: drive the artificials to zero.
  if (ml > 0) {
    std::vector<Rational> cost(cols);
    for (size_t j = 0; j < ml; ++j) cost[col_art + j] = 1;
    tab.Optimize(cost);
    if (tab.objective() != 0) {
      throw Error(ErrorCode::kInfeasible, "lower constraints unsatisfiable");
    }
    for (size_t r = 0; r < tab.rows();) {
      if (tab.basis(r) < col_art) {
        ++r;
        continue;
      }
      size_t c = 0;
      while (c < col_art && tab.at(r, c) == 0) ++c;
      if (c == col_art) {
        tab.DropRow(r);  // redundant equality
      } else {
        tab.Pivot(r, c);
        ++r;
      }
    }
    for (size_t j = 0; j < ml; ++j) tab.Forbid(col_art + j);
  }

  // Phase 2: minimize t, then each b_k in id order over the optimal face.
  std::vector<Rational> cost(cols);
  cost[col_t] = 1;
  if (!tab.Optimize(cost)) {
    throw Error(ErrorCode::kUnbounded, "objective unbounded below");
  }
  tab.FreezeOptimalFace();
  for (size_t k = 0; k < n; ++k) {
    std::vector<Rational> lex(cols);
    lex[k] = 1;
    if (!tab.Optimize(lex)) {
      throw Error(ErrorCode::kUnbounded, "lexicographic stage unbounded");
    }
    tab.FreezeOptimalFace();
  }

  const std::vector<Rational> x = tab.Values();
  LpSolution sol;
  for (size_t k = 0; k < n; ++k) sol.assignment[ids[k]] = x[k];
  sol.optimum = x[col_t];
  FillTightness(input, sol);
  return sol;
}

bool IsFeasible(const RationalLp& lp, const std::map<int, Rational>& b) {
  for (const auto& [id, v] : b) {
    if (v < 0 || !lp.variables.Contains(id)) return false;
  }
  for (UserSet s : lp.lower_sets) {
    if (SumOver(s, b) < 1) return false;
  }
  return true;
}

LpSolution Evaluate(const RationalLp& lp, const std::map<int, Rational>& b) {
  LpSolution sol;
  for (int id : lp.variables.Ids()) {
    auto it = b.find(id);
    sol.assignment[id] = it == b.end() ? Rational(0) : it->second;
  }
  sol.optimum = 0;
  for (UserSet s : lp.upper_sets) {
    sol.optimum = std::max(sol.optimum, SumOver(s, sol.assignment));
  }
  FillTightness(lp, sol);
  return sol;
}

bool CheckLemma5(const LpSolution& solution) {
  Rational sum = 0;
  for (const auto& [id, v] : solution.assignment) sum += v;
  return solution.optimum == sum - 1;
}

std::string DumpLp(const RationalLp& lp) {
  std::ostringstream out;
  auto sum_terms = [&](UserSet s) {
    std::string terms;
    for (int id : s.Ids()) {
      terms += (terms.empty() ? "" : " + ") + std::string("b") +
               std::to_string(id);
    }
    return terms;
  };
  out << "\\ secure aggregation source-key LP (epigraph form)\n";
  out << "Minimize\n obj: t\nSubject To\n";
  for (size_t i = 0; i < lp.upper_sets.size(); ++i) {
    const std::string terms = sum_terms(lp.upper_sets[i]);
    out << " u" << i << ": " << (terms.empty() ? "- t" : terms + " - t")
        << " <= 0\n";
  }
  for (size_t j = 0; j < lp.lower_sets.size(); ++j) {
    const std::string terms = sum_terms(lp.lower_sets[j]);
    out << " l" << j << ": " << (terms.empty() ? "0 t" : terms) << " >= 1\n";
  }
  out << "Bounds\n";
  for (int id : lp.variables.Ids()) out << " b" << id << " >= 0\n";
  out << " t >= 0\nEnd\n";
  return out.str();
}

}  // namespace dsa::lp
