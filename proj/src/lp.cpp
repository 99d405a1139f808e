// Copyright 2026 The hyperindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hyperindex/lp.hpp"

#include <utility>

namespace hyperindex {

LinearProgram::LinearProgram(std::size_t num_vars)
    : objective(zeros(num_vars)),
      lower(num_vars, Rational(0)),
      upper(num_vars) {}

void LinearProgram::add(Vec row, Sense sense, Rational rhs) {
  a.push_back(std::move(row));
  senses.push_back(sense);
  b.push_back(std::move(rhs));
}

namespace {

class Tableau {
 public:
  Tableau(Mat rows, Vec rhs, std::vector<int> basis)
      : t_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return t_.empty() ? 0 : t_[0].size(); }
  const std::vector<int>& basis() const { return basis_; }
  const Vec& rhs() const { return rhs_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_[r][c];
    for (auto& x : t_[r]) x *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t k = 0; k < cols(); ++k)
        if (t_[r][k] != 0) t_[i][k] -= f * t_[r][k];
      rhs_[i] -= f * rhs_[r];
    }
    if (!z_.empty() && z_[c] != 0) {
      Rational f = z_[c];
      for (std::size_t k = 0; k < cols(); ++k)
        if (t_[r][k] != 0) z_[k] -= f * t_[r][k];
    }
    basis_[r] = static_cast<int>(c);
  }

  // Maximizes cost . x over columns with allowed[j]. Returns false when
  // unbounded.
  bool optimize(const Vec& cost, const std::vector<bool>& allowed) {
    z_ = cost;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t k = 0; k < cols(); ++k) z_[k] -= cb * t_[i][k];
    }
    for (;;) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j) {
        if (allowed[j] && z_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols()) break;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / t_[i][enter];
        if (leave == rows() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) {
        z_.clear();
        return false;
      }
      pivot(leave, enter);
    }
    z_.clear();
    return true;
  }

  Rational value(const Vec& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows(); ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  const Vec& row(std::size_t r) const { return t_[r]; }

  void erase_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<long>(r));
    rhs_.erase(rhs_.begin() + static_cast<long>(r));
    basis_.erase(basis_.begin() + static_cast<long>(r));
  }

 private:
  Mat t_;
  Vec rhs_;
  std::vector<int> basis_;
  Vec z_;
};

// Original variable j equals offset + sum of sign * column over its terms.
struct Substitution {
  Rational offset = 0;
  std::vector<std::pair<std::size_t, int>> terms;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<Substitution> subst(n);
  std::size_t structural = 0;
  Mat rows;
  std::vector<Sense> senses;
  Vec rhs;
  std::vector<std::pair<std::size_t, Rational>> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& lo = j < lp.lower.size() ? lp.lower[j] : std::nullopt;
    const auto& hi = j < lp.upper.size() ? lp.upper[j] : std::nullopt;
    if (lo) {
      subst[j].offset = *lo;
      subst[j].terms.push_back({structural, 1});
      if (hi) upper_rows.push_back({structural, *hi - *lo});
      ++structural;
    } else if (hi) {
      subst[j].offset = *hi;
      subst[j].terms.push_back({structural++, -1});
    } else {
      subst[j].terms.push_back({structural++, 1});
      subst[j].terms.push_back({structural++, -1});
    }
  }
  for (std::size_t i = 0; i < lp.a.size(); ++i) {
    if (lp.a[i].size() != n)
      throw std::invalid_argument("lp_solve: row length mismatch");
    Vec row = zeros(structural);
    Rational b = lp.b[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (lp.a[i][j] == 0) continue;
      b -= lp.a[i][j] * subst[j].offset;
      for (auto [col, sgn] : subst[j].terms)
        row[col] += sgn > 0 ? lp.a[i][j] : Rational(-lp.a[i][j]);
    }
    rows.push_back(std::move(row));
    senses.push_back(lp.senses[i]);
    rhs.push_back(b);
  }
  for (auto& [col, bound] : upper_rows) {
    rows.push_back(unit(structural, col));
    senses.push_back(Sense::kLe);
    rhs.push_back(bound);
  }

  // Slack, surplus and artificial columns.
  const std::size_t m = rows.size();
  std::size_t extra = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      for (auto& x : rows[i]) x = -x;
      rhs[i] = -rhs[i];
      if (senses[i] == Sense::kLe)
        senses[i] = Sense::kGe;
      else if (senses[i] == Sense::kGe)
        senses[i] = Sense::kLe;
    }
    extra += senses[i] == Sense::kGe ? 2 : 1;
  }
  const std::size_t total = structural + extra;
  std::vector<bool> artificial(total, false);
  std::vector<int> basis(m);
  Mat t = zeros(m, total);
  std::size_t next = structural;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < structural; ++j) t[i][j] = rows[i][j];
    if (senses[i] == Sense::kLe) {
      t[i][next] = 1;
      basis[i] = static_cast<int>(next++);
    } else if (senses[i] == Sense::kGe) {
      t[i][next++] = -1;
      t[i][next] = 1;
      artificial[next] = true;
      basis[i] = static_cast<int>(next++);
    } else {
      t[i][next] = 1;
      artificial[next] = true;
      basis[i] = static_cast<int>(next++);
    }
  }
  Tableau tab(std::move(t), rhs, basis);

  LpResult result;
  Vec phase1 = zeros(total);
  bool any_artificial = false;
  for (std::size_t j = 0; j < total; ++j) {
    if (artificial[j]) {
      phase1[j] = -1;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    tab.optimize(phase1, std::vector<bool>(total, true));
    if (tab.value(phase1) < 0) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    for (std::size_t i = 0; i < tab.rows();) {
      if (!artificial[tab.basis()[i]]) {
        ++i;
        continue;
      }
      std::size_t c = total;
      for (std::size_t j = 0; j < total; ++j) {
        if (!artificial[j] && tab.row(i)[j] != 0) {
          c = j;
          break;
        }
      }
      if (c == total) {
        tab.erase_row(i);
      } else {
        tab.pivot(i, c);
        ++i;
      }
    }
  }

  Vec cost = zeros(total);
  for (std::size_t j = 0; j < n; ++j)
    for (auto [col, sgn] : subst[j].terms)
      cost[col] += sgn > 0 ? lp.objective[j] : Rational(-lp.objective[j]);
  std::vector<bool> allowed(total);
  for (std::size_t j = 0; j < total; ++j) allowed[j] = !artificial[j];
  if (!tab.optimize(cost, allowed)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  Vec values = zeros(total);
  for (std::size_t i = 0; i < tab.rows(); ++i)
    values[tab.basis()[i]] = tab.rhs()[i];
  result.status = LpStatus::kOptimal;
  result.point = zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational v = subst[j].offset;
    for (auto [col, sgn] : subst[j].terms)
      v += sgn > 0 ? values[col] : Rational(-values[col]);
    result.point[j] = v;
  }
  result.value = dot(lp.objective, result.point);
  return result;
}

bool lp_feasible_point(const LinearProgram& lp, const Vec& point) {
  if (point.size() != lp.num_vars()) return false;
  for (std::size_t i = 0; i < lp.a.size(); ++i) {
    Rational lhs = dot(lp.a[i], point);
    switch (lp.senses[i]) {
      case Sense::kLe:
        if (lhs > lp.b[i]) return false;
        break;
      case Sense::kEq:
        if (lhs != lp.b[i]) return false;
        break;
      case Sense::kGe:
        if (lhs < lp.b[i]) return false;
        break;
    }
  }
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (j < lp.lower.size() && lp.lower[j] && point[j] < *lp.lower[j])
      return false;
    if (j < lp.upper.size() && lp.upper[j] && point[j] > *lp.upper[j])
      return false;
  }
  return true;
}

HullResult in_convex_hull(const Vec& point, const Mat& generators) {
  for (const auto& g : generators)
    if (g.size() != point.size())
      throw std::invalid_argument("in_convex_hull: dimension mismatch");
  HullResult out;
  if (generators.empty()) return out;
  const std::size_t k = generators.size();
  LinearProgram lp(k);
  lp.add(Vec(k, Rational(1)), Sense::kEq, 1);
  for (std::size_t d = 0; d < point.size(); ++d) {
    Vec row(k);
    for (std::size_t g = 0; g < k; ++g) row[g] = generators[g][d];
    lp.add(std::move(row), Sense::kEq, point[d]);
  }
  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::kOptimal) return out;
  out.inside = true;
  out.weights = std::move(r.point);
  return out;
}

bool InequalityPolytope::contains(const Vec& x) const {
  if (x.size() != dim) return false;
  Rational total = 0;
  for (const auto& v : x) {
    if (v < 0) return false;
    total += v;
  }
  if (total != 1) return false;
  for (const auto& ineq : extra) {
    Rational lhs = dot(ineq.coeffs, x);
    if (ineq.sense == StrictSense::kLe ? lhs > ineq.bound : lhs >= ineq.bound)
      return false;
  }
  return true;
}

namespace {

// Rows of the closed system as "coeffs . x <= bound", nonnegativity first.
struct ClosedSystem {
  Mat coeffs;
  Vec bounds;
  std::vector<bool> strict;
};

ClosedSystem closed_system(const InequalityPolytope& p) {
  ClosedSystem s;
  for (std::size_t i = 0; i < p.dim; ++i) {
    Vec row = zeros(p.dim);
    row[i] = -1;
    s.coeffs.push_back(std::move(row));
    s.bounds.push_back(0);
    s.strict.push_back(false);
  }
  for (const auto& ineq : p.extra) {
    s.coeffs.push_back(ineq.coeffs);
    s.bounds.push_back(ineq.bound);
    s.strict.push_back(ineq.sense == StrictSense::kLt);
  }
  return s;
}

// Maximal slack of row `target` over the closed polytope.
LpResult max_slack(const InequalityPolytope& p, const ClosedSystem& s,
                   std::size_t target) {
  LinearProgram lp(p.dim);
  lp.add(Vec(p.dim, Rational(1)), Sense::kEq, 1);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    lp.add(s.coeffs[i], Sense::kLe, s.bounds[i]);
  for (std::size_t j = 0; j < p.dim; ++j) lp.objective[j] = -s.coeffs[target][j];
  LpResult r = lp_solve(lp);
  if (r.status == LpStatus::kOptimal) r.value += s.bounds[target];
  return r;
}

}  // namespace

DimensionResult polytope_dimension(const InequalityPolytope& p) {
  DimensionResult out;
  ClosedSystem s = closed_system(p);
  const std::size_t n = p.dim;
  if (n == 0) return out;
  // Variables x (n) and t; maximize t with every inequality slack >= t.
  LinearProgram lp(n + 1);
  lp.upper[n] = 1;
  lp.lower[n] = std::nullopt;
  lp.objective[n] = 1;
  Vec simplex(n + 1, Rational(1));
  simplex[n] = 0;
  lp.add(simplex, Sense::kEq, 1);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    Vec row = s.coeffs[i];
    row.push_back(1);
    lp.add(std::move(row), Sense::kLe, s.bounds[i]);
  }
  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::kOptimal || r.value < 0) return out;
  if (r.value > 0) {
    out.kind = DimensionResult::kFullDimensional;
    out.dimension = static_cast<int>(n) - 1;
    out.interior_point.assign(r.point.begin(), r.point.begin() + n);
    return out;
  }
  Mat equalities{Vec(n, Rational(1))};
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    LpResult slack = max_slack(p, s, i);
    if (slack.value == 0) {
      if (s.strict[i]) return out;
      equalities.push_back(s.coeffs[i]);
    }
  }
  out.kind = DimensionResult::kDimension;
  out.dimension = static_cast<int>(n) - rank(equalities);
  return out;
}

Rational hull_distance_linf(const Mat& a, const Mat& b) {
  const std::size_t ka = a.size(), kb = b.size();
  const std::size_t dim = a.at(0).size();
  // Variables: weights on a, weights on b, t.
  LinearProgram lp(ka + kb + 1);
  lp.objective[ka + kb] = -1;
  Vec wa(ka + kb + 1, Rational(0)), wb = wa;
  for (std::size_t i = 0; i < ka; ++i) wa[i] = 1;
  for (std::size_t i = 0; i < kb; ++i) wb[ka + i] = 1;
  lp.add(wa, Sense::kEq, 1);
  lp.add(wb, Sense::kEq, 1);
  for (std::size_t d = 0; d < dim; ++d) {
    Vec row = zeros(ka + kb + 1);
    for (std::size_t i = 0; i < ka; ++i) row[i] = a[i][d];
    for (std::size_t i = 0; i < kb; ++i) row[ka + i] = -b[i][d];
    Vec neg = row;
    for (auto& x : neg) x = -x;
    row[ka + kb] = -1;
    neg[ka + kb] = -1;
    lp.add(std::move(row), Sense::kLe, 0);
    lp.add(std::move(neg), Sense::kLe, 0);
  }
  LpResult r = lp_solve(lp);
  return -r.value;
}

}  // namespace hyperindex
