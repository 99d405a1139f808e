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

#ifndef HYPERINDEX_LP_HPP_
#define HYPERINDEX_LP_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "hyperindex/rational.hpp"

namespace hyperindex {

enum class Sense { kLe, kEq, kGe };

// maximize objective . x  subject to  a[i] . x (sense[i]) b[i],
// lower[j] <= x[j] <= upper[j]. A missing lower bound means the variable is
// free below; LinearProgram(n) starts with x >= 0.
struct LinearProgram {
  LinearProgram() = default;
  explicit LinearProgram(std::size_t num_vars);

  void add(Vec row, Sense sense, Rational rhs);
  std::size_t num_vars() const { return objective.size(); }

  Vec objective;
  Mat a;
  Vec b;
  std::vector<Sense> senses;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  Vec point;
};

// Two-phase primal simplex on a dense rational tableau with Bland's rule.
LpResult lp_solve(const LinearProgram& lp);

// True iff point satisfies every row and bound of lp exactly.
bool lp_feasible_point(const LinearProgram& lp, const Vec& point);

struct HullResult {
  bool inside = false;
  Vec weights;
};

// Throws std::invalid_argument on dimension mismatch.
HullResult in_convex_hull(const Vec& point, const Mat& generators);

enum class StrictSense { kLe, kLt };

struct PolyInequality {
  Vec coeffs;
  Rational bound;
  StrictSense sense = StrictSense::kLe;
};

// A subset of the probability simplex over `dim` coordinates cut by extra
// inequalities coeffs . x (<= or <) bound.
struct InequalityPolytope {
  std::size_t dim = 0;
  std::vector<PolyInequality> extra;

  bool contains(const Vec& x) const;
};

struct DimensionResult {
  enum Kind { kFullDimensional, kDimension, kEmpty } kind = kEmpty;
  int dimension = -1;
  Vec interior_point;  // set when kFullDimensional
};

DimensionResult polytope_dimension(const InequalityPolytope& p);

// Exact l-infinity distance between the convex hulls of two point sets.
Rational hull_distance_linf(const Mat& a, const Mat& b);

}  // namespace hyperindex

#endif  // HYPERINDEX_LP_HPP_
