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


#include "hyperindex/index.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <stdexcept>

#include "hyperindex/normalform.hpp"

namespace hyperindex {

std::string to_string(IndexMethod m) {
  switch (m) {
    case IndexMethod::kShapley:
      return "shapley";
    case IndexMethod::kComplement:
      return "complement";
    case IndexMethod::kElimination:
      return "elimination";
    case IndexMethod::kPerturbation:
      return "perturbation";
  }
  return "?";
}

namespace {

Mat positive_shift(const Mat& m) {
  Rational lo = 0;
  for (const auto& row : m)
    for (const auto& x : row)
      if (x < lo) lo = x;
  Rational c = 1 - lo;
  Mat out = m;
  for (auto& row : out)
    for (auto& x : row) x += c;
  return out;
}

bool strict_off_support(const Vec& payoffs, const std::vector<int>& supp) {
  const Rational& v = payoffs[supp[0]];
  for (int s : supp)
    if (payoffs[s] != v) return false;
  for (std::size_t k = 0; k < payoffs.size(); ++k) {
    if (std::find(supp.begin(), supp.end(), static_cast<int>(k)) != supp.end())
      continue;
    if (payoffs[k] >= v) return false;
  }
  return true;
}

Mat restrict(const Mat& m, const std::vector<int>& rows,
             const std::vector<int>& cols) {
  Mat out;
  for (int r : rows) {
    Vec row;
    for (int c : cols) row.push_back(m[r][c]);
    out.push_back(std::move(row));
  }
  return out;
}

// Smallest positive difference between two payoffs of the same player.
Rational min_gap(const BimatrixGame& game) {
  std::optional<Rational> best;
  for (const Mat* m : {&game.a, &game.b}) {
    std::set<Rational> values;
    for (const auto& row : *m) values.insert(row.begin(), row.end());
    for (auto it = values.begin(); std::next(it) != values.end() && it != values.end(); ++it) {
      Rational d = *std::next(it) - *it;
      if (!best || d < *best) best = d;
    }
  }
  return best ? *best : Rational(1);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (a + 1) + 0xbf58476d1ce4e5b9ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Mat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                  const Rational& delta) {
  Mat m(r, Vec(c));
  for (auto& row : m)
    for (auto& x : row) {
      long k = static_cast<long>(rng() % 2001) - 1000;
      x = delta * make_rational(k, 1000);
    }
  return m;
}

// Coordinate ranges of a component; the gap between two boxes is a lower
// bound on the l-infinity distance between the components.
struct Box {
  Vec lo, hi;
};

Box box_of(const NashComponent& c) {
  Box b;
  for (const auto& s : c.subsets) {
    for (const auto& x : s.xs)
      for (const auto& y : s.ys) {
        Vec p = x;
        p.insert(p.end(), y.begin(), y.end());
        if (b.lo.empty()) {
          b.lo = b.hi = p;
          continue;
        }
        for (std::size_t k = 0; k < p.size(); ++k) {
          if (p[k] < b.lo[k]) b.lo[k] = p[k];
          if (p[k] > b.hi[k]) b.hi[k] = p[k];
        }
      }
  }
  return b;
}

Rational box_gap(const Box& a, const Box& b) {
  Rational gap = 0;
  for (std::size_t k = 0; k < a.lo.size(); ++k) {
    Rational d = std::max(b.lo[k] - a.hi[k], a.lo[k] - b.hi[k]);
    if (d > gap) gap = d;
  }
  return gap;
}

Box box_of(const MixedProfile& p) {
  Box b;
  b.lo = p.x;
  b.lo.insert(b.lo.end(), p.y.begin(), p.y.end());
  b.hi = b.lo;
  return b;
}

enum class DrawStatus { kOk, kDegenerate, kTooFar };

struct Draw {
  DrawStatus status = DrawStatus::kOk;
  std::vector<int> per_component;
};

Draw perturbation_draw(const BimatrixGame& game, const EquilibriumStructure& eqs,
                       const std::vector<Box>& boxes, const Rational& delta,
                       const Rational& radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat da = random_matrix(rng, game.rows(), game.cols(), delta);
  Mat db = random_matrix(rng, game.rows(), game.cols(), delta);
  BimatrixGame g = perturb(game, da, db);
  Draw d;
  d.per_component.assign(eqs.components.size(), 0);
  for (const auto& e : enumerate_extreme_equilibria(g)) {
    auto s = shapley_index(g, e);
    if (!s) {
      d.status = DrawStatus::kDegenerate;
      return d;
    }
    int near = -1;
    const Box point = box_of(e.profile);
    for (const auto& c : eqs.components) {
      if (box_gap(point, boxes[c.id]) >= radius) continue;
      if (distance_to_component(e.profile, c) < radius) {
        near = c.id;
        break;
      }
    }
    if (near < 0) {
      d.status = DrawStatus::kTooFar;
      return d;
    }
    d.per_component[near] += *s;
  }
  return d;
}

}  // namespace

std::optional<std::vector<int>> perturbation_indices(
    const BimatrixGame& game, const EquilibriumStructure& eqs,
    const IndexOptions& options) {
  if (game.rows() * game.cols() > options.max_perturbation_size)
    return std::nullopt;
  if (eqs.components.size() == 1) return std::vector<int>{1};
  std::vector<Box> boxes;
  for (const auto& c : eqs.components) boxes.push_back(box_of(c));
  std::vector<std::tuple<Rational, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      pairs.emplace_back(box_gap(boxes[i], boxes[j]), i, j);
  std::sort(pairs.begin(), pairs.end());
  std::optional<Rational> closest;
  for (const auto& [gap, i, j] : pairs) {
    if (closest && gap >= *closest) break;
    Rational d = distance_between(eqs.components[i], eqs.components[j]);
    if (!closest || d < *closest) closest = d;
  }
  Rational radius = *closest / 2;
  Rational delta = min_gap(game) / 8 * options.delta_scale;
  for (int level = 0; level <= options.max_shrinks; ++level, delta /= 2) {
    std::vector<std::vector<int>> valid;
    bool too_far = false;
    for (int attempt = 0; attempt < 6 && valid.size() < 2; ++attempt) {
      Draw d = perturbation_draw(
          game, eqs, boxes, delta, radius,
          mix_seed(options.seed, static_cast<std::uint64_t>(level),
                   static_cast<std::uint64_t>(attempt)));
      if (d.status == DrawStatus::kTooFar) {
        too_far = true;
        break;
      }
      if (d.status == DrawStatus::kOk) valid.push_back(std::move(d.per_component));
    }
    if (too_far || valid.size() < 2) continue;
    if (valid[0] == valid[1]) return valid[0];
  }
  return std::nullopt;
}

namespace {

std::optional<int> complement_index(const BimatrixGame& game,
                                    const EquilibriumStructure& eqs,
                                    int component) {
  int total = 0;
  for (const auto& c : eqs.components) {
    if (c.id == component) continue;
    if (!c.is_singleton()) return std::nullopt;
    auto s = shapley_index(game, eqs.extremes[c.extremes[0]]);
    if (!s) return std::nullopt;
    total += *s;
  }
  return 1 - total;
}

std::optional<int> elimination_index(const BimatrixGame& game,
                                     const EquilibriumStructure& eqs,
                                     int component, const IndexOptions& options,
                                     int depth) {
  if (depth >= options.max_depth) return std::nullopt;
  auto profiles = eqs.profiles(eqs.components[component]);
  Elimination e = eliminate_strictly_inferior(game, profiles);
  auto [smaller, map] = reduce(e.game);
  if (smaller.rows() + smaller.cols() >= game.rows() + game.cols())
    return std::nullopt;
  EquilibriumStructure sub = analyze_equilibria(smaller);
  int image = sub.component_of(map.project(e.restrict(profiles[0])));
  if (image < 0)
    throw std::logic_error("elimination lost the component");
  return component_index(smaller, sub, image, options, depth + 1).value;
}

}  // namespace

std::optional<int> shapley_index(const BimatrixGame& game,
                                 const ExtremeEquilibrium& eq) {
  const auto& s = eq.supports[0];
  const auto& t = eq.supports[1];
  if (s.size() != t.size() || s.empty()) return std::nullopt;
  if (!strict_off_support(pure_payoffs(game, 1, eq.profile.y), s) ||
      !strict_off_support(pure_payoffs(game, 2, eq.profile.x), t))
    return std::nullopt;
  int da = sign(determinant(restrict(positive_shift(game.a), s, t)));
  int db = sign(determinant(restrict(positive_shift(game.b), s, t)));
  if (da == 0 || db == 0) return std::nullopt;
  int parity = s.size() % 2 == 1 ? 1 : -1;
  return parity * da * db;
}

std::optional<int> index_by_method(const BimatrixGame& game,
                                   const EquilibriumStructure& eqs,
                                   int component, IndexMethod method,
                                   const IndexOptions& options, int depth) {
  const NashComponent& c = eqs.components.at(component);
  switch (method) {
    case IndexMethod::kShapley:
      if (!c.is_singleton()) return std::nullopt;
      return shapley_index(game, eqs.extremes[c.extremes[0]]);
    case IndexMethod::kComplement:
      return complement_index(game, eqs, component);
    case IndexMethod::kElimination:
      return elimination_index(game, eqs, component, options, depth);
    case IndexMethod::kPerturbation: {
      auto all = perturbation_indices(game, eqs, options);
      if (!all) return std::nullopt;
      return (*all)[component];
    }
  }
  return std::nullopt;
}

IndexResult component_index(const BimatrixGame& game,
                            const EquilibriumStructure& eqs, int component,
                            const IndexOptions& options, int depth) {
  for (IndexMethod m : {IndexMethod::kShapley, IndexMethod::kComplement,
                        IndexMethod::kElimination, IndexMethod::kPerturbation}) {
    auto v = index_by_method(game, eqs, component, m, options, depth);
    if (v) return {v, m};
  }
  return {};
}

std::vector<IndexResult> component_indices(const BimatrixGame& game,
                                           const EquilibriumStructure& eqs,
                                           const IndexOptions& options) {
  std::vector<IndexResult> out(eqs.components.size());
  std::optional<std::optional<std::vector<int>>> sampled;
  for (const auto& c : eqs.components) {
    for (IndexMethod m : {IndexMethod::kShapley, IndexMethod::kComplement,
                          IndexMethod::kElimination}) {
      auto v = index_by_method(game, eqs, c.id, m, options);
      if (v) {
        out[c.id] = {v, m};
        break;
      }
    }
    if (out[c.id].resolved()) continue;
    if (!sampled) sampled = perturbation_indices(game, eqs, options);
    if (*sampled) out[c.id] = {(**sampled)[c.id], IndexMethod::kPerturbation};
  }
  return out;
}

AdmissibleRegion AdmissibleRegion::everything(const BimatrixGame& game) {
  AdmissibleRegion r;
  r.sides[0].dim = game.rows();
  r.sides[1].dim = game.cols();
  return r;
}

namespace {

bool side_satisfies(const InequalityPolytope& p, const Vec& x, bool strict) {
  for (const auto& ineq : p.extra) {
    Rational lhs = dot(ineq.coeffs, x);
    if (strict ? lhs >= ineq.bound : lhs > ineq.bound) return false;
  }
  return true;
}

// Whether conv(points) meets the closure of the side.
bool hull_meets(const InequalityPolytope& p, const Mat& points) {
  if (p.extra.empty()) return true;
  const std::size_t k = points.size();
  LinearProgram lp(k);
  lp.add(Vec(k, Rational(1)), Sense::kEq, 1);
  for (const auto& ineq : p.extra) {
    Vec row(k);
    for (std::size_t g = 0; g < k; ++g) row[g] = dot(ineq.coeffs, points[g]);
    lp.add(row, Sense::kLe, ineq.bound);
  }
  return lp_solve(lp).status == LpStatus::kOptimal;
}

}  // namespace

bool AdmissibleRegion::interior(const MixedProfile& p) const {
  return side_satisfies(sides[0], p.x, true) && side_satisfies(sides[1], p.y, true);
}

bool AdmissibleRegion::closure(const MixedProfile& p) const {
  return side_satisfies(sides[0], p.x, false) &&
         side_satisfies(sides[1], p.y, false);
}

Placement place(const AdmissibleRegion& region, const NashComponent& c) {
  bool all_inside = true, any_meets = false;
  for (const auto& s : c.subsets) {
    for (const auto& x : s.xs)
      for (const auto& y : s.ys)
        if (!region.interior({x, y})) all_inside = false;
    if (hull_meets(region.sides[0], s.xs) && hull_meets(region.sides[1], s.ys))
      any_meets = true;
  }
  if (all_inside) return Placement::kInside;
  if (!any_meets) return Placement::kOutside;
  return Placement::kStraddles;
}

RegionIndex region_index(const EquilibriumStructure& eqs,
                         const std::vector<IndexResult>& indices,
                         const AdmissibleRegion& region) {
  RegionIndex r;
  int total = 0;
  for (const auto& c : eqs.components) {
    switch (place(region, c)) {
      case Placement::kInside:
        r.inside.push_back(c.id);
        if (indices[c.id].resolved())
          total += *indices[c.id].value;
        else
          r.unresolved.push_back(c.id);
        break;
      case Placement::kStraddles:
        r.straddling.push_back(c.id);
        break;
      case Placement::kOutside:
        break;
    }
  }
  if (r.straddling.empty() && r.unresolved.empty()) r.value = total;
  return r;
}

bool check_duplication_invariance(const BimatrixGame& game, int component,
                                  int player, const std::vector<Vec>& mixtures,
                                  const IndexOptions& options) {
  EquilibriumStructure eqs = analyze_equilibria(game);
  IndexResult before = component_index(game, eqs, component, options);
  if (!before.resolved())
    throw std::runtime_error("index of the original component is unresolved");
  auto [bigger, map] = add_duplicates(game, player, mixtures);
  (void)map;
  EquilibriumStructure big = analyze_equilibria(bigger);
  MixedProfile p = eqs.extremes[eqs.components[component].extremes[0]].profile;
  Vec& own = player == 1 ? p.x : p.y;
  own.resize(own.size() + mixtures.size(), Rational(0));
  int image = big.component_of(p);
  if (image < 0) throw std::logic_error("duplicate game lost the component");
  IndexResult after = component_index(bigger, big, image, options);
  if (!after.resolved())
    throw std::runtime_error("index in the duplicated game is unresolved");
  return *before.value == *after.value;
}

bool check_duplication_invariance(const BimatrixGame& game,
                                  const EquilibriumStructure& eqs,
                                  const std::vector<IndexResult>& indices,
                                  int player, const std::vector<Vec>& mixtures,
                                  const IndexOptions& options) {
  auto [bigger, map] = add_duplicates(game, player, mixtures);
  (void)map;
  EquilibriumStructure big = analyze_equilibria(bigger);
  if (big.components.size() != eqs.components.size()) return false;
  auto after = component_indices(bigger, big, options);
  for (const auto& c : eqs.components) {
    MixedProfile p = eqs.extremes[c.extremes[0]].profile;
    Vec& own = player == 1 ? p.x : p.y;
    own.resize(own.size() + mixtures.size(), Rational(0));
    int image = big.component_of(p);
    if (image < 0 || !indices[c.id].resolved() || !after[image].resolved() ||
        *indices[c.id].value != *after[image].value)
      return false;
  }
  return true;
}

}  // namespace hyperindex
