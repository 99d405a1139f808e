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

#include "hyperindex/equilibria.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <deque>
#include <numeric>
#include <map>
#include <set>
#include <stdexcept>

#include "hyperindex/lp.hpp"
#include "hyperindex/normalform.hpp"

namespace hyperindex {

namespace {

using Bits = boost::dynamic_bitset<>;
using IntVec = std::vector<mpz_class>;

struct Ray {
  IntVec v;
  Bits zero;
};

void make_primitive(IntVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

mpz_class eval(const IntVec& row, const IntVec& v) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (row[i] != 0 && v[i] != 0) s += row[i] * v[i];
  return s;
}

// Double description for the cone {(v, t) : v >= 0, t >= 0, b t - m v >= 0}.
// Constraint k < dim is v_k >= 0, dim + r is row r, and the last one is
// t >= 0.
std::vector<Ray> double_description(const Mat& m, const Vec& b,
                                    std::size_t dim) {
  const std::size_t rows = m.size();
  const std::size_t d = dim + 1;
  const std::size_t total = dim + rows + 1;
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < d; ++k) {
    Ray r;
    r.v.assign(d, 0);
    r.v[k] = 1;
    r.zero.resize(total);
    for (std::size_t c = 0; c < dim; ++c)
      if (c != k) r.zero.set(c);
    if (k != dim) r.zero.set(total - 1);
    rays.push_back(std::move(r));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t c = dim + r;
    // Integer constraint row: den * b[r] * t - den * m[r] . v >= 0.
    mpz_class den = b[r].get_den();
    for (const auto& x : m[r])
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntVec row(d);
    for (std::size_t k = 0; k < dim; ++k) {
      mpq_class scaled = -m[r][k] * den;
      row[k] = scaled.get_num();
    }
    mpq_class rhs = b[r] * den;
    row[dim] = rhs.get_num();

    std::vector<std::size_t> pos, neg;
    std::vector<mpz_class> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = eval(row, rays[i].v);
      if (val[i] > 0)
        pos.push_back(i);
      else if (val[i] < 0)
        neg.push_back(i);
      else
        rays[i].zero.set(c);
    }
    std::vector<Ray> created;
    for (std::size_t i : pos) {
      for (std::size_t j : neg) {
        Bits common = rays[i].zero & rays[j].zero;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
          if (o != i && o != j && common.is_subset_of(rays[o].zero))
            adjacent = false;
        if (!adjacent) continue;
        Ray nr;
        nr.v.resize(d);
        for (std::size_t k = 0; k < d; ++k)
          nr.v[k] = val[i] * rays[j].v[k] - val[j] * rays[i].v[k];
        make_primitive(nr.v);
        nr.zero = common;
        nr.zero.set(c);
        created.push_back(std::move(nr));
      }
    }
    std::vector<Ray> keep;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) keep.push_back(std::move(rays[i]));
    for (auto& nr : created) keep.push_back(std::move(nr));
    rays = std::move(keep);
  }
  return rays;
}

}  // namespace

std::vector<PolytopeVertex> best_response_vertices(const Mat& m) {
  const std::size_t dim = m.empty() ? 0 : m[0].size();
  std::vector<Ray> rays = double_description(m, Vec(m.size(), Rational(1)), dim);
  std::vector<PolytopeVertex> out;
  for (const auto& ray : rays) {
    if (ray.v[dim] == 0) continue;
    bool origin = true;
    for (std::size_t k = 0; k < dim; ++k)
      if (ray.v[k] != 0) origin = false;
    if (origin) continue;
    PolytopeVertex pv;
    pv.point.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      pv.point[k] = mpq_class(ray.v[k], ray.v[dim]);
      pv.point[k].canonicalize();
    }
    for (std::size_t k = 0; k < dim; ++k)
      if (pv.point[k] == 0) pv.tight.push_back(static_cast<int>(k));
    for (std::size_t r = 0; r < m.size(); ++r)
      if (dot(m[r], pv.point) == 1)
        pv.tight.push_back(static_cast<int>(dim + r));
    out.push_back(std::move(pv));
  }
  std::sort(out.begin(), out.end(),
            [](const PolytopeVertex& a, const PolytopeVertex& b) {
              return a.point < b.point;
            });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const PolytopeVertex& a, const PolytopeVertex& b) {
                          return a.point == b.point;
                        }),
            out.end());
  return out;
}

namespace {

Mat shifted(const Mat& m) {
  Rational lo = m[0][0];
  for (const auto& row : m)
    for (const auto& x : row)
      if (x < lo) lo = x;
  Rational c = 1;
  if (lo < 0) c -= lo;
  Mat out = m;
  for (auto& row : out)
    for (auto& x : row) x += c;
  return out;
}

Vec normalized(const Vec& v) {
  Rational s = sum(v);
  Vec out = v;
  for (auto& x : out) x /= s;
  return out;
}

}  // namespace

std::vector<ExtremeEquilibrium> enumerate_extreme_equilibria(
    const BimatrixGame& game) {
  const std::size_t m = game.rows(), n = game.cols();
  // P = {x >= 0 : B'^T x <= 1}: label i for x_i = 0, m + j for row j.
  // Q = {y >= 0 : A' y <= 1}: label m + j for y_j = 0, i for row i.
  auto pv = best_response_vertices(transpose(shifted(game.b)));
  auto qv = best_response_vertices(shifted(game.a));
  const std::size_t labels = m + n;
  std::vector<Bits> pl, ql;
  for (const auto& v : pv) {
    Bits b(labels);
    for (int t : v.tight) b.set(t);
    pl.push_back(std::move(b));
  }
  for (const auto& v : qv) {
    Bits b(labels);
    for (int t : v.tight) b.set(t < static_cast<int>(n) ? m + t : t - n);
    ql.push_back(std::move(b));
  }
  std::vector<ExtremeEquilibrium> out;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    for (std::size_t j = 0; j < qv.size(); ++j) {
      if (!(pl[i] | ql[j]).all()) continue;
      ExtremeEquilibrium e;
      e.profile.x = normalized(pv[i].point);
      e.profile.y = normalized(qv[j].point);
      e.supports = {support(e.profile.x), support(e.profile.y)};
      e.payoffs = payoff(game, e.profile);
      out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ExtremeEquilibrium& a, const ExtremeEquilibrium& b) {
              if (a.supports != b.supports) return a.supports < b.supports;
              return a.profile < b.profile;
            });
  return out;
}

namespace {

// Vertices of {v >= 0 : m v <= b}, a bounded polytope.
Mat face_vertices(const Mat& m, const Vec& b, std::size_t dim) {
  Mat out;
  for (const auto& ray : double_description(m, b, dim)) {
    if (ray.v[dim] == 0) continue;
    Vec p(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      p[k] = mpq_class(ray.v[k], ray.v[dim]);
      p[k].canonicalize();
    }
    out.push_back(std::move(p));
  }
  return out;
}

Vec times(const Mat& m, const Vec& v) {
  Vec out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) out[r] = dot(m[r], v);
  return out;
}

// Vertices of {x >= 0 : w x <= 1} complementary to a point u of the other
// polytope {u >= 0 : other u <= 1}. Here w is indexed [opponent][own].
Mat complementary_vertices(const Mat& other, const Mat& w, const Vec& u) {
  Vec tight = times(other, u);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < tight.size(); ++i)
    if (tight[i] == 1) free.push_back(i);
  // Equalities first; opponent strategies that agree on the free
  // coordinates give repeated rows and are dropped.
  std::set<Vec> equal, upper;
  for (std::size_t j = 0; j < w.size(); ++j) {
    Vec row;
    for (std::size_t i : free) row.push_back(w[j][i]);
    if (u[j] > 0) equal.insert(row);
    upper.insert(std::move(row));
  }
  Mat rows;
  Vec rhs;
  for (const auto& row : equal) {
    Vec neg = row;
    for (auto& x : neg) x = -x;
    rows.push_back(std::move(neg));
    rhs.push_back(-1);
    rows.push_back(row);
    rhs.push_back(1);
  }
  for (const auto& row : upper) {
    if (equal.count(row)) continue;
    rows.push_back(row);
    rhs.push_back(1);
  }
  Mat out;
  for (const auto& v : face_vertices(rows, rhs, free.size())) {
    Vec x(other.size());
    for (std::size_t k = 0; k < free.size(); ++k) x[free[k]] = v[k];
    out.push_back(std::move(x));
  }
  return out;
}

Vec scaled_into(const Mat& m, const Vec& v) {
  Vec mv = times(m, v);
  Rational top = *std::max_element(mv.begin(), mv.end());
  Vec out = v;
  for (auto& x : out) x /= top;
  return out;
}

}  // namespace

EquilibriumStructure explore_component(const BimatrixGame& game,
                                       const MixedProfile& seed,
                                       std::size_t max_extremes,
                                       bool* complete) {
  if (!is_equilibrium(game, seed))
    throw std::invalid_argument("explore_component: seed is not an equilibrium");
  // P = {x >= 0 : B'^T x <= 1}, Q = {y >= 0 : A' y <= 1}.
  const Mat ap = shifted(game.a);
  const Mat bt = transpose(shifted(game.b));
  std::map<Vec, std::set<Vec>> edges;
  std::set<Vec> seen_x, seen_y;
  // Breadth first; the flag tells whether a queued vertex is an x.
  std::deque<std::pair<bool, Vec>> todo;
  std::size_t count = 0;
  bool truncated = false;
  for (auto& x : complementary_vertices(ap, bt, scaled_into(ap, seed.y)))
    if (seen_x.insert(x).second) todo.emplace_back(true, x);
  while (!todo.empty() && !truncated) {
    auto [is_x, v] = std::move(todo.front());
    todo.pop_front();
    const Mat found = is_x ? complementary_vertices(bt, ap, v)
                           : complementary_vertices(ap, bt, v);
    for (const auto& w : found) {
      const Vec& x = is_x ? v : w;
      const Vec& y = is_x ? w : v;
      if (edges[x].insert(y).second) ++count;
      if ((is_x ? seen_y : seen_x).insert(w).second) todo.emplace_back(!is_x, w);
      if (count >= max_extremes) {
        truncated = true;
        break;
      }
    }
  }
  const bool done = !truncated && todo.empty();
  if (complete)
    *complete = done;
  else if (!done)
    throw std::length_error("explore_component: too many extremes");
  EquilibriumStructure s;
  for (const auto& [x, ys] : edges) {
    for (const auto& y : ys) {
      ExtremeEquilibrium e;
      e.profile.x = normalized(x);
      e.profile.y = normalized(y);
      e.supports = {support(e.profile.x), support(e.profile.y)};
      e.payoffs = payoff(game, e.profile);
      s.extremes.push_back(std::move(e));
    }
  }
  std::sort(s.extremes.begin(), s.extremes.end(),
            [](const ExtremeEquilibrium& a, const ExtremeEquilibrium& b) {
              if (a.supports != b.supports) return a.supports < b.supports;
              return a.profile < b.profile;
            });
  s.subsets = maximal_nash_subsets(game, s.extremes);
  s.components = components(s.subsets);
  return s;
}

std::vector<MaximalNashSubset> maximal_nash_subsets(
    const BimatrixGame& game, const std::vector<ExtremeEquilibrium>& extremes) {
  (void)game;
  Mat xs, ys;
  std::vector<std::pair<int, int>> edge;
  auto index_of = [](Mat& list, const Vec& v) {
    auto it = std::find(list.begin(), list.end(), v);
    if (it != list.end()) return static_cast<int>(it - list.begin());
    list.push_back(v);
    return static_cast<int>(list.size()) - 1;
  };
  for (const auto& e : extremes)
    edge.push_back({index_of(xs, e.profile.x), index_of(ys, e.profile.y)});
  std::vector<Bits> nbr(xs.size(), Bits(ys.size()));
  for (auto [x, y] : edge) nbr[x].set(y);

  std::set<Bits> family(nbr.begin(), nbr.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Bits> items(family.begin(), family.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        Bits meet = items[i] & items[j];
        if (meet.any() && family.insert(meet).second) grew = true;
      }
    }
  }
  std::vector<MaximalNashSubset> out;
  for (const auto& yset : family) {
    MaximalNashSubset s;
    std::vector<int> xsel, ysel;
    for (std::size_t x = 0; x < xs.size(); ++x)
      if (yset.is_subset_of(nbr[x])) xsel.push_back(static_cast<int>(x));
    for (std::size_t y = 0; y < ys.size(); ++y)
      if (yset.test(y)) ysel.push_back(static_cast<int>(y));
    for (int x : xsel) s.xs.push_back(xs[x]);
    for (int y : ysel) s.ys.push_back(ys[y]);
    for (std::size_t k = 0; k < edge.size(); ++k) {
      bool xin = std::find(xsel.begin(), xsel.end(), edge[k].first) != xsel.end();
      if (xin && yset.test(edge[k].second))
        s.extremes.push_back(static_cast<int>(k));
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const MaximalNashSubset& a, const MaximalNashSubset& b) {
              return a.extremes < b.extremes;
            });
  return out;
}

std::vector<NashComponent> components(
    const std::vector<MaximalNashSubset>& subsets) {
  // Each side of a maximal Nash subset is a face of the best-response
  // polytope, so two subsets meet exactly when they share an extreme
  // equilibrium.
  const std::size_t k = subsets.size();
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto& a = subsets[i].extremes;
      const auto& b = subsets[j].extremes;
      bool share = std::find_first_of(a.begin(), a.end(), b.begin(), b.end()) !=
                   a.end();
      if (share) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    }
  }
  std::vector<NashComponent> out;
  std::vector<int> slot(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    int root = find(static_cast<int>(i));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    NashComponent& c = out[slot[root]];
    c.subsets.push_back(subsets[i]);
    c.extremes.insert(c.extremes.end(), subsets[i].extremes.begin(),
                      subsets[i].extremes.end());
  }
  for (auto& c : out) {
    std::sort(c.extremes.begin(), c.extremes.end());
    c.extremes.erase(std::unique(c.extremes.begin(), c.extremes.end()),
                     c.extremes.end());
  }
  std::sort(out.begin(), out.end(),
            [](const NashComponent& a, const NashComponent& b) {
              return a.extremes < b.extremes;
            });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

std::vector<MixedProfile> EquilibriumStructure::profiles(
    const NashComponent& c) const {
  std::vector<MixedProfile> out;
  for (int e : c.extremes) out.push_back(extremes[e].profile);
  return out;
}

int EquilibriumStructure::component_of(const MixedProfile& p) const {
  for (const auto& c : components)
    for (const auto& s : c.subsets)
      if (in_subset(p, s)) return c.id;
  return -1;
}

EquilibriumStructure analyze_equilibria(const BimatrixGame& game) {
  EquilibriumStructure s;
  s.extremes = enumerate_extreme_equilibria(game);
  s.subsets = maximal_nash_subsets(game, s.extremes);
  s.components = components(s.subsets);
  return s;
}

bool in_subset(const MixedProfile& p, const MaximalNashSubset& s) {
  return in_convex_hull(p.x, s.xs).inside && in_convex_hull(p.y, s.ys).inside;
}

Rational distance_to_subset(const MixedProfile& p, const MaximalNashSubset& s) {
  Rational dx = hull_distance_linf({p.x}, s.xs);
  Rational dy = hull_distance_linf({p.y}, s.ys);
  return dx > dy ? dx : dy;
}

Rational distance_to_component(const MixedProfile& p, const NashComponent& c) {
  std::optional<Rational> best;
  for (const auto& s : c.subsets) {
    Rational d = distance_to_subset(p, s);
    if (!best || d < *best) best = d;
  }
  return *best;
}

Rational distance_between(const NashComponent& c, const NashComponent& d) {
  std::optional<Rational> best;
  for (const auto& s : c.subsets) {
    for (const auto& t : d.subsets) {
      Rational dx = hull_distance_linf(s.xs, t.xs);
      Rational dy = hull_distance_linf(s.ys, t.ys);
      Rational v = dx > dy ? dx : dy;
      if (!best || v < *best) best = v;
    }
  }
  return *best;
}

ComponentOutcome component_outcome(const GameTree& tree,
                                   const TreeNormalForm& nf,
                                   const EquilibriumStructure& eqs,
                                   const NashComponent& component) {
  if (nf.game.rows() != nf.plans[0].size() ||
      nf.game.cols() != nf.plans[1].size())
    throw std::invalid_argument("component_outcome: label mismatch");
  ComponentOutcome out;
  int first = -1;
  for (int e : component.extremes) {
    Outcome o = mixed_outcome(tree, nf, eqs.extremes[e].profile);
    if (first < 0) {
      first = e;
      out.outcome = std::move(o);
    } else if (o != out.outcome) {
      out.witness = {first, e};
      return out;
    }
  }
  out.unique = true;
  return out;
}

}  // namespace hyperindex
