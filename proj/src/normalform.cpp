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

#include "hyperindex/normalform.hpp"

#include <stdexcept>

#include "hyperindex/lp.hpp"

namespace hyperindex {

BimatrixGame make_bimatrix(const Mat& a, const Mat& b,
                           std::vector<std::string> row_labels,
                           std::vector<std::string> col_labels) {
  BimatrixGame g;
  g.a = a;
  g.b = b;
  if (row_labels.empty())
    for (std::size_t i = 0; i < a.size(); ++i)
      row_labels.push_back(std::to_string(i + 1));
  if (col_labels.empty() && !a.empty())
    for (std::size_t j = 0; j < a[0].size(); ++j)
      col_labels.push_back(std::to_string(j + 1));
  g.labels = {std::move(row_labels), std::move(col_labels)};
  return g;
}

bool operator<(const MixedProfile& p, const MixedProfile& q) {
  if (p.x != q.x) return p.x < q.x;
  return p.y < q.y;
}

std::vector<int> support(const Vec& v) {
  std::vector<int> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(static_cast<int>(i));
  return s;
}

MixedProfile EquivalenceMap::project(const MixedProfile& larger) const {
  MixedProfile out;
  for (int p = 0; p < 2; ++p) {
    const Vec& src = p == 0 ? larger.x : larger.y;
    Vec dst = zeros(retained[p].size());
    for (std::size_t s = 0; s < src.size(); ++s) {
      if (src[s] == 0) continue;
      for (std::size_t k = 0; k < dst.size(); ++k)
        if (image[p][s][k] != 0) dst[k] += src[s] * image[p][s][k];
    }
    (p == 0 ? out.x : out.y) = std::move(dst);
  }
  return out;
}

MixedProfile EquivalenceMap::lift(const MixedProfile& smaller) const {
  MixedProfile out;
  for (int p = 0; p < 2; ++p) {
    const Vec& src = p == 0 ? smaller.x : smaller.y;
    Vec dst = zeros(image[p].size());
    for (std::size_t k = 0; k < src.size(); ++k) dst[retained[p][k]] = src[k];
    (p == 0 ? out.x : out.y) = std::move(dst);
  }
  return out;
}

std::array<Rational, 2> payoff(const BimatrixGame& game,
                               const MixedProfile& profile) {
  if (profile.x.size() != game.rows() || profile.y.size() != game.cols())
    throw std::invalid_argument("payoff: profile dimension mismatch");
  std::array<Rational, 2> u{Rational(0), Rational(0)};
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (profile.x[i] == 0) continue;
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (profile.y[j] == 0) continue;
      Rational w = profile.x[i] * profile.y[j];
      u[0] += w * game.a[i][j];
      u[1] += w * game.b[i][j];
    }
  }
  return u;
}

Vec pure_payoffs(const BimatrixGame& game, int player, const Vec& opponent) {
  if (player == 1) {
    Vec v = zeros(game.rows());
    for (std::size_t i = 0; i < game.rows(); ++i)
      for (std::size_t j = 0; j < game.cols(); ++j)
        if (opponent[j] != 0) v[i] += game.a[i][j] * opponent[j];
    return v;
  }
  Vec v = zeros(game.cols());
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (opponent[i] == 0) continue;
    for (std::size_t j = 0; j < game.cols(); ++j)
      v[j] += game.b[i][j] * opponent[i];
  }
  return v;
}

namespace {

// Both players' payoffs of a mixed strategy against each opposing pure one.
Vec payoff_row(const BimatrixGame& game, int player, const Vec& s) {
  const std::size_t opp = game.num_strategies(3 - player);
  Vec row = zeros(2 * opp);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == 0) continue;
    for (std::size_t o = 0; o < opp; ++o) {
      const Rational& ua = player == 1 ? game.a[k][o] : game.a[o][k];
      const Rational& ub = player == 1 ? game.b[k][o] : game.b[o][k];
      row[o] += s[k] * ua;
      row[opp + o] += s[k] * ub;
    }
  }
  return row;
}

Vec pure_row(const BimatrixGame& game, int player, std::size_t k) {
  return payoff_row(game, player, unit(game.num_strategies(player), k));
}

}  // namespace

bool is_equivalent(const BimatrixGame& game, int player, const Vec& s,
                   const Vec& t) {
  return payoff_row(game, player, s) == payoff_row(game, player, t);
}

BimatrixGame restrict_game(const BimatrixGame& game,
                           const std::array<std::vector<int>, 2>& keep) {
  BimatrixGame g;
  for (int i : keep[0]) g.labels[0].push_back(game.labels[0][i]);
  for (int j : keep[1]) g.labels[1].push_back(game.labels[1][j]);
  g.a = zeros(keep[0].size(), keep[1].size());
  g.b = g.a;
  for (std::size_t i = 0; i < keep[0].size(); ++i) {
    for (std::size_t j = 0; j < keep[1].size(); ++j) {
      g.a[i][j] = game.a[keep[0][i]][keep[1][j]];
      g.b[i][j] = game.b[keep[0][i]][keep[1][j]];
    }
  }
  return g;
}

std::pair<BimatrixGame, EquivalenceMap> reduce(const BimatrixGame& game) {
  std::array<std::vector<int>, 2> keep;
  for (int p = 0; p < 2; ++p)
    for (std::size_t k = 0; k < game.num_strategies(p + 1); ++k)
      keep[p].push_back(static_cast<int>(k));

  for (int p = 0; p < 2; ++p) {
    std::vector<int> distinct;
    for (int k : keep[p]) {
      bool dup = false;
      for (int d : distinct)
        if (pure_row(game, p + 1, k) == pure_row(game, p + 1, d)) dup = true;
      if (!dup) distinct.push_back(k);
    }
    keep[p] = std::move(distinct);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int p = 0; p < 2 && !changed; ++p) {
      for (std::size_t idx = 0; idx < keep[p].size() && !changed; ++idx) {
        if (keep[p].size() == 1) break;
        Mat others;
        for (std::size_t o = 0; o < keep[p].size(); ++o)
          if (o != idx) others.push_back(pure_row(game, p + 1, keep[p][o]));
        if (in_convex_hull(pure_row(game, p + 1, keep[p][idx]), others).inside) {
          keep[p].erase(keep[p].begin() + static_cast<long>(idx));
          changed = true;
        }
      }
    }
  }

  EquivalenceMap map;
  map.retained = keep;
  for (int p = 0; p < 2; ++p) {
    Mat gens;
    for (int k : keep[p]) gens.push_back(pure_row(game, p + 1, k));
    for (std::size_t s = 0; s < game.num_strategies(p + 1); ++s) {
      Vec w = zeros(keep[p].size());
      bool found = false;
      for (std::size_t k = 0; k < keep[p].size(); ++k) {
        if (keep[p][k] == static_cast<int>(s)) {
          w[k] = 1;
          found = true;
        }
      }
      if (!found) {
        HullResult h = in_convex_hull(pure_row(game, p + 1, s), gens);
        if (!h.inside) throw std::logic_error("reduce: lost a hull point");
        w = std::move(h.weights);
      }
      map.image[p].push_back(std::move(w));
    }
  }
  return {restrict_game(game, keep), std::move(map)};
}

std::pair<BimatrixGame, EquivalenceMap> add_duplicates(
    const BimatrixGame& game, int player, const std::vector<Vec>& mixtures) {
  BimatrixGame g = game;
  EquivalenceMap map;
  const std::size_t base = game.num_strategies(player);
  for (int p = 0; p < 2; ++p) {
    const std::size_t n = game.num_strategies(p + 1);
    for (std::size_t k = 0; k < n; ++k) {
      map.retained[p].push_back(static_cast<int>(k));
      map.image[p].push_back(unit(n, k));
    }
  }
  int counter = 0;
  for (const Vec& mix : mixtures) {
    if (mix.size() != base)
      throw std::invalid_argument("add_duplicates: mixture size mismatch");
    std::size_t top = 0;
    for (std::size_t k = 1; k < mix.size(); ++k)
      if (mix[k] > mix[top]) top = k;
    std::string label =
        game.labels[player - 1][top] + "#dup" + std::to_string(++counter);
    Vec row = payoff_row(game, player, mix);
    const std::size_t opp = game.num_strategies(3 - player);
    if (player == 1) {
      g.a.emplace_back(row.begin(), row.begin() + static_cast<long>(opp));
      g.b.emplace_back(row.begin() + static_cast<long>(opp), row.end());
    } else {
      for (std::size_t o = 0; o < opp; ++o) {
        g.a[o].push_back(row[o]);
        g.b[o].push_back(row[opp + o]);
      }
    }
    g.labels[player - 1].push_back(std::move(label));
    map.image[player - 1].push_back(mix);
  }
  return {std::move(g), std::move(map)};
}

BimatrixGame perturb(const BimatrixGame& game, const Mat& da, const Mat& db) {
  if (da.size() != game.rows() || db.size() != game.rows())
    throw std::invalid_argument("perturb: dimension mismatch");
  BimatrixGame g = game;
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (da[i].size() != game.cols() || db[i].size() != game.cols())
      throw std::invalid_argument("perturb: dimension mismatch");
    for (std::size_t j = 0; j < game.cols(); ++j) {
      g.a[i][j] += da[i][j];
      g.b[i][j] += db[i][j];
    }
  }
  return g;
}

std::vector<int> best_replies(const BimatrixGame& game, int player,
                              const Vec& opponent) {
  Vec v = pure_payoffs(game, player, opponent);
  Rational best = v[0];
  for (const auto& x : v)
    if (x > best) best = x;
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] == best) out.push_back(static_cast<int>(k));
  return out;
}

bool is_equilibrium(const BimatrixGame& game, const MixedProfile& profile) {
  for (int p = 1; p <= 2; ++p) {
    Vec v = pure_payoffs(game, p, profile.of(3 - p));
    Rational best = v[0];
    for (const auto& x : v)
      if (x > best) best = x;
    const Vec& own = profile.of(p);
    for (std::size_t k = 0; k < own.size(); ++k)
      if (own[k] != 0 && v[k] != best) return false;
  }
  return true;
}

MixedProfile Elimination::restrict(const MixedProfile& p) const {
  MixedProfile out;
  for (int k : kept[0]) out.x.push_back(p.x[k]);
  for (int k : kept[1]) out.y.push_back(p.y[k]);
  return out;
}

Elimination eliminate_strictly_inferior(
    const BimatrixGame& game, const std::vector<MixedProfile>& extremes) {
  Elimination e;
  std::array<std::vector<bool>, 2> inferior{
      std::vector<bool>(game.rows(), true),
      std::vector<bool>(game.cols(), true)};
  for (const auto& prof : extremes) {
    if (!is_equilibrium(game, prof))
      throw std::invalid_argument(
          "eliminate_strictly_inferior: profile is not an equilibrium");
    for (int p = 1; p <= 2; ++p)
      for (int k : best_replies(game, p, prof.of(3 - p)))
        inferior[p - 1][k] = false;
  }
  for (int p = 0; p < 2; ++p) {
    for (std::size_t k = 0; k < inferior[p].size(); ++k) {
      (inferior[p][k] ? e.removed[p] : e.kept[p])
          .push_back(static_cast<int>(k));
    }
  }
  e.game = restrict_game(game, e.kept);
  return e;
}

std::string format_mixed(const std::vector<std::string>& labels, const Vec& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (!out.empty()) out += " + ";
    if (v[k] != 1) out += to_string(v[k]) + " ";
    out += labels[k];
  }
  return out;
}

std::string format_profile(const BimatrixGame& game, const MixedProfile& p) {
  return "(" + format_mixed(game.labels[0], p.x) + ", " +
         format_mixed(game.labels[1], p.y) + ")";
}

}  // namespace hyperindex
