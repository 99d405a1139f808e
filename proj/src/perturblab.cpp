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


#include "hyperindex/perturblab.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "hyperindex/parser.hpp"

namespace hyperindex {

namespace {

struct Action {
  std::string label;
  Vec image;
  int bar = -1;  // index into the perturbed game, -1 for base strategies
};

void check_image(const Vec& v, std::size_t n, const std::string& what) {
  if (v.size() != n)
    throw std::invalid_argument(what + ": image has wrong length");
  Rational total = 0;
  for (const auto& w : v) {
    if (w < 0) throw std::invalid_argument(what + ": negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument(what + ": weights must sum to 1");
}

std::string unique_label(std::string label, std::vector<std::string>& used) {
  while (std::find(used.begin(), used.end(), label) != used.end())
    label += "'";
  used.push_back(label);
  return label;
}

Vec apply(const Mat& m, const Vec& y) {
  Vec out = zeros(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], y);
  return out;
}

Mat project_points(const Mat& pts, const std::vector<Vec>& images,
                   std::size_t dim, const std::function<int(int)>& action) {
  Mat out;
  for (const auto& p : pts) {
    Vec v = zeros(dim);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      const Vec& img = images[action(static_cast<int>(i))];
      for (std::size_t k = 0; k < dim; ++k) v[k] += p[i] * img[k];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Embedding build_embedding(const EmbeddingSpec& spec) {
  if (spec.eps < 0 || spec.eps > 1)
    throw std::invalid_argument("build_embedding: eps outside [0, 1]");
  TreeNormalForm nf = reduced_tree_normal_form(spec.base);
  const BimatrixGame& g = nf.game;
  const BimatrixGame& p = spec.perturbed;
  if (spec.row_images.size() != p.rows() || spec.col_images.size() != p.cols())
    throw std::invalid_argument("build_embedding: images do not match table");
  std::vector<bool> replaced(g.rows(), false);
  for (int r : spec.replaced_rows) {
    if (r < 0 || r >= static_cast<int>(g.rows()))
      throw std::invalid_argument("build_embedding: replaced row out of range");
    replaced[r] = true;
  }
  for (const auto& v : spec.row_images) {
    check_image(v, g.rows(), "row");
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0 && !replaced[i])
        throw std::invalid_argument(
            "build_embedding: row image outside the replaced strategies");
  }
  for (const auto& v : spec.col_images) check_image(v, g.cols(), "column");

  Embedding e;
  if (spec.penalty) {
    e.penalty = *spec.penalty;
  } else {
    Rational m = 0;
    for (const Mat* t : {&p.a, &p.b})
      for (const auto& row : *t)
        for (const auto& v : row) m = std::max(m, Rational(abs(v)));
    e.penalty = 1 + m;
  }
  if (e.penalty <= 0) throw std::invalid_argument("build_embedding: B <= 0");

  std::vector<Action> cols;
  std::vector<std::string> used;
  for (std::size_t j = 0; j < g.cols(); ++j)
    cols.push_back({unique_label(g.labels[1][j], used), unit(g.cols(), j)});
  for (std::size_t c = 0; c < p.cols(); ++c) {
    const Vec& img = spec.col_images[c];
    auto s = support(img);
    if (spec.merge_pure_columns && s.size() == 1 && cols[s[0]].bar < 0) {
      cols[s[0]].bar = static_cast<int>(c);
      continue;
    }
    cols.push_back({unique_label(p.labels[1][c], used), img,
                    static_cast<int>(c)});
  }

  used.clear();
  std::vector<Action> first, second;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (!replaced[i])
      first.push_back({unique_label(g.labels[0][i], used), unit(g.rows(), i)});
  std::vector<std::string> bar_labels;
  for (std::size_t r = 0; r < p.rows(); ++r)
    bar_labels.push_back(unique_label(p.labels[0][r], used));
  for (std::size_t r = 0; r < p.rows(); ++r) {
    first.push_back({bar_labels[r], spec.row_images[r], static_cast<int>(r)});
    second.push_back({bar_labels[r], spec.row_images[r], static_cast<int>(r)});
  }

  auto responder = [&](const std::function<std::array<Rational, 2>(
                           const Action&)>& pay) {
    std::vector<std::pair<std::string, NodeSpec>> kids;
    for (const auto& c : cols) {
      auto u = pay(c);
      kids.emplace_back(c.label, NodeSpec::terminal(u[0], u[1]));
    }
    return NodeSpec::decision(2, "II", std::move(kids));
  };
  auto kappa1 = [&] {
    std::vector<std::pair<std::string, NodeSpec>> kids;
    for (const auto& row : first) {
      kids.emplace_back(row.label, responder([&](const Action& c) {
        return std::array<Rational, 2>{dot(row.image, apply(g.a, c.image)),
                                       dot(row.image, apply(g.b, c.image))};
      }));
    }
    return NodeSpec::decision(1, "kappa1", std::move(kids));
  };
  auto kappa2 = [&] {
    std::vector<std::pair<std::string, NodeSpec>> kids;
    for (const auto& row : second) {
      kids.emplace_back(row.label, responder([&](const Action& c) {
        if (c.bar < 0)
          return std::array<Rational, 2>{Rational(0), Rational(-e.penalty)};
        return std::array<Rational, 2>{p.a[row.bar][c.bar],
                                       p.b[row.bar][c.bar]};
      }));
    }
    return NodeSpec::decision(1, "kappa2", std::move(kids));
  };

  NodeSpec root;
  if (spec.eps == 0) {
    root = kappa1();
  } else if (spec.eps == 1) {
    root = kappa2();
  } else {
    root = NodeSpec::chance({{Rational(1 - spec.eps), kappa1()}, {spec.eps, kappa2()}});
  }
  e.tree = GameTree::build(root);
  if (spec.eps != 1)
    for (const auto& a : first) e.kappa1_images.push_back(a.image);
  if (spec.eps != 0)
    for (const auto& a : second) e.kappa2_images.push_back(a.image);
  for (const auto& c : cols) e.column_images.push_back(c.image);
  return e;
}

MixedProfile Embedding::project(const TreeNormalForm& embedded,
                                const MixedProfile& p) const {
  int k = tree.find_infoset(kappa1_images.empty() ? "kappa2" : "kappa1");
  int local = tree.infoset(k).local_index;
  const auto& rows = kappa1_images.empty() ? kappa2_images : kappa1_images;
  Mat x = project_points({p.x}, rows, rows[0].size(), [&](int i) {
    return embedded.plans[0][i][local];
  });
  Mat y = project_points({p.y}, column_images, column_images[0].size(),
                         [&](int j) { return embedded.plans[1][j][0]; });
  return {x[0], y[0]};
}

Certification verify_no_equilibrium_near(const Embedding& embedding,
                                         const NashComponent& target,
                                         const Rational& radius) {
  if (radius <= 0)
    throw std::invalid_argument("verify_no_equilibrium_near: radius <= 0");
  TreeNormalForm nf = reduced_tree_normal_form(embedding.tree);
  EquilibriumStructure eqs = analyze_equilibria(nf.game);
  Certification out;
  out.equilibria = eqs.extremes.size();
  std::optional<Rational> best;
  int best_extreme = -1;
  for (const auto& c : eqs.components) {
    NashComponent image;
    for (const auto& s : c.subsets) {
      MaximalNashSubset t;
      for (std::size_t i = 0; i < s.xs.size(); ++i)
        for (std::size_t j = 0; j < s.ys.size(); ++j) {
          auto q = embedding.project(nf, {s.xs[i], s.ys[j]});
          if (j == 0) t.xs.push_back(q.x);
          if (i == 0) t.ys.push_back(q.y);
        }
      image.subsets.push_back(std::move(t));
    }
    Rational d = distance_between(image, target);
    if (best && d >= *best) continue;
    best = d;
    std::optional<Rational> near;
    for (int e : c.extremes) {
      Rational de = distance_to_component(
          embedding.project(nf, eqs.extremes[e].profile), target);
      if (!near || de < *near) {
        near = de;
        best_extreme = e;
      }
    }
  }
  out.distance = best ? *best : Rational(0);
  out.certified = !best || *best > radius;
  if (!out.certified) {
    out.counterexample = eqs.extremes[best_extreme].profile;
    out.image = embedding.project(nf, *out.counterexample);
  }
  return out;
}

std::optional<std::array<std::vector<int>, 2>> find_relabeling(
    const BimatrixGame& g, const BimatrixGame& h) {
  if (g.rows() != h.rows() || g.cols() != h.cols()) return std::nullopt;
  const std::size_t m = g.rows(), n = g.cols();
  using Cell = std::pair<Rational, Rational>;
  auto column = [](const BimatrixGame& x, std::size_t j) {
    std::vector<Cell> v;
    for (std::size_t i = 0; i < x.rows(); ++i) v.emplace_back(x.a[i][j], x.b[i][j]);
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::vector<Cell>> gc, hc;
  for (std::size_t j = 0; j < n; ++j) {
    gc.push_back(column(g, j));
    hc.push_back(column(h, j));
  }
  std::vector<int> perm(n, -1);
  std::vector<bool> taken(n, false);
  std::optional<std::array<std::vector<int>, 2>> found;
  std::function<void(std::size_t)> extend = [&](std::size_t j) {
    if (found) return;
    if (j == n) {
      std::vector<int> rows(m, -1);
      std::vector<bool> used(m, false);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m && rows[i] < 0; ++k) {
          if (used[k]) continue;
          bool same = true;
          for (std::size_t c = 0; c < n && same; ++c)
            same = g.a[i][c] == h.a[k][perm[c]] && g.b[i][c] == h.b[k][perm[c]];
          if (same) {
            rows[i] = static_cast<int>(k);
            used[k] = true;
          }
        }
        if (rows[i] < 0) return;
      }
      found = std::array<std::vector<int>, 2>{rows, perm};
      return;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (taken[k] || gc[j] != hc[k]) continue;
      taken[k] = true;
      perm[j] = static_cast<int>(k);
      extend(j + 1);
      taken[k] = false;
    }
  };
  extend(0);
  return found;
}

std::vector<int> transport_components(const Embedding& embedding,
                                      const TreeNormalForm& embedded_nf,
                                      const EquilibriumStructure& embedded,
                                      const EquilibriumStructure& base) {
  std::vector<int> out;
  for (const auto& c : embedded.components) {
    const auto& p = embedded.extremes[c.extremes[0]].profile;
    out.push_back(base.component_of(embedding.project(embedded_nf, p)));
  }
  return out;
}

namespace {

Rational json_rational(const nlohmann::json& j) {
  std::string text = j.is_string() ? j.get<std::string>() : j.dump();
  auto r = parse_rational(text);
  if (!r) throw std::invalid_argument("embedding file: bad rational " + text);
  return *r;
}

Vec json_mixture(const nlohmann::json& j,
                 const std::vector<std::string>& labels) {
  Vec v = zeros(labels.size());
  for (const auto& [key, value] : j.items()) {
    auto it = std::find(labels.begin(), labels.end(), key);
    if (it == labels.end())
      throw std::invalid_argument("embedding file: unknown strategy " + key);
    v[it - labels.begin()] = json_rational(value);
  }
  return v;
}

}  // namespace

EmbeddingFile load_embedding(const std::string& path, const Rational& eps) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  auto dir = std::filesystem::path(path).parent_path();

  EmbeddingFile f;
  EmbeddingSpec& s = f.spec;
  s.base = load_game((dir / doc.at("base").get<std::string>()).string());
  TreeNormalForm nf = reduced_tree_normal_form(s.base);
  const auto& rl = nf.game.labels[0];
  const auto& cl = nf.game.labels[1];
  f.target_profile = {json_mixture(doc.at("target").at("x"), rl),
                      json_mixture(doc.at("target").at("y"), cl)};
  for (const auto& r : doc.at("replaced")) {
    auto it = std::find(rl.begin(), rl.end(), r.get<std::string>());
    if (it == rl.end())
      throw std::invalid_argument("embedding file: unknown strategy " +
                                  r.get<std::string>());
    s.replaced_rows.push_back(static_cast<int>(it - rl.begin()));
  }
  std::vector<std::string> rows, cols;
  for (const auto& r : doc.at("rows")) {
    rows.push_back(r.at("label").get<std::string>());
    s.row_images.push_back(json_mixture(r.at("image"), rl));
  }
  for (const auto& c : doc.at("columns")) {
    cols.push_back(c.at("label").get<std::string>());
    s.col_images.push_back(json_mixture(c.at("image"), cl));
  }
  Mat a = zeros(rows.size(), cols.size()), b = a;
  const auto& table = doc.at("payoffs");
  if (table.size() != rows.size())
    throw std::invalid_argument("embedding file: payoff table has wrong size");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (table[i].size() != cols.size())
      throw std::invalid_argument("embedding file: payoff table has wrong size");
    for (std::size_t j = 0; j < cols.size(); ++j) {
      a[i][j] = json_rational(table[i][j].at(0));
      b[i][j] = json_rational(table[i][j].at(1));
    }
  }
  s.perturbed = make_bimatrix(a, b, rows, cols);
  if (doc.contains("penalty")) s.penalty = json_rational(doc.at("penalty"));
  s.eps = eps;
  return f;
}

}  // namespace hyperindex
