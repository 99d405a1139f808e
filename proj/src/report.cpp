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


#include "hyperindex/report.hpp"

#include <algorithm>
#include <sstream>

#include "hyperindex/normalform.hpp"

namespace hyperindex {

namespace {

using Json = nlohmann::ordered_json;

const char* placement_name(Placement p) {
  switch (p) {
    case Placement::kInside: return "inside";
    case Placement::kOutside: return "outside";
    case Placement::kStraddles: return "straddles";
  }
  return "";
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json profile_json(const BimatrixGame& game, const MixedProfile& p) {
  return Json{{"x", mixed_json(game.labels[0], p.x)},
              {"y", mixed_json(game.labels[1], p.y)}};
}

Json labels_json(const std::vector<std::string>& labels,
                 const std::vector<int>& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(labels[i]);
  return out;
}

Json outcome_json(const GameTree& tree, const ComponentOutcome& o) {
  Json j{{"unique", o.unique}};
  if (!o.unique) {
    j["terminals"] = nullptr;
    return j;
  }
  Json t = Json::object();
  for (std::size_t k = 0; k < o.outcome.size(); ++k)
    if (o.outcome[k] != 0)
      t[tree.path_label(tree.terminals()[k])] = to_string(o.outcome[k]);
  j["terminals"] = t;
  return j;
}

Json polytope_json(const ExcludedGame& eg, const PolytopeAnalysis& pa) {
  Json j;
  const char* kind = pa.dimension.kind == DimensionResult::kFullDimensional
                         ? "full"
                         : pa.dimension.kind == DimensionResult::kEmpty
                               ? "empty"
                               : "lower";
  j["dimension"] = Json{{"kind", kind}, {"value", pa.dimension.dimension}};
  j["interior_point"] =
      pa.dimension.kind == DimensionResult::kFullDimensional
          ? mixed_json(eg.game.labels[1], pa.dimension.interior_point)
          : Json(nullptr);
  Json comps = Json::array();
  for (const auto& c : pa.components) {
    Json ext = Json::array();
    for (const auto& p : c.extremes) ext.push_back(profile_json(eg.game, p));
    comps.push_back(Json{{"extremes", ext},
                         {"index", optional_json(c.index)},
                         {"placement", placement_name(c.placement)},
                         {"boundary", c.boundary}});
  }
  j["equilibria"] = comps;
  j["generic"] = pa.generic;
  j["detail"] = pa.detail;
  j["index"] = optional_json(pa.index);
  return j;
}

Json hyper_json(const AnalysisReport& r, const HyperstabilityReport& h) {
  const auto& g = r.nf.game;
  Json j;
  j["status"] = h.status;
  j["verdict"] = h.hyperstable
                     ? Json(*h.hyperstable ? "hyperstable" : "not hyperstable")
                     : Json(nullptr);
  const auto& gen = h.genericity;
  j["genericity"] = Json{{"unique_outcome", gen.unique_outcome},
                         {"a1", gen.a1},
                         {"a1_detail", gen.a1_detail},
                         {"a2", Json::array({gen.a2[0], gen.a2[1]})},
                         {"a2_detail", Json::array({gen.a2_detail[0],
                                                    gen.a2_detail[1]})}};
  Json players = Json::array();
  for (int n : {1, 2}) {
    Json p{{"player", n},
           {"deviations", labels_json(g.labels[n - 1], h.deviations[n - 1])}};
    const auto& eg = h.excluded[n - 1];
    if (eg) {
      Json e = game_json(eg->game);
      e["on_path_payoff"] = to_string(eg->on_path_payoff);
      p["excluded_game"] = e;
    } else {
      p["excluded_game"] = nullptr;
    }
    p["supporting_polytope"] = h.polytopes[n - 1]
                                   ? polytope_json(*eg, *h.polytopes[n - 1])
                                   : Json(nullptr);
    p["factor"] = optional_json(h.excluded_factor[n - 1]);
    players.push_back(p);
  }
  j["players"] = players;
  if (h.included) {
    Json inc = game_json(h.included->game);
    inc["component"] = h.included_component;
    inc["factor"] = optional_json(h.included_factor);
    j["included_game"] = inc;
  } else {
    j["included_game"] = nullptr;
  }
  j["product"] = optional_json(h.product);
  j["full_index"] = optional_json(h.full_index);
  return j;
}

std::string verdict_text(const HyperstabilityReport& h) {
  if (!h.hyperstable) return "undetermined (" + h.status + ")";
  return *h.hyperstable ? "hyperstable" : "not hyperstable";
}

std::string factor_text(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "?";
}

}  // namespace

Json mixed_json(const std::vector<std::string>& labels, const Vec& v) {
  Json j = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) j[labels[i]] = to_string(v[i]);
  return j;
}

Json game_json(const BimatrixGame& game) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < game.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < game.cols(); ++j)
      row.push_back(Json::array({to_string(game.a[i][j]), to_string(game.b[i][j])}));
    cells.push_back(row);
  }
  return Json{{"rows", game.labels[0]},
              {"columns", game.labels[1]},
              {"payoffs", cells}};
}

std::string format_table(const BimatrixGame& game) {
  std::vector<std::vector<std::string>> cells(game.rows() + 1);
  cells[0].push_back("");
  for (const auto& l : game.labels[1]) cells[0].push_back(l);
  for (std::size_t i = 0; i < game.rows(); ++i) {
    cells[i + 1].push_back(game.labels[0][i]);
    for (std::size_t j = 0; j < game.cols(); ++j)
      cells[i + 1].push_back(to_string(game.a[i][j]) + "," +
                             to_string(game.b[i][j]));
  }
  std::vector<std::size_t> width(game.cols() + 1, 0);
  for (const auto& row : cells)
    for (std::size_t k = 0; k < row.size(); ++k)
      width[k] = std::max(width[k], row[k].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    out << "   ";
    for (std::size_t k = 0; k < row.size(); ++k)
      out << ' ' << row[k] << std::string(width[k] - row[k].size(), ' ');
    out << '\n';
  }
  return out.str();
}

std::string excluded_text(const HyperstabilityReport& h, int player) {
  std::ostringstream out;
  const auto& eg = h.excluded[player - 1];
  out << "  player " << player << " excluded game";
  if (!eg) {
    out << ": no observable deviations, factor 1\n";
    return out.str();
  }
  out << " (on-path payoff " << to_string(eg->on_path_payoff) << ")\n"
      << format_table(eg->game);
  const auto& pa = *h.polytopes[player - 1];
  out << "  supporting polytope: ";
  if (pa.dimension.kind == DimensionResult::kFullDimensional)
    out << "full-dimensional, interior point "
        << format_mixed(eg->game.labels[1], pa.dimension.interior_point) << '\n';
  else
    out << "not full-dimensional\n";
  for (const auto& c : pa.components) {
    out << "    ";
    for (std::size_t k = 0; k < c.extremes.size(); ++k)
      out << (k ? " | " : "") << format_profile(eg->game, c.extremes[k]);
    out << "  index " << factor_text(c.index) << ", "
        << placement_name(c.placement) << (c.boundary ? ", on the boundary" : "")
        << '\n';
  }
  if (!pa.generic) out << "  not generic: " << pa.detail << '\n';
  out << "  polytope index " << factor_text(pa.index) << '\n';
  return out.str();
}

std::optional<int> AnalysisReport::index_sum() const {
  if (local) return std::nullopt;
  int total = 0;
  for (const auto& r : indices) {
    if (!r.value) return std::nullopt;
    total += *r.value;
  }
  return total;
}

bool AnalysisReport::unresolved() const {
  if (local) {
    for (const auto& h : hyper)
      if (h.status == "unresolved") return true;
    return false;
  }
  return std::any_of(indices.begin(), indices.end(),
                     [](const IndexResult& r) { return !r.resolved(); });
}

bool AnalysisReport::generic() const {
  return std::all_of(hyper.begin(), hyper.end(), [](const auto& h) {
    return h.genericity.unique_outcome && h.genericity.ok();
  });
}

AnalysisReport analyze(const std::string& name, const GameTree& tree,
                       const AnalysisOptions& options) {
  AnalysisReport r;
  r.name = name;
  r.params = options.params;
  r.seed = options.seed;
  r.tree = tree;
  r.nf = reduced_tree_normal_form(tree);
  r.from = options.from;
  const BimatrixGame& g = r.nf.game;
  IndexOptions io;
  io.seed = options.seed;

  if (options.from) {
    auto find = [&](int player, const std::string& label) {
      const auto& ls = g.labels[player - 1];
      auto it = std::find(ls.begin(), ls.end(), label);
      if (it == ls.end())
        throw std::invalid_argument("unknown strategy '" + label + "'");
      return static_cast<std::size_t>(it - ls.begin());
    };
    MixedProfile seed{unit(g.rows(), find(1, options.from->first)),
                      unit(g.cols(), find(2, options.from->second))};
    if (!is_equilibrium(g, seed))
      throw std::invalid_argument("(" + options.from->first + ", " +
                                  options.from->second +
                                  ") is not an equilibrium");
    r.local = true;
    r.eqs = explore_component(g, seed, options.max_extremes, &r.complete);
    if (!r.complete)
      r.diagnostics.push_back("exploration stopped after " +
                              std::to_string(options.max_extremes) +
                              " extreme equilibria");
  } else {
    if (g.rows() * g.cols() > options.full_limit)
      throw TooLargeError(std::to_string(g.rows()) + "x" +
                          std::to_string(g.cols()) +
                          " reduced normal form is too large to enumerate; "
                          "name a pure equilibrium with --from ROW,COL");
    r.eqs = analyze_equilibria(g);
    r.indices = component_indices(g, r.eqs, io);
  }

  FactorizationOptions fo;
  fo.index = io;
  fo.cross_check = false;
  for (const auto& c : r.eqs.components) {
    r.outcomes.push_back(component_outcome(tree, r.nf, r.eqs, c));
    HyperstabilityReport h;
    try {
      h = factorized_index(tree, r.nf, r.eqs, c.id, fo);
    } catch (const std::exception& e) {
      h.component = c.id;
      h.status = std::string("failed: ") + e.what();
      r.diagnostics.push_back("component " + std::to_string(c.id) + ": " +
                              e.what());
    }
    if (!r.local) {
      h.full_index = r.indices[c.id].value;
      if (h.full_index && h.product && *h.full_index != *h.product) {
        h.status = "factorization disagrees with the component index";
        r.diagnostics.push_back("component " + std::to_string(c.id) + ": " +
                                h.status);
      }
    }
    r.hyper.push_back(std::move(h));
  }
  if (!r.local) {
    auto sum = r.index_sum();
    if (sum && *sum != 1)
      r.diagnostics.push_back("component indices sum to " +
                              std::to_string(*sum));
  }
  return r;
}

Json to_json(const AnalysisReport& r) {
  const auto& g = r.nf.game;
  Json j;
  j["schema"] = kReportSchema;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = to_string(v);
  Json infosets = Json::array();
  for (int n : {1, 2})
    infosets.push_back(static_cast<int>(r.tree.player_infosets(n).size()));
  j["game"] = Json{{"name", r.name},
                   {"params", params},
                   {"terminals", r.tree.num_terminals()},
                   {"infosets", infosets},
                   {"strategies", Json::array({g.labels[0], g.labels[1]})}};
  j["seed"] = r.seed;
  j["enumeration"] =
      Json{{"mode", r.local ? "local" : "full"},
           {"complete", r.complete},
           {"from", r.from ? Json::array({r.from->first, r.from->second})
                           : Json(nullptr)}};
  Json comps = Json::array();
  for (const auto& c : r.eqs.components) {
    Json cj;
    cj["id"] = c.id;
    Json ext = Json::array();
    for (int e : c.extremes) {
      const auto& eq = r.eqs.extremes[e];
      Json ej = profile_json(g, eq.profile);
      ej["payoffs"] = Json::array({to_string(eq.payoffs[0]),
                                   to_string(eq.payoffs[1])});
      ext.push_back(ej);
    }
    cj["extremes"] = ext;
    cj["outcome"] = outcome_json(r.tree, r.outcomes[c.id]);
    const auto& h = r.hyper[c.id];
    if (r.local) {
      cj["index"] = Json{{"value", optional_json(h.product)},
                         {"method", "factorization"}};
    } else {
      const auto& ir = r.indices[c.id];
      cj["index"] = Json{{"value", optional_json(ir.value)},
                         {"method", ir.value ? Json(to_string(ir.method))
                                             : Json(nullptr)}};
    }
    cj["hyperstability"] = hyper_json(r, h);
    comps.push_back(cj);
  }
  j["components"] = comps;
  j["index_sum"] = optional_json(r.index_sum());
  j["diagnostics"] = r.diagnostics;
  return j;
}

std::string to_text(const AnalysisReport& r) {
  const auto& g = r.nf.game;
  std::ostringstream out;
  out << "game " << r.name;
  for (const auto& [k, v] : r.params) out << ' ' << k << '=' << to_string(v);
  out << "\n  " << r.tree.num_terminals() << " terminals, reduced normal form "
      << g.rows() << 'x' << g.cols() << "\n  player 1: ";
  for (std::size_t i = 0; i < g.rows(); ++i) out << (i ? " " : "") << g.labels[0][i];
  out << "\n  player 2: ";
  for (std::size_t j = 0; j < g.cols(); ++j) out << (j ? " " : "") << g.labels[1][j];
  out << '\n';
  if (r.local)
    out << "  local exploration from (" << r.from->first << ", "
        << r.from->second << ")" << (r.complete ? "" : ", incomplete") << '\n';
  out << '\n';
  for (const auto& c : r.eqs.components) {
    const auto& h = r.hyper[c.id];
    out << "component " << c.id << ": " << c.extremes.size()
        << " extreme equilibri" << (c.extremes.size() == 1 ? "um" : "a") << '\n';
    std::size_t shown = 0;
    for (int e : c.extremes) {
      if (++shown > 12) {
        out << "    ... " << c.extremes.size() - 12 << " more\n";
        break;
      }
      out << "    " << format_profile(g, r.eqs.extremes[e].profile) << "  payoffs "
          << to_string(r.eqs.extremes[e].payoffs[0]) << ", "
          << to_string(r.eqs.extremes[e].payoffs[1]) << '\n';
    }
    if (r.local) {
      out << "  index " << factor_text(h.product) << " (factorization)\n";
    } else {
      const auto& ir = r.indices[c.id];
      out << "  index " << factor_text(ir.value);
      if (ir.value) out << " (" << to_string(ir.method) << ")";
      out << '\n';
    }
    out << "  factors " << factor_text(h.excluded_factor[0]) << " x "
        << factor_text(h.included_factor) << " x "
        << factor_text(h.excluded_factor[1]) << " = " << factor_text(h.product)
        << '\n';
    if (!h.genericity.a1_detail.empty())
      out << "  A.1: " << h.genericity.a1_detail << '\n';
    for (int n : {0, 1})
      if (!h.genericity.a2[n])
        out << "  A.2 player " << n + 1 << ": " << h.genericity.a2_detail[n]
            << '\n';
    out << "  verdict: " << verdict_text(h) << "\n\n";
  }
  auto sum = r.index_sum();
  if (sum) out << "index sum " << *sum << '\n';
  for (const auto& d : r.diagnostics) out << "note: " << d << '\n';
  return out.str();
}

}  // namespace hyperindex
