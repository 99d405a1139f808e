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


#include "hyperindex/excluded.hpp"

#include <algorithm>
#include <map>

#include "hyperindex/normalform.hpp"

namespace hyperindex {

OnOffPartition on_off_partition(const GameTree& tree, const Outcome& q) {
  if (q.size() != tree.num_terminals())
    throw std::invalid_argument("on_off_partition: outcome size mismatch");
  std::vector<Rational> mass(tree.nodes().size());
  for (std::size_t v = 0; v < mass.size(); ++v)
    for (int z : tree.terminals_below(static_cast<int>(v))) mass[v] += q[z];
  OnOffPartition p;
  p.infoset_mass.assign(tree.infosets().size(), Rational(0));
  p.action_mass.resize(tree.infosets().size());
  for (std::size_t u = 0; u < tree.infosets().size(); ++u) {
    const Infoset& info = tree.infoset(static_cast<int>(u));
    p.action_mass[u] = zeros(info.actions.size());
    for (int v : info.nodes) {
      p.infoset_mass[u] += mass[v];
      const Node& node = tree.node(v);
      for (std::size_t a = 0; a < node.children.size(); ++a)
        p.action_mass[u][a] += mass[node.children[a]];
    }
  }
  for (int player : {1, 2})
    for (int u : tree.player_infosets(player))
      (p.on_path(u) ? p.on : p.off)[player - 1].push_back(u);
  for (std::size_t z = 0; z < q.size(); ++z)
    if (q[z] == 0) p.zero_terminals.push_back(static_cast<int>(z));
  return p;
}

std::array<std::vector<int>, 2> observable_deviations(
    const GameTree& tree, const TreeNormalForm& nf,
    const OnOffPartition& partition,
    const std::vector<MixedProfile>& profiles) {
  std::array<std::vector<int>, 2> out;
  std::map<std::pair<int, int>, bool> reaches;
  auto reaches_zero = [&](int s1, int s2) {
    auto [it, fresh] = reaches.try_emplace({s1, s2}, false);
    if (fresh) {
      Outcome o = outcome_of_plans(tree, nf.plans[0][s1], nf.plans[1][s2]);
      for (int z : partition.zero_terminals)
        if (o[z] > 0) it->second = true;
    }
    return it->second;
  };
  for (int player : {1, 2}) {
    std::vector<int> opp;
    for (const auto& p : profiles) {
      const Vec& other = player == 1 ? p.y : p.x;
      for (std::size_t t = 0; t < other.size(); ++t)
        if (other[t] > 0) opp.push_back(static_cast<int>(t));
    }
    std::sort(opp.begin(), opp.end());
    opp.erase(std::unique(opp.begin(), opp.end()), opp.end());
    const std::size_t count = nf.plans[player - 1].size();
    for (std::size_t s = 0; s < count; ++s) {
      bool dev = false;
      for (int t : opp) {
        int s1 = player == 1 ? static_cast<int>(s) : t;
        int s2 = player == 1 ? t : static_cast<int>(s);
        if (reaches_zero(s1, s2)) {
          dev = true;
          break;
        }
      }
      if (dev) out[player - 1].push_back(static_cast<int>(s));
    }
  }
  return out;
}

namespace {

struct OwnForest {
  std::vector<int> roots;
  std::map<std::pair<int, int>, std::vector<int>> next;
};

OwnForest own_forest(const GameTree& tree, int player) {
  OwnForest f;
  for (int u : tree.player_infosets(player)) {
    const OwnHistory& h = tree.infoset_history(u);
    if (h.empty())
      f.roots.push_back(u);
    else
      f.next[h.back()].push_back(u);
  }
  return f;
}

const std::vector<int>& successors(const OwnForest& f, int u, int a) {
  static const std::vector<int> none;
  auto it = f.next.find({u, a});
  return it == f.next.end() ? none : it->second;
}

// Walks the player's own infosets. At on-path infosets every positive-mass
// action is followed; `on_choice` picks whether on-path infosets are part
// of the enumerated plan (branching over positive actions) and whether
// off-path infosets are.
void enumerate_partial(const GameTree& tree, const OnOffPartition& partition,
                       const OwnForest& forest, bool on_side,
                       std::vector<int> frontier, Plan& plan,
                       std::vector<Plan>& out) {
  if (frontier.empty()) {
    out.push_back(plan);
    return;
  }
  int u = frontier.back();
  frontier.pop_back();
  const Infoset& info = tree.infoset(u);
  const int k = info.local_index;
  if (partition.on_path(u)) {
    if (on_side) {
      for (std::size_t a = 0; a < info.actions.size(); ++a) {
        if (!partition.positive(u, static_cast<int>(a))) continue;
        std::vector<int> more = frontier;
        for (int v : successors(forest, u, static_cast<int>(a)))
          if (partition.on_path(v)) more.push_back(v);
        plan[k] = static_cast<int>(a);
        enumerate_partial(tree, partition, forest, on_side, std::move(more),
                          plan, out);
      }
      plan[k] = -1;
    } else {
      for (std::size_t a = 0; a < info.actions.size(); ++a) {
        if (!partition.positive(u, static_cast<int>(a))) continue;
        for (int v : successors(forest, u, static_cast<int>(a)))
          frontier.push_back(v);
      }
      enumerate_partial(tree, partition, forest, on_side, std::move(frontier),
                        plan, out);
    }
    return;
  }
  if (on_side) {
    enumerate_partial(tree, partition, forest, on_side, std::move(frontier),
                      plan, out);
    return;
  }
  for (std::size_t a = 0; a < info.actions.size(); ++a) {
    std::vector<int> more = frontier;
    for (int v : successors(forest, u, static_cast<int>(a))) more.push_back(v);
    plan[k] = static_cast<int>(a);
    enumerate_partial(tree, partition, forest, on_side, std::move(more), plan,
                      out);
  }
  plan[k] = -1;
}

std::vector<Plan> partial_plans(const GameTree& tree,
                                const OnOffPartition& partition, int player,
                                bool on_side) {
  OwnForest forest = own_forest(tree, player);
  Plan plan(tree.player_infosets(player).size(), -1);
  std::vector<int> frontier(forest.roots.rbegin(), forest.roots.rend());
  std::vector<Plan> out;
  enumerate_partial(tree, partition, forest, on_side, frontier, plan, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool follows(const Plan& plan, const Plan& partial) {
  for (std::size_t k = 0; k < partial.size(); ++k)
    if (partial[k] >= 0 && plan[k] != partial[k]) return false;
  return true;
}

Plan filled(const Plan& partial, bool last, const GameTree& tree, int player) {
  Plan out = partial;
  const auto& mine = tree.player_infosets(player);
  for (std::size_t k = 0; k < out.size(); ++k)
    if (out[k] < 0)
      out[k] = last ? static_cast<int>(tree.infoset(mine[k]).actions.size()) - 1
                    : 0;
  return out;
}

}  // namespace

std::optional<int> StrategySplit::project(int player, const Plan& plan) const {
  const auto& list = equilibrium[player - 1];
  for (std::size_t i = 0; i < list.size(); ++i)
    if (follows(plan, list[i])) return static_cast<int>(i);
  return std::nullopt;
}

StrategySplit split_strategies(const GameTree& tree,
                               const OnOffPartition& partition) {
  StrategySplit s;
  for (int player : {1, 2}) {
    s.equilibrium[player - 1] = partial_plans(tree, partition, player, true);
    s.off_path[player - 1] = partial_plans(tree, partition, player, false);
  }
  return s;
}

KuhnSplit kuhn_split(const GameTree& tree, const OnOffPartition& partition,
                     int player, const std::vector<Plan>& plans,
                     const Vec& weights) {
  KuhnSplit out;
  std::map<Plan, Rational> on;
  const auto& mine = tree.player_infosets(player);
  for (std::size_t s = 0; s < plans.size(); ++s) {
    if (weights[s] == 0) continue;
    Plan p = plans[s];
    for (std::size_t k = 0; k < p.size(); ++k)
      if (!partition.on_path(mine[k])) p[k] = -1;
    on[p] += weights[s];
  }
  out.on.assign(on.begin(), on.end());
  out.off = mixed_to_behavior(tree, player, plans, weights);
  return out;
}

Outcome split_outcome(const GameTree& tree, const OnOffPartition& partition,
                      const KuhnSplit& split, int player,
                      const BehaviorStrategy& opponent) {
  Outcome total = zeros(tree.num_terminals());
  const auto& mine = tree.player_infosets(player);
  for (const auto& [partial, w] : split.on) {
    BehaviorStrategy b = pure_behavior(tree, player, partial);
    for (std::size_t k = 0; k < mine.size(); ++k)
      if (!partition.on_path(mine[k])) b.local[k] = split.off.local[k];
    Outcome o = player == 1 ? outcome_of(tree, b, opponent)
                            : outcome_of(tree, opponent, b);
    for (std::size_t z = 0; z < total.size(); ++z) total[z] += w * o[z];
  }
  return total;
}

IncludedGame included_game(const GameTree& tree,
                           const OnOffPartition& partition,
                           const StrategySplit& split) {
  (void)partition;
  IncludedGame g;
  g.plans = split.equilibrium;
  const std::size_t m = g.plans[0].size(), n = g.plans[1].size();
  g.game.a = zeros(m, n);
  g.game.b = zeros(m, n);
  for (int player : {1, 2})
    for (const auto& p : g.plans[player - 1])
      g.game.labels[player - 1].push_back(plan_label(tree, player, p));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto low = expected_payoffs(
          tree, outcome_of_plans(tree, filled(g.plans[0][i], false, tree, 1),
                                 filled(g.plans[1][j], false, tree, 2)));
      auto high = expected_payoffs(
          tree, outcome_of_plans(tree, filled(g.plans[0][i], true, tree, 1),
                                 filled(g.plans[1][j], true, tree, 2)));
      if (low != high)
        throw std::logic_error("included game payoff depends on off-path play");
      g.game.a[i][j] = low[0];
      g.game.b[i][j] = low[1];
    }
  }
  return g;
}

MixedProfile included_image(const TreeNormalForm& nf,
                            const StrategySplit& split,
                            const MixedProfile& profile) {
  MixedProfile out{zeros(split.equilibrium[0].size()),
                   zeros(split.equilibrium[1].size())};
  for (int player : {1, 2}) {
    const Vec& v = profile.of(player);
    Vec& image = player == 1 ? out.x : out.y;
    for (std::size_t s = 0; s < v.size(); ++s) {
      if (v[s] == 0) continue;
      auto i = split.project(player, nf.plans[player - 1][s]);
      if (!i)
        throw std::invalid_argument(
            "included_image: strategy leaves equilibrium play");
      image[*i] += v[s];
    }
  }
  return out;
}

namespace {

BehaviorStrategy anchor_behavior(const GameTree& tree,
                                 const OnOffPartition& partition, int player,
                                 Anchor anchor) {
  BehaviorStrategy b = uniform_behavior(tree, player);
  const auto& mine = tree.player_infosets(player);
  for (std::size_t k = 0; k < mine.size(); ++k) {
    const int u = mine[k];
    if (!partition.on_path(u)) continue;
    const Vec& am = partition.action_mass[u];
    if (anchor == Anchor::kOutcome) {
      for (std::size_t a = 0; a < am.size(); ++a)
        b.local[k][a] = am[a] / partition.infoset_mass[u];
    } else {
      long positive = std::count_if(am.begin(), am.end(),
                                    [](const Rational& r) { return r > 0; });
      for (std::size_t a = 0; a < am.size(); ++a)
        b.local[k][a] = am[a] > 0 ? make_rational(1, positive) : Rational(0);
    }
  }
  return b;
}

}  // namespace

ExcludedGame excluded_game(const GameTree& tree, const TreeNormalForm& nf,
                           const OnOffPartition& partition,
                           const StrategySplit& split, const Outcome& q,
                           const std::vector<int>& deviations, int player,
                           Anchor anchor) {
  if (deviations.empty())
    throw std::invalid_argument("excluded_game: no observable deviations");
  const int other = 3 - player;
  ExcludedGame eg;
  eg.player = player;
  eg.anchor = anchor_behavior(tree, partition, other, anchor);
  eg.on_path_payoff = expected_payoffs(tree, q)[player - 1];
  const auto& columns = split.off_path[other - 1];

  Mat a(deviations.size(), Vec(columns.size()));
  Mat b = a;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    BehaviorStrategy opp = eg.anchor;
    for (std::size_t k = 0; k < columns[c].size(); ++k)
      if (columns[c][k] >= 0) {
        opp.local[k] = zeros(opp.local[k].size());
        opp.local[k][columns[c][k]] = 1;
      }
    for (std::size_t r = 0; r < deviations.size(); ++r) {
      BehaviorStrategy dev =
          pure_behavior(tree, player, nf.plans[player - 1][deviations[r]]);
      Outcome o = player == 1 ? outcome_of(tree, dev, opp)
                              : outcome_of(tree, opp, dev);
      auto u = expected_payoffs(tree, o);
      a[r][c] = u[player - 1];
      b[r][c] = u[other - 1];
    }
  }

  // Merge repeated rows, then repeated columns.
  std::map<std::pair<Vec, Vec>, int> row_slot;
  std::vector<int> rows;
  for (std::size_t r = 0; r < deviations.size(); ++r) {
    auto [it, fresh] = row_slot.try_emplace({a[r], b[r]},
                                            static_cast<int>(rows.size()));
    if (fresh) {
      rows.push_back(static_cast<int>(r));
      eg.row_plans.emplace_back();
    }
    eg.row_plans[it->second].push_back(deviations[r]);
  }
  std::map<std::pair<Vec, Vec>, int> col_slot;
  std::vector<int> cols;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    Vec ca, cb;
    for (int r : rows) {
      ca.push_back(a[r][c]);
      cb.push_back(b[r][c]);
    }
    auto [it, fresh] = col_slot.try_emplace({ca, cb},
                                            static_cast<int>(cols.size()));
    if (fresh) {
      cols.push_back(static_cast<int>(c));
      eg.col_plans.emplace_back();
    }
    eg.col_plans[it->second].push_back(columns[c]);
  }
  eg.game.a = zeros(rows.size(), cols.size());
  eg.game.b = zeros(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      eg.game.a[i][j] = a[rows[i]][cols[j]];
      eg.game.b[i][j] = b[rows[i]][cols[j]];
    }
  for (const auto& group : eg.row_plans)
    eg.game.labels[0].push_back(
        nf.game.labels[player - 1][group.front()]);
  for (const auto& group : eg.col_plans)
    eg.game.labels[1].push_back(plan_label(tree, other, group.front()));
  return eg;
}

std::vector<int> SupportingPolytope::indifferent_rows(const Vec& column_mix) const {
  std::vector<int> out;
  for (std::size_t r = 0; r < polytope.extra.size(); ++r)
    if (dot(polytope.extra[r].coeffs, column_mix) == polytope.extra[r].bound)
      out.push_back(static_cast<int>(r));
  return out;
}

SupportingPolytope supporting_polytope(const ExcludedGame& eg) {
  SupportingPolytope sp;
  sp.polytope.dim = eg.game.cols();
  for (const auto& row : eg.game.a)
    sp.polytope.extra.push_back({row, eg.on_path_payoff, StrictSense::kLe});
  return sp;
}

PolytopeAnalysis analyze_polytope(const ExcludedGame& eg,
                                  const SupportingPolytope& sp,
                                  const IndexOptions& options) {
  PolytopeAnalysis pa;
  pa.equilibria = analyze_equilibria(eg.game);
  auto indices = component_indices(eg.game, pa.equilibria, options);
  AdmissibleRegion region = AdmissibleRegion::everything(eg.game);
  region.sides[1] = sp.polytope;
  std::vector<std::string> problems;
  for (const auto& c : pa.equilibria.components) {
    ExcludedComponent ec;
    ec.extremes = pa.equilibria.profiles(c);
    ec.index = indices[c.id].value;
    ec.placement = place(region, c);
    for (const auto& e : c.extremes) {
      const auto& ex = pa.equilibria.extremes[e];
      if (region.closure(ex.profile) && ex.payoffs[0] == eg.on_path_payoff) {
        ec.boundary = true;
        problems.push_back("equilibrium " + format_profile(eg.game, ex.profile) +
                           " pays exactly " + to_string(eg.on_path_payoff));
      }
    }
    if (ec.placement == Placement::kStraddles && !ec.boundary)
      problems.push_back("a component crosses the boundary of K");
    pa.components.push_back(std::move(ec));
  }
  pa.dimension = polytope_dimension(sp.polytope);
  if (pa.dimension.kind != DimensionResult::kFullDimensional)
    problems.insert(problems.begin(), "K is not full-dimensional");
  pa.generic = problems.empty();
  for (std::size_t i = 0; i < problems.size(); ++i)
    pa.detail += (i ? "; " : "") + problems[i];
  if (pa.generic)
    pa.index = region_index(pa.equilibria, indices, region).value;
  return pa;
}

int supporting_polytope_index(const ExcludedGame& eg,
                              const SupportingPolytope& sp,
                              const IndexOptions& options) {
  PolytopeAnalysis pa = analyze_polytope(eg, sp, options);
  if (!pa.generic) throw GenericityError(pa.detail);
  if (!pa.index) throw std::runtime_error("supporting polytope index unresolved");
  return *pa.index;
}

namespace {

Outcome included_outcome(const GameTree& tree, const IncludedGame& g,
                         const MixedProfile& p) {
  Outcome out = zeros(tree.num_terminals());
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (p.x[i] == 0) continue;
    for (std::size_t j = 0; j < p.y.size(); ++j) {
      if (p.y[j] == 0) continue;
      Outcome o = outcome_of_plans(tree, filled(g.plans[0][i], false, tree, 1),
                                   filled(g.plans[1][j], false, tree, 2));
      for (std::size_t z = 0; z < out.size(); ++z) out[z] += p.x[i] * p.y[j] * o[z];
    }
  }
  return out;
}

}  // namespace

HyperstabilityReport factorized_index(const GameTree& tree,
                                      const TreeNormalForm& nf,
                                      const EquilibriumStructure& eqs,
                                      int component,
                                      const FactorizationOptions& options) {
  HyperstabilityReport rep;
  rep.component = component;
  const NashComponent& comp = eqs.components.at(component);
  auto profiles = eqs.profiles(comp);
  rep.outcome = component_outcome(tree, nf, eqs, comp);
  GenericityReport& gen = rep.genericity;
  gen.unique_outcome = rep.outcome.unique;
  if (!rep.outcome.unique) {
    gen.a1_detail = "the component induces more than one outcome";
    rep.status = "A.1 failed";
    return rep;
  }
  const Outcome& q = rep.outcome.outcome;
  OnOffPartition partition = on_off_partition(tree, q);
  rep.deviations = observable_deviations(tree, nf, partition, profiles);
  StrategySplit split = split_strategies(tree, partition);

  rep.included = included_game(tree, partition, split);
  EquilibriumStructure inc = analyze_equilibria(rep.included->game);
  gen.a1 = true;
  for (const auto& p : profiles) {
    MixedProfile image = included_image(nf, split, p);
    int c = is_equilibrium(rep.included->game, image) ? inc.component_of(image) : -1;
    if (c < 0) {
      gen.a1 = false;
      gen.a1_detail = "an image is not an equilibrium of the included game";
      break;
    }
    if (rep.included_component >= 0 && c != rep.included_component) {
      gen.a1 = false;
      gen.a1_detail = "the images span several included-game components";
      break;
    }
    rep.included_component = c;
  }
  if (gen.a1) {
    for (int e : inc.components[rep.included_component].extremes) {
      if (included_outcome(tree, *rep.included, inc.extremes[e].profile) != q) {
        gen.a1 = false;
        gen.a1_detail = "the included-game component has another outcome";
        break;
      }
    }
  }

  for (int player : {1, 2}) {
    const auto& devs = rep.deviations[player - 1];
    if (devs.empty()) {
      rep.excluded_factor[player - 1] = 1;
      continue;
    }
    rep.excluded[player - 1] =
        excluded_game(tree, nf, partition, split, q, devs, player);
    SupportingPolytope sp = supporting_polytope(*rep.excluded[player - 1]);
    rep.polytopes[player - 1] =
        analyze_polytope(*rep.excluded[player - 1], sp, options.index);
    const auto& pa = *rep.polytopes[player - 1];
    gen.a2[player - 1] = pa.generic;
    gen.a2_detail[player - 1] = pa.detail;
    rep.excluded_factor[player - 1] = pa.index;
  }
  if (!gen.a1) {
    rep.status = "A.1 failed";
    return rep;
  }
  if (!gen.ok()) {
    rep.status = "A.2 failed";
    return rep;
  }
  rep.included_factor =
      component_index(rep.included->game, inc, rep.included_component,
                      options.index)
          .value;
  if (rep.excluded_factor[0] && rep.excluded_factor[1] && rep.included_factor) {
    rep.product =
        *rep.excluded_factor[0] * *rep.included_factor * *rep.excluded_factor[1];
    rep.hyperstable = *rep.product != 0;
    rep.status = "ok";
  } else {
    rep.status = "unresolved";
  }
  if (options.cross_check) {
    rep.full_index = component_index(nf.game, eqs, component, options.index).value;
    if (rep.full_index && rep.product && *rep.full_index != *rep.product)
      rep.status = "factorization disagrees with the component index";
  }
  return rep;
}

GenericityReport check_genericity(const GameTree& tree, const TreeNormalForm& nf,
                                  const EquilibriumStructure& eqs,
                                  int component) {
  FactorizationOptions options;
  options.cross_check = false;
  return factorized_index(tree, nf, eqs, component, options).genericity;
}

}  // namespace hyperindex
