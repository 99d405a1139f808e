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

#include "hyperindex/gametree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hyperindex {

NodeSpec NodeSpec::terminal(Rational u1, Rational u2) {
  NodeSpec n;
  n.kind = NodeKind::kTerminal;
  n.payoff = {std::move(u1), std::move(u2)};
  return n;
}

NodeSpec NodeSpec::chance(std::vector<std::pair<Rational, NodeSpec>> kids) {
  NodeSpec n;
  n.kind = NodeKind::kChance;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    n.labels.push_back("c" + std::to_string(i));
    n.probs.push_back(std::move(kids[i].first));
    n.children.push_back(std::move(kids[i].second));
  }
  return n;
}

NodeSpec NodeSpec::decision(
    int player, std::string infoset,
    std::vector<std::pair<std::string, NodeSpec>> kids) {
  NodeSpec n;
  n.kind = NodeKind::kDecision;
  n.player = player;
  n.infoset = std::move(infoset);
  for (auto& [label, child] : kids) {
    n.labels.push_back(label);
    n.children.push_back(std::move(child));
  }
  return n;
}

namespace {

struct Builder {
  std::vector<Node>* nodes;
  std::vector<Infoset>* infosets;
  std::vector<int>* terminals;
  std::vector<OwnHistory>* history;
  std::vector<std::string>* edge_labels;
  std::map<std::string, int> by_id;
  std::array<OwnHistory, 2> own;

  int visit(const NodeSpec& spec, int parent, int parent_edge,
            std::string edge_label) {
    const int id = static_cast<int>(nodes->size());
    nodes->emplace_back();
    history->emplace_back();
    edge_labels->push_back(std::move(edge_label));
    {
      Node& n = (*nodes)[id];
      n.kind = spec.kind;
      n.parent = parent;
      n.parent_edge = parent_edge;
    }
    switch (spec.kind) {
      case NodeKind::kTerminal: {
        Node& n = (*nodes)[id];
        n.payoff = spec.payoff;
        n.terminal_index = static_cast<int>(terminals->size());
        terminals->push_back(id);
        return id;
      }
      case NodeKind::kChance: {
        if (spec.children.empty())
          throw std::invalid_argument("chance node without children");
        (*nodes)[id].probs = spec.probs;
        for (std::size_t i = 0; i < spec.children.size(); ++i) {
          int child = visit(spec.children[i], id, static_cast<int>(i),
                            spec.probs[i].get_str());
          (*nodes)[id].children.push_back(child);
        }
        return id;
      }
      case NodeKind::kDecision:
        break;
    }
    if (spec.player != 1 && spec.player != 2)
      throw std::invalid_argument("player must be 1 or 2 at infoset " +
                                  spec.infoset);
    if (spec.children.empty())
      throw std::invalid_argument("infoset " + spec.infoset +
                                  " has no actions");
    std::set<std::string> seen(spec.labels.begin(), spec.labels.end());
    if (seen.size() != spec.labels.size())
      throw std::invalid_argument("repeated action label at infoset " +
                                  spec.infoset);
    int info;
    auto it = by_id.find(spec.infoset);
    if (it == by_id.end()) {
      info = static_cast<int>(infosets->size());
      by_id[spec.infoset] = info;
      Infoset u;
      u.id = spec.infoset;
      u.player = spec.player;
      u.actions = spec.labels;
      infosets->push_back(std::move(u));
    } else {
      info = it->second;
      const Infoset& u = (*infosets)[info];
      if (u.player != spec.player)
        throw std::invalid_argument("infoset " + spec.infoset +
                                    " is shared by both players");
      std::set<std::string> expected(u.actions.begin(), u.actions.end());
      if (expected != seen)
        throw std::invalid_argument("infoset " + spec.infoset +
                                    " has mismatched action sets");
    }
    (*infosets)[info].nodes.push_back(id);
    (*nodes)[id].player = spec.player;
    (*nodes)[id].infoset = info;
    (*history)[id] = own[spec.player - 1];
    const std::vector<std::string> actions = (*infosets)[info].actions;
    std::vector<int> kids;
    for (std::size_t a = 0; a < actions.size(); ++a) {
      auto pos = std::find(spec.labels.begin(), spec.labels.end(), actions[a]);
      const NodeSpec& child = spec.children[pos - spec.labels.begin()];
      own[spec.player - 1].push_back({info, static_cast<int>(a)});
      kids.push_back(visit(child, id, static_cast<int>(a), actions[a]));
      own[spec.player - 1].pop_back();
    }
    (*nodes)[id].children = std::move(kids);
    return id;
  }
};

}  // namespace

GameTree GameTree::build(const NodeSpec& root) {
  GameTree t;
  Builder b{&t.nodes_, &t.infosets_, &t.terminals_, &t.history_,
            &t.edge_labels_, {}, {}};
  b.visit(root, -1, -1, "");
  for (std::size_t u = 0; u < t.infosets_.size(); ++u) {
    auto& list = t.player_infosets_[t.infosets_[u].player - 1];
    t.infosets_[u].local_index = static_cast<int>(list.size());
    list.push_back(static_cast<int>(u));
  }
  t.below_.assign(t.nodes_.size(), {});
  for (int id = static_cast<int>(t.nodes_.size()) - 1; id >= 0; --id) {
    const Node& n = t.nodes_[id];
    if (n.kind == NodeKind::kTerminal) {
      t.below_[id].push_back(n.terminal_index);
    } else {
      for (int c : n.children)
        t.below_[id].insert(t.below_[id].end(), t.below_[c].begin(),
                            t.below_[c].end());
    }
  }
  return t;
}

int GameTree::find_infoset(const std::string& id) const {
  for (std::size_t u = 0; u < infosets_.size(); ++u)
    if (infosets_[u].id == id) return static_cast<int>(u);
  return -1;
}

const OwnHistory& GameTree::infoset_history(int infoset) const {
  return history_[infosets_[infoset].nodes.front()];
}

std::string GameTree::path_label(int node) const {
  std::vector<std::string> parts;
  for (int n = node; n > 0; n = nodes_[n].parent) parts.push_back(edge_labels_[n]);
  std::string out = "/";
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (out.size() > 1) out += "/";
    out += *it;
  }
  return out;
}

std::vector<std::string> validate_tree(const GameTree& tree) {
  std::vector<std::string> diags;
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    const Node& n = tree.node(static_cast<int>(id));
    if (n.kind != NodeKind::kChance) continue;
    Rational total = 0;
    for (const auto& p : n.probs) {
      if (p <= 0)
        diags.push_back("chance node at " + tree.path_label(static_cast<int>(id)) +
                        ": chance weight " + p.get_str() +
                        " is not positive");
      total += p;
    }
    if (total != 1)
      diags.push_back("chance node at " + tree.path_label(static_cast<int>(id)) +
                      ": chance distribution sums to " + total.get_str());
  }
  for (std::size_t u = 0; u < tree.infosets().size(); ++u) {
    const Infoset& info = tree.infoset(static_cast<int>(u));
    const OwnHistory& first = tree.own_history(info.nodes.front());
    for (int n : info.nodes) {
      if (tree.own_history(n) != first) {
        diags.push_back("perfect recall violated at infoset " + info.id +
                        ": player " + std::to_string(info.player) +
                        " reaches its nodes through different own histories");
        break;
      }
    }
  }
  return diags;
}

BehaviorStrategy pure_behavior(const GameTree& tree, int player,
                               const Plan& plan) {
  BehaviorStrategy b;
  b.player = player;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const Infoset& u = tree.infoset(tree.player_infosets(player)[k]);
    Vec dist = zeros(u.actions.size());
    if (plan[k] >= 0)
      dist[plan[k]] = 1;
    else
      dist = Vec(u.actions.size(), make_rational(1, static_cast<long>(u.actions.size())));
    b.local.push_back(std::move(dist));
  }
  return b;
}

BehaviorStrategy uniform_behavior(const GameTree& tree, int player) {
  Plan none(tree.player_infosets(player).size(), -1);
  return pure_behavior(tree, player, none);
}

namespace {

void check_behavior(const GameTree& tree, const BehaviorStrategy& b,
                    int player) {
  if (b.player != player ||
      b.local.size() != tree.player_infosets(player).size())
    throw std::invalid_argument("behavior strategy does not match the tree");
  for (std::size_t k = 0; k < b.local.size(); ++k) {
    const Infoset& u = tree.infoset(tree.player_infosets(player)[k]);
    if (b.local[k].size() != u.actions.size())
      throw std::invalid_argument("behavior strategy does not match infoset " +
                                  u.id);
  }
}

void propagate(const GameTree& tree, int id, const Rational& p,
               const std::array<const BehaviorStrategy*, 2>& b, Outcome& out) {
  if (p == 0) return;
  const Node& n = tree.node(id);
  switch (n.kind) {
    case NodeKind::kTerminal:
      out[n.terminal_index] += p;
      return;
    case NodeKind::kChance:
      for (std::size_t i = 0; i < n.children.size(); ++i)
        propagate(tree, n.children[i], p * n.probs[i], b, out);
      return;
    case NodeKind::kDecision: {
      const Vec& dist =
          b[n.player - 1]->local[tree.infoset(n.infoset).local_index];
      for (std::size_t i = 0; i < n.children.size(); ++i)
        if (dist[i] != 0) propagate(tree, n.children[i], p * dist[i], b, out);
      return;
    }
  }
}

void propagate_plans(const GameTree& tree, int id, const Rational& p,
                     const std::array<const Plan*, 2>& s, Outcome& out) {
  const Node& n = tree.node(id);
  switch (n.kind) {
    case NodeKind::kTerminal:
      out[n.terminal_index] += p;
      return;
    case NodeKind::kChance:
      for (std::size_t i = 0; i < n.children.size(); ++i)
        propagate_plans(tree, n.children[i], p * n.probs[i], s, out);
      return;
    case NodeKind::kDecision: {
      int a = (*s[n.player - 1])[tree.infoset(n.infoset).local_index];
      if (a < 0)
        throw std::invalid_argument("plan leaves reached infoset " +
                                    tree.infoset(n.infoset).id + " unassigned");
      propagate_plans(tree, n.children[a], p, s, out);
      return;
    }
  }
}

}  // namespace

Outcome outcome_of(const GameTree& tree, const BehaviorStrategy& b1,
                   const BehaviorStrategy& b2) {
  check_behavior(tree, b1, 1);
  check_behavior(tree, b2, 2);
  Outcome out = zeros(tree.num_terminals());
  propagate(tree, tree.root(), Rational(1), {&b1, &b2}, out);
  return out;
}

Outcome outcome_of_plans(const GameTree& tree, const Plan& s1,
                         const Plan& s2) {
  Outcome out = zeros(tree.num_terminals());
  propagate_plans(tree, tree.root(), Rational(1), {&s1, &s2}, out);
  return out;
}

std::array<Rational, 2> expected_payoffs(const GameTree& tree,
                                         const Outcome& outcome) {
  std::array<Rational, 2> u{Rational(0), Rational(0)};
  for (std::size_t z = 0; z < outcome.size(); ++z) {
    if (outcome[z] == 0) continue;
    const Node& n = tree.node(tree.terminals()[z]);
    u[0] += outcome[z] * n.payoff[0];
    u[1] += outcome[z] * n.payoff[1];
  }
  return u;
}

namespace {

void enumerate_plans(const GameTree& tree, int player, bool reduced,
                     std::size_t k, Plan& plan, std::vector<Plan>& out) {
  const auto& mine = tree.player_infosets(player);
  if (k == mine.size()) {
    out.push_back(plan);
    return;
  }
  const int u = mine[k];
  if (reduced && !plan_reaches(tree, plan, u)) {
    plan[k] = -1;
    enumerate_plans(tree, player, reduced, k + 1, plan, out);
    return;
  }
  for (std::size_t a = 0; a < tree.infoset(u).actions.size(); ++a) {
    plan[k] = static_cast<int>(a);
    enumerate_plans(tree, player, reduced, k + 1, plan, out);
  }
  plan[k] = -1;
}

}  // namespace

bool plan_reaches(const GameTree& tree, const Plan& plan, int infoset) {
  for (auto [v, a] : tree.infoset_history(infoset))
    if (plan[tree.infoset(v).local_index] != a) return false;
  return true;
}

std::vector<Plan> full_strategies(const GameTree& tree, int player) {
  std::vector<Plan> out;
  Plan plan(tree.player_infosets(player).size(), -1);
  enumerate_plans(tree, player, false, 0, plan, out);
  return out;
}

std::vector<Plan> reduced_strategies(const GameTree& tree, int player) {
  std::vector<Plan> out;
  Plan plan(tree.player_infosets(player).size(), -1);
  enumerate_plans(tree, player, true, 0, plan, out);
  return out;
}

std::string plan_label(const GameTree& tree, int player, const Plan& plan) {
  std::string out;
  const auto& mine = tree.player_infosets(player);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    if (plan[k] < 0) continue;
    if (!out.empty()) out += "-";
    out += tree.infoset(mine[k]).actions[plan[k]];
  }
  return out.empty() ? "*" : out;
}

namespace {

TreeNormalForm tabulate(const GameTree& tree, std::vector<Plan> p1,
                        std::vector<Plan> p2) {
  TreeNormalForm nf;
  nf.game.a = zeros(p1.size(), p2.size());
  nf.game.b = zeros(p1.size(), p2.size());
  for (const auto& s : p1) nf.game.labels[0].push_back(plan_label(tree, 1, s));
  for (const auto& s : p2) nf.game.labels[1].push_back(plan_label(tree, 2, s));
  for (std::size_t i = 0; i < p1.size(); ++i) {
    for (std::size_t j = 0; j < p2.size(); ++j) {
      auto u = expected_payoffs(tree, outcome_of_plans(tree, p1[i], p2[j]));
      nf.game.a[i][j] = u[0];
      nf.game.b[i][j] = u[1];
    }
  }
  nf.plans = {std::move(p1), std::move(p2)};
  return nf;
}

}  // namespace

TreeNormalForm normal_form(const GameTree& tree, std::size_t max_profiles) {
  std::size_t n1 = 1, n2 = 1;
  for (int u : tree.player_infosets(1)) {
    n1 *= tree.infoset(u).actions.size();
    if (n1 > max_profiles) throw std::length_error("normal form too large");
  }
  for (int u : tree.player_infosets(2)) {
    n2 *= tree.infoset(u).actions.size();
    if (n2 > max_profiles) throw std::length_error("normal form too large");
  }
  if (n1 * n2 > max_profiles) throw std::length_error("normal form too large");
  return tabulate(tree, full_strategies(tree, 1), full_strategies(tree, 2));
}

TreeNormalForm reduced_tree_normal_form(const GameTree& tree) {
  return tabulate(tree, reduced_strategies(tree, 1),
                  reduced_strategies(tree, 2));
}

BehaviorStrategy mixed_to_behavior(const GameTree& tree, int player,
                                   const std::vector<Plan>& plans,
                                   const Vec& weights) {
  BehaviorStrategy b;
  b.player = player;
  for (int u : tree.player_infosets(player)) {
    const Infoset& info = tree.infoset(u);
    Vec dist = zeros(info.actions.size());
    Rational reach = 0;
    for (std::size_t s = 0; s < plans.size(); ++s) {
      if (weights[s] == 0 || !plan_reaches(tree, plans[s], u)) continue;
      int a = plans[s][info.local_index];
      if (a < 0) continue;
      reach += weights[s];
      dist[a] += weights[s];
    }
    if (reach == 0) {
      dist = Vec(info.actions.size(), make_rational(1, static_cast<long>(info.actions.size())));
    } else {
      for (auto& d : dist) d /= reach;
    }
    b.local.push_back(std::move(dist));
  }
  return b;
}

Outcome mixed_outcome(const GameTree& tree, const TreeNormalForm& nf,
                      const MixedProfile& profile) {
  Outcome out = zeros(tree.num_terminals());
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    if (profile.x[i] == 0) continue;
    for (std::size_t j = 0; j < profile.y.size(); ++j) {
      if (profile.y[j] == 0) continue;
      Rational w = profile.x[i] * profile.y[j];
      Outcome o = outcome_of_plans(tree, nf.plans[0][i], nf.plans[1][j]);
      for (std::size_t z = 0; z < out.size(); ++z)
        if (o[z] != 0) out[z] += w * o[z];
    }
  }
  return out;
}

}  // namespace hyperindex
