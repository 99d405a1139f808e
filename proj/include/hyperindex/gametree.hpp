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

#ifndef HYPERINDEX_GAMETREE_HPP_
#define HYPERINDEX_GAMETREE_HPP_

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hyperindex/bimatrix.hpp"
#include "hyperindex/rational.hpp"

namespace hyperindex {

enum class NodeKind { kChance, kDecision, kTerminal };

// Tree description as produced by the parser or by game generators.
struct NodeSpec {
  NodeKind kind = NodeKind::kTerminal;
  int player = 0;
  std::string infoset;
  std::vector<std::string> labels;
  std::vector<Rational> probs;
  std::vector<NodeSpec> children;
  std::array<Rational, 2> payoff;

  static NodeSpec terminal(Rational u1, Rational u2);
  static NodeSpec chance(std::vector<std::pair<Rational, NodeSpec>> kids);
  static NodeSpec decision(int player, std::string infoset,
                           std::vector<std::pair<std::string, NodeSpec>> kids);
};

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  int player = 0;
  int infoset = -1;
  std::vector<Rational> probs;
  std::vector<int> children;  // decision nodes: in infoset action order
  std::array<Rational, 2> payoff;
  int parent = -1;
  int parent_edge = -1;
  int terminal_index = -1;
};

struct Infoset {
  std::string id;
  int player = 0;
  std::vector<std::string> actions;
  std::vector<int> nodes;
  int local_index = -1;  // position among the player's infosets
};

// (infoset, action) pairs a player chose on the way to a node.
using OwnHistory = std::vector<std::pair<int, int>>;

class GameTree {
 public:
  // Throws std::invalid_argument when nodes sharing an infoset disagree on
  // player or action labels.
  static GameTree build(const NodeSpec& root);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_[id]; }
  int root() const { return 0; }
  const std::vector<Infoset>& infosets() const { return infosets_; }
  const Infoset& infoset(int id) const { return infosets_[id]; }
  // Global infoset ids of a player, in order of first appearance.
  const std::vector<int>& player_infosets(int player) const {
    return player_infosets_[player - 1];
  }
  // Terminal node ids in depth-first order; outcomes are indexed by this.
  const std::vector<int>& terminals() const { return terminals_; }
  std::size_t num_terminals() const { return terminals_.size(); }
  int find_infoset(const std::string& id) const;

  // The acting player's history at a decision node.
  const OwnHistory& own_history(int node) const { return history_[node]; }
  // History of an infoset (taken from its first node).
  const OwnHistory& infoset_history(int infoset) const;
  // Terminal ids (indices into terminals()) below a node.
  const std::vector<int>& terminals_below(int node) const {
    return below_[node];
  }
  std::string path_label(int node) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Infoset> infosets_;
  std::array<std::vector<int>, 2> player_infosets_;
  std::vector<int> terminals_;
  std::vector<OwnHistory> history_;
  std::vector<std::vector<int>> below_;
  std::vector<std::string> edge_labels_;
};

std::vector<std::string> validate_tree(const GameTree& tree);

// A pure strategy or plan: action index per local infoset, -1 where the
// strategy leaves an infoset unassigned (unreachable under own play).
using Plan = std::vector<int>;

struct BehaviorStrategy {
  int player = 0;
  std::vector<Vec> local;  // indexed by the player's local infoset index
};

using Outcome = Vec;  // probability per terminal, in terminals() order

BehaviorStrategy pure_behavior(const GameTree& tree, int player,
                               const Plan& plan);
BehaviorStrategy uniform_behavior(const GameTree& tree, int player);

// Throws std::invalid_argument on a strategy/infoset mismatch.
Outcome outcome_of(const GameTree& tree, const BehaviorStrategy& b1,
                   const BehaviorStrategy& b2);
Outcome outcome_of_plans(const GameTree& tree, const Plan& s1, const Plan& s2);
std::array<Rational, 2> expected_payoffs(const GameTree& tree,
                                         const Outcome& outcome);

// Every player-`player` infoset gets an action.
std::vector<Plan> full_strategies(const GameTree& tree, int player);
// Actions only at infosets reachable under the plan's own earlier choices.
std::vector<Plan> reduced_strategies(const GameTree& tree, int player);
std::string plan_label(const GameTree& tree, int player, const Plan& plan);
bool plan_reaches(const GameTree& tree, const Plan& plan, int infoset);

struct TreeNormalForm {
  BimatrixGame game;
  std::array<std::vector<Plan>, 2> plans;
};

// Full normal form; throws std::length_error above max_profiles.
TreeNormalForm normal_form(const GameTree& tree,
                           std::size_t max_profiles = 1u << 20);
// Normal form over reduced_strategies.
TreeNormalForm reduced_tree_normal_form(const GameTree& tree);

BehaviorStrategy mixed_to_behavior(const GameTree& tree, int player,
                                   const std::vector<Plan>& plans,
                                   const Vec& weights);

// Outcome of a mixed profile over plans, by bilinearity.
Outcome mixed_outcome(const GameTree& tree, const TreeNormalForm& nf,
                      const MixedProfile& profile);

}  // namespace hyperindex

#endif  // HYPERINDEX_GAMETREE_HPP_
