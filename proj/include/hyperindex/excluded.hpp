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


#ifndef HYPERINDEX_EXCLUDED_HPP_
#define HYPERINDEX_EXCLUDED_HPP_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperindex/equilibria.hpp"
#include "hyperindex/gametree.hpp"
#include "hyperindex/index.hpp"
#include "hyperindex/lp.hpp"

namespace hyperindex {

class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Infosets and terminals split by the mass an outcome puts on them.
struct OnOffPartition {
  Vec infoset_mass;                 // Q(u), by global infoset id
  std::vector<Vec> action_mass;     // Q(u, a)
  std::array<std::vector<int>, 2> on;
  std::array<std::vector<int>, 2> off;
  std::vector<int> zero_terminals;  // indices into tree.terminals()

  bool on_path(int infoset) const { return infoset_mass[infoset] > 0; }
  bool positive(int infoset, int action) const {
    return action_mass[infoset][action] > 0;
  }
};

OnOffPartition on_off_partition(const GameTree& tree, const Outcome& q);

// Pure strategies (indices into nf.plans) that reach a zero-mass terminal
// with positive probability against some listed profile.
std::array<std::vector<int>, 2> observable_deviations(
    const GameTree& tree, const TreeNormalForm& nf,
    const OnOffPartition& partition,
    const std::vector<MixedProfile>& profiles);

// Partial plans use -1 outside their domain.
struct StrategySplit {
  // Plans over on-path infosets that take only positive-mass actions.
  std::array<std::vector<Plan>, 2> equilibrium;
  // Plans over the off-path infosets reachable when on-path play takes
  // positive-mass actions.
  std::array<std::vector<Plan>, 2> off_path;

  // Index into equilibrium[player - 1] of the partial plan that `plan`
  // follows, or nullopt when the plan leaves positive-mass play.
  std::optional<int> project(int player, const Plan& plan) const;
};

StrategySplit split_strategies(const GameTree& tree,
                               const OnOffPartition& partition);

// A mixed strategy written as an on-path mixture times independent
// off-path behavior.
struct KuhnSplit {
  std::vector<std::pair<Plan, Rational>> on;
  BehaviorStrategy off;  // only off-path entries are used
};

KuhnSplit kuhn_split(const GameTree& tree, const OnOffPartition& partition,
                     int player, const std::vector<Plan>& plans,
                     const Vec& weights);
Outcome split_outcome(const GameTree& tree, const OnOffPartition& partition,
                      const KuhnSplit& split, int player,
                      const BehaviorStrategy& opponent);

struct IncludedGame {
  BimatrixGame game;
  std::array<std::vector<Plan>, 2> plans;
};

// Throws std::logic_error if two off-path completions disagree.
IncludedGame included_game(const GameTree& tree,
                           const OnOffPartition& partition,
                           const StrategySplit& split);

// Push-forward of a reduced-normal-form profile onto the included game.
MixedProfile included_image(const TreeNormalForm& nf,
                            const StrategySplit& split,
                            const MixedProfile& profile);

enum class Anchor { kOutcome, kUniform };

// The deviator always picks rows: a holds the deviator's payoffs, b the
// opponent's. Rows and columns with identical payoff pairs are merged.
struct ExcludedGame {
  int player = 1;
  BimatrixGame game;
  std::vector<std::vector<int>> row_plans;   // indices into nf.plans
  std::vector<std::vector<Plan>> col_plans;  // opponent off-path plans
  BehaviorStrategy anchor;                   // opponent on-path behavior
  Rational on_path_payoff;                   // G_n(Q)
};

ExcludedGame excluded_game(const GameTree& tree, const TreeNormalForm& nf,
                           const OnOffPartition& partition,
                           const StrategySplit& split, const Outcome& q,
                           const std::vector<int>& deviations, int player,
                           Anchor anchor = Anchor::kOutcome);

struct SupportingPolytope {
  InequalityPolytope polytope;  // over the excluded game's columns

  bool contains(const Vec& column_mix) const { return polytope.contains(column_mix); }
  // Deviations that earn exactly G_n(Q) against the mix.
  std::vector<int> indifferent_rows(const Vec& column_mix) const;
};

SupportingPolytope supporting_polytope(const ExcludedGame& eg);

// One component of an excluded game and where it sits relative to K.
struct ExcludedComponent {
  std::vector<MixedProfile> extremes;
  std::optional<int> index;
  Placement placement = Placement::kOutside;
  bool boundary = false;  // some extreme in the closure pays G_n(Q)
};

struct PolytopeAnalysis {
  EquilibriumStructure equilibria;
  std::vector<ExcludedComponent> components;
  DimensionResult dimension;
  bool generic = false;  // A.2 for this player
  std::string detail;
  std::optional<int> index;
};

PolytopeAnalysis analyze_polytope(const ExcludedGame& eg,
                                  const SupportingPolytope& sp,
                                  const IndexOptions& options = {});

// Throws GenericityError when the boundary of K carries an equilibrium.
int supporting_polytope_index(const ExcludedGame& eg,
                              const SupportingPolytope& sp,
                              const IndexOptions& options = {});

struct GenericityReport {
  bool unique_outcome = false;
  bool a1 = false;
  std::string a1_detail;
  std::array<bool, 2> a2{true, true};
  std::array<std::string, 2> a2_detail;
  bool ok() const { return a1 && a2[0] && a2[1]; }
};

struct FactorizationOptions {
  IndexOptions index;
  // Compare the product with component_index on the whole game. Needs a
  // structure holding every component.
  bool cross_check = true;
};

struct HyperstabilityReport {
  int component = 0;
  ComponentOutcome outcome;
  std::array<std::vector<int>, 2> deviations;
  std::array<std::optional<ExcludedGame>, 2> excluded;
  std::array<std::optional<PolytopeAnalysis>, 2> polytopes;
  std::optional<IncludedGame> included;
  int included_component = -1;
  GenericityReport genericity;
  // Factor 1 for a player without observable deviations.
  std::array<std::optional<int>, 2> excluded_factor;
  std::optional<int> included_factor;
  std::optional<int> product;
  std::optional<int> full_index;
  std::optional<bool> hyperstable;
  std::string status;
};

// Outcome uniqueness, A.1 and A.2 for one component.
GenericityReport check_genericity(const GameTree& tree, const TreeNormalForm& nf,
                                  const EquilibriumStructure& eqs,
                                  int component);

HyperstabilityReport factorized_index(const GameTree& tree,
                                      const TreeNormalForm& nf,
                                      const EquilibriumStructure& eqs,
                                      int component,
                                      const FactorizationOptions& options = {});

}  // namespace hyperindex

#endif  // HYPERINDEX_EXCLUDED_HPP_
