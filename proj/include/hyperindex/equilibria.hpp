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

#ifndef HYPERINDEX_EQUILIBRIA_HPP_
#define HYPERINDEX_EQUILIBRIA_HPP_

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hyperindex/bimatrix.hpp"
#include "hyperindex/gametree.hpp"

namespace hyperindex {

struct ExtremeEquilibrium {
  MixedProfile profile;
  std::array<std::vector<int>, 2> supports;
  std::array<Rational, 2> payoffs;
};

// conv(xs) x conv(ys); every pairing of the generators is an equilibrium.
struct MaximalNashSubset {
  Mat xs;
  Mat ys;
  std::vector<int> extremes;  // indices into the extreme-equilibrium list
};

struct NashComponent {
  int id = 0;
  std::vector<MaximalNashSubset> subsets;
  std::vector<int> extremes;  // sorted indices into the extreme list

  bool is_singleton() const { return extremes.size() == 1; }
};

// Vertices of {v >= 0 : m v <= 1} other than 0, for m with positive
// entries. Each vertex is returned with the indices of its tight
// inequalities: k for v_k = 0 and dim + r for row r of m.
struct PolytopeVertex {
  Vec point;
  std::vector<int> tight;
};
std::vector<PolytopeVertex> best_response_vertices(const Mat& m);

std::vector<ExtremeEquilibrium> enumerate_extreme_equilibria(
    const BimatrixGame& game);

std::vector<MaximalNashSubset> maximal_nash_subsets(
    const BimatrixGame& game, const std::vector<ExtremeEquilibrium>& extremes);

std::vector<NashComponent> components(
    const std::vector<MaximalNashSubset>& subsets);

struct EquilibriumStructure {
  std::vector<ExtremeEquilibrium> extremes;
  std::vector<MaximalNashSubset> subsets;
  std::vector<NashComponent> components;

  std::vector<MixedProfile> profiles(const NashComponent& c) const;
  // Component holding the given equilibrium profile, or -1.
  int component_of(const MixedProfile& p) const;
};

EquilibriumStructure analyze_equilibria(const BimatrixGame& game);

// The single component through an equilibrium, found by walking
// complementary faces of the best-response polytopes from the seed instead
// of enumerating every vertex. The walk stops after max_extremes extreme
// equilibria; it then throws std::length_error, or, when `complete` is
// given, sets it to false and returns the connected part found so far.
EquilibriumStructure explore_component(const BimatrixGame& game,
                                       const MixedProfile& seed,
                                       std::size_t max_extremes = 5000,
                                       bool* complete = nullptr);

// Exact l-infinity distance from a profile to a maximal Nash subset.
Rational distance_to_subset(const MixedProfile& p, const MaximalNashSubset& s);
Rational distance_to_component(const MixedProfile& p, const NashComponent& c);
Rational distance_between(const NashComponent& c, const NashComponent& d);
bool in_subset(const MixedProfile& p, const MaximalNashSubset& s);

struct ComponentOutcome {
  bool unique = false;
  Outcome outcome;
  std::pair<int, int> witness{-1, -1};  // extreme indices when not unique
};

// The game of `eqs` must be nf.game.
ComponentOutcome component_outcome(const GameTree& tree,
                                   const TreeNormalForm& nf,
                                   const EquilibriumStructure& eqs,
                                   const NashComponent& component);

}  // namespace hyperindex

#endif  // HYPERINDEX_EQUILIBRIA_HPP_
