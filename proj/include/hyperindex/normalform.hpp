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

#ifndef HYPERINDEX_NORMALFORM_HPP_
#define HYPERINDEX_NORMALFORM_HPP_

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hyperindex/bimatrix.hpp"

namespace hyperindex {

// Relates a larger game to an equivalent smaller one. For every strategy of
// the larger game, image holds the equivalent mixed strategy of the smaller
// game; retained lists the larger-game index of each smaller-game strategy.
struct EquivalenceMap {
  std::array<std::vector<Vec>, 2> image;
  std::array<std::vector<int>, 2> retained;

  // Larger-game profile to the equivalent smaller-game profile.
  MixedProfile project(const MixedProfile& larger) const;
  // Smaller-game profile placed on the retained strategies.
  MixedProfile lift(const MixedProfile& smaller) const;
};

std::array<Rational, 2> payoff(const BimatrixGame& game,
                               const MixedProfile& profile);

// Expected payoff of each pure strategy of `player` against `opponent`.
Vec pure_payoffs(const BimatrixGame& game, int player, const Vec& opponent);

bool is_equivalent(const BimatrixGame& game, int player, const Vec& s,
                   const Vec& t);

std::pair<BimatrixGame, EquivalenceMap> reduce(const BimatrixGame& game);

std::pair<BimatrixGame, EquivalenceMap> add_duplicates(
    const BimatrixGame& game, int player, const std::vector<Vec>& mixtures);

BimatrixGame perturb(const BimatrixGame& game, const Mat& da, const Mat& db);

std::vector<int> best_replies(const BimatrixGame& game, int player,
                              const Vec& opponent);

bool is_equilibrium(const BimatrixGame& game, const MixedProfile& profile);

// "3/4 L + 1/4 R" style text; a pure strategy is just its label.
std::string format_mixed(const std::vector<std::string>& labels, const Vec& v);
std::string format_profile(const BimatrixGame& game, const MixedProfile& p);

struct Elimination {
  BimatrixGame game;
  std::array<std::vector<int>, 2> removed;
  std::array<std::vector<int>, 2> kept;

  MixedProfile restrict(const MixedProfile& p) const;
};

// Removes the pure strategies that are strictly inferior replies at every
// listed profile. Throws std::invalid_argument if a profile is not an
// equilibrium.
Elimination eliminate_strictly_inferior(
    const BimatrixGame& game, const std::vector<MixedProfile>& extremes);

// Keeps the listed strategies of each player.
BimatrixGame restrict_game(const BimatrixGame& game,
                           const std::array<std::vector<int>, 2>& keep);

}  // namespace hyperindex

#endif  // HYPERINDEX_NORMALFORM_HPP_
