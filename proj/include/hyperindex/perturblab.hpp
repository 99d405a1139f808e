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


#ifndef HYPERINDEX_PERTURBLAB_HPP_
#define HYPERINDEX_PERTURBLAB_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperindex/equilibria.hpp"
#include "hyperindex/gametree.hpp"

namespace hyperindex {

// A perturbed excluded game for player 1, tagged with the base-game
// strategies its rows and columns duplicate. Row images are mixtures over
// base reduced plans of player 1 supported on the replaced rows; column
// images are mixtures over base reduced plans of player 2.
struct EmbeddingSpec {
  GameTree base;
  BimatrixGame perturbed;
  std::vector<Vec> row_images;
  std::vector<Vec> col_images;
  std::vector<int> replaced_rows;  // base rows removed after kappa1
  Rational eps;
  std::optional<Rational> penalty;  // defaults to 1 + max |payoff|
  bool merge_pure_columns = true;
};

struct Embedding {
  GameTree tree;
  Rational penalty;
  std::vector<Vec> kappa1_images;  // per player-1 action after kappa1
  std::vector<Vec> kappa2_images;  // per player-1 action after kappa2
  std::vector<Vec> column_images;  // per player-2 action

  // Maps a profile of the embedded reduced normal form to the base reduced
  // normal form through player 1's kappa1 choice (kappa2 when kappa1 has
  // probability zero).
  MixedProfile project(const TreeNormalForm& embedded,
                       const MixedProfile& p) const;
};

// Throws std::invalid_argument on a malformed equivalence map.
Embedding build_embedding(const EmbeddingSpec& spec);

struct Certification {
  bool certified = false;
  Rational distance;              // nearest projected equilibrium
  std::size_t equilibria = 0;     // extreme equilibria of the embedded game
  std::optional<MixedProfile> counterexample;  // embedded profile
  std::optional<MixedProfile> image;           // its projection
};

// Enumerates every equilibrium of the embedded game and certifies that no
// projected equilibrium lies within l-infinity distance radius of target.
Certification verify_no_equilibrium_near(const Embedding& embedding,
                                         const NashComponent& target,
                                         const Rational& radius);

// Row and column permutations taking g onto h, if the payoffs agree.
std::optional<std::array<std::vector<int>, 2>> find_relabeling(
    const BimatrixGame& g, const BimatrixGame& h);

// Embedded component id to the base component containing its image.
std::vector<int> transport_components(const Embedding& embedding,
                                      const TreeNormalForm& embedded_nf,
                                      const EquilibriumStructure& embedded,
                                      const EquilibriumStructure& base);

// A corpus embedding file: the base game, a profile in the target component
// and the perturbed table with its duplicate tags.
struct EmbeddingFile {
  EmbeddingSpec spec;
  MixedProfile target_profile;  // in the base reduced normal form
};

EmbeddingFile load_embedding(const std::string& path, const Rational& eps);

}  // namespace hyperindex

#endif  // HYPERINDEX_PERTURBLAB_HPP_
