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


#ifndef HYPERINDEX_INDEX_HPP_
#define HYPERINDEX_INDEX_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperindex/equilibria.hpp"
#include "hyperindex/lp.hpp"

namespace hyperindex {

enum class IndexMethod { kShapley, kComplement, kElimination, kPerturbation };

std::string to_string(IndexMethod m);

struct IndexOptions {
  std::uint64_t seed = 1;
  // Multiplies the default perturbation magnitude.
  Rational delta_scale = 1;
  int max_depth = 6;
  // Perturbation sampling is skipped for larger games (rows * cols).
  std::size_t max_perturbation_size = 256;
  int max_shrinks = 6;
};

struct IndexResult {
  std::optional<int> value;
  IndexMethod method = IndexMethod::kShapley;

  bool resolved() const { return value.has_value(); }
};

// Shapley's sign formula. Empty when the equilibrium is not regular:
// unequal supports, a singular restriction, or a weak off-support reply.
std::optional<int> shapley_index(const BimatrixGame& game,
                                 const ExtremeEquilibrium& eq);

// One method only; empty when the method does not apply or fails.
std::optional<int> index_by_method(const BimatrixGame& game,
                                   const EquilibriumStructure& eqs,
                                   int component, IndexMethod method,
                                   const IndexOptions& options = {},
                                   int depth = 0);

// First applicable method in the order Shapley, complement, elimination,
// perturbation.
IndexResult component_index(const BimatrixGame& game,
                            const EquilibriumStructure& eqs, int component,
                            const IndexOptions& options = {}, int depth = 0);

std::vector<IndexResult> component_indices(const BimatrixGame& game,
                                           const EquilibriumStructure& eqs,
                                           const IndexOptions& options = {});

// Indices of every component from one perturbation pass; empty when the
// draws do not settle.
std::optional<std::vector<int>> perturbation_indices(
    const BimatrixGame& game, const EquilibriumStructure& eqs,
    const IndexOptions& options = {});

// Product of per-player regions; strict inequalities are ignored, the
// region is open relative to the strategy simplices.
struct AdmissibleRegion {
  std::array<InequalityPolytope, 2> sides;

  static AdmissibleRegion everything(const BimatrixGame& game);
  // Strictly inside every extra inequality.
  bool interior(const MixedProfile& p) const;
  // Inside the closure.
  bool closure(const MixedProfile& p) const;
};

enum class Placement { kInside, kOutside, kStraddles };

Placement place(const AdmissibleRegion& region, const NashComponent& c);

struct RegionIndex {
  std::optional<int> value;
  std::vector<int> inside;      // component ids
  std::vector<int> straddling;  // nonempty means the region is not admissible
  std::vector<int> unresolved;  // inside components without an index
};

RegionIndex region_index(const EquilibriumStructure& eqs,
                         const std::vector<IndexResult>& indices,
                         const AdmissibleRegion& region);

// Adds the duplicates, finds the image of the component and compares the
// recomputed index with the original. Throws std::runtime_error when an index
// does not resolve.
bool check_duplication_invariance(const BimatrixGame& game, int component,
                                  int player, const std::vector<Vec>& mixtures,
                                  const IndexOptions& options = {});

// The same check for every component at once, given the original indices.
// False when any index differs or fails to resolve.
bool check_duplication_invariance(const BimatrixGame& game,
                                  const EquilibriumStructure& eqs,
                                  const std::vector<IndexResult>& indices,
                                  int player, const std::vector<Vec>& mixtures,
                                  const IndexOptions& options = {});

}  // namespace hyperindex

#endif  // HYPERINDEX_INDEX_HPP_
