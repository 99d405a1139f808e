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

#ifndef HYPERINDEX_BIMATRIX_HPP_
#define HYPERINDEX_BIMATRIX_HPP_

#include <array>
#include <string>
#include <vector>

#include "hyperindex/rational.hpp"

namespace hyperindex {

// Player 1 picks rows and is paid by a; player 2 picks columns, paid by b.
struct BimatrixGame {
  std::array<std::vector<std::string>, 2> labels;
  Mat a;
  Mat b;

  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }
  std::size_t num_strategies(int player) const {
    return player == 1 ? rows() : cols();
  }
  const Mat& payoffs(int player) const { return player == 1 ? a : b; }
};

// Builds a game from row-major payoff pairs; labels default to 1..n.
BimatrixGame make_bimatrix(const Mat& a, const Mat& b,
                           std::vector<std::string> row_labels = {},
                           std::vector<std::string> col_labels = {});

struct MixedProfile {
  Vec x;
  Vec y;

  const Vec& of(int player) const { return player == 1 ? x : y; }
  bool operator==(const MixedProfile&) const = default;
};

bool operator<(const MixedProfile& p, const MixedProfile& q);

std::vector<int> support(const Vec& v);

}  // namespace hyperindex

#endif  // HYPERINDEX_BIMATRIX_HPP_
