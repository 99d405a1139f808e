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


#ifndef HYPERINDEX_REPORT_HPP_
#define HYPERINDEX_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperindex/excluded.hpp"
#include "hyperindex/index.hpp"
#include "hyperindex/parser.hpp"

namespace hyperindex {

inline constexpr const char* kReportSchema = "hyperindex-report/1";

struct AnalysisOptions {
  std::uint64_t seed = 1;
  Params params;
  // Explore the component of this pure profile (row label, column label)
  // instead of enumerating every equilibrium.
  std::optional<std::pair<std::string, std::string>> from;
  std::size_t max_extremes = 5000;
  // Games with more pure profiles need `from`.
  std::size_t full_limit = 1024;
};

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalysisReport {
  std::string name;
  Params params;
  std::uint64_t seed = 1;
  GameTree tree;
  TreeNormalForm nf;
  EquilibriumStructure eqs;
  bool local = false;
  bool complete = true;
  std::optional<std::pair<std::string, std::string>> from;
  std::vector<ComponentOutcome> outcomes;
  std::vector<IndexResult> indices;
  std::vector<HyperstabilityReport> hyper;
  std::vector<std::string> diagnostics;

  // Sum of component indices; empty when one is unresolved or the
  // structure is local.
  std::optional<int> index_sum() const;
  bool unresolved() const;
  bool generic() const;
};

// Throws TooLargeError for large games without `from`, std::invalid_argument
// for an unknown or non-equilibrium `from` profile.
AnalysisReport analyze(const std::string& name, const GameTree& tree,
                       const AnalysisOptions& options);

nlohmann::ordered_json to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

// Pieces shared with the command-line tool.
nlohmann::ordered_json mixed_json(const std::vector<std::string>& labels,
                                  const Vec& v);
nlohmann::ordered_json game_json(const BimatrixGame& game);
std::string format_table(const BimatrixGame& game);
std::string excluded_text(const HyperstabilityReport& h, int player);

}  // namespace hyperindex

#endif  // HYPERINDEX_REPORT_HPP_
