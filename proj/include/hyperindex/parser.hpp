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

#ifndef HYPERINDEX_PARSER_HPP_
#define HYPERINDEX_PARSER_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyperindex/gametree.hpp"

namespace hyperindex {

// Game file grammar:
//
//   file     := { "param" name "=" rational } node
//   node     := chance | decision | terminal
//   chance   := "chance" "{" ( value ":" node )+ "}"
//   decision := "player" int "infoset" string "{" ( label ":" node )+ "}"
//   terminal := "(" value "," value ")"
//   value    := term { ("+" | "-") term }
//   term     := rational | [ rational "*" ] "$" name
//
// Strings and labels are bare words or double-quoted; "#" starts a comment.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

using Params = std::map<std::string, Rational>;

// Overrides replace the file's param defaults. Throws ParseError.
NodeSpec parse_game_spec(std::string_view text, const Params& overrides = {});

// Parses, builds and validates. Throws ParseError on syntax errors and
// std::invalid_argument carrying the diagnostics on validation failure.
GameTree parse_game(std::string_view text, const Params& overrides = {});
GameTree load_game(const std::string& path, const Params& overrides = {});

std::string format_game(const NodeSpec& spec);

}  // namespace hyperindex

#endif  // HYPERINDEX_PARSER_HPP_
