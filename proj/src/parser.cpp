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

#include "hyperindex/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace hyperindex {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { kWord, kString, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int line = 0;
  int column = 0;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' ||
         c == '.' || c == '\'' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw ParseError(line, col, "unterminated string");
      t.kind = Tok::kString;
      t.text = std::string(text.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else if (std::string_view("{}():,=+-*").find(c) != std::string_view::npos) {
      t.kind = Tok::kPunct;
      t.text = std::string(1, c);
      advance(1);
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      t.kind = Tok::kWord;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Params& overrides)
      : toks_(std::move(tokens)), overrides_(overrides) {}

  NodeSpec file() {
    while (peek().kind == Tok::kWord && peek().text == "param") {
      next();
      Token name = expect_word("parameter name");
      expect("=");
      Rational v = rational(next());
      params_[name.text] = v;
    }
    for (const auto& [k, v] : overrides_) {
      if (!params_.count(k))
        throw ParseError(1, 1, "unknown parameter '" + k + "'");
      params_[k] = v;
    }
    NodeSpec root = node();
    if (peek().kind != Tok::kEnd) fail(peek(), "trailing input");
    return root;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg);
  }

  std::string describe(const Token& t) const {
    return t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
  }

  void expect(const std::string& punct) {
    Token t = next();
    if (t.kind != Tok::kPunct || t.text != punct)
      fail(t, "expected '" + punct + "' but found " + describe(t));
  }

  Token expect_word(const std::string& what) {
    Token t = next();
    if (t.kind != Tok::kWord) fail(t, "expected " + what + " but found " + describe(t));
    return t;
  }

  Rational rational(const Token& t) {
    if (t.kind != Tok::kWord) fail(t, "expected a rational but found " + describe(t));
    auto r = parse_rational(t.text);
    if (!r) fail(t, "malformed rational '" + t.text + "'");
    return *r;
  }

  Rational param(const Token& t) {
    std::string name = t.text.substr(1);
    auto it = params_.find(name);
    if (it == params_.end()) fail(t, "undefined parameter '" + t.text + "'");
    return it->second;
  }

  Rational term() {
    Token t = next();
    if (t.kind == Tok::kWord && !t.text.empty() && t.text[0] == '$') return param(t);
    Rational r = rational(t);
    if (peek().kind == Tok::kPunct && peek().text == "*") {
      next();
      Token p = next();
      if (p.kind != Tok::kWord || p.text.empty() || p.text[0] != '$')
        fail(p, "expected a parameter after '*'");
      return r * param(p);
    }
    return r;
  }

  Rational value() {
    Rational sign = 1;
    if (peek().kind == Tok::kPunct && peek().text == "-") {
      next();
      sign = -1;
    }
    Rational v = sign * term();
    while (peek().kind == Tok::kPunct &&
           (peek().text == "+" || peek().text == "-")) {
      bool minus = next().text == "-";
      Rational t = term();
      v += minus ? Rational(-t) : t;
    }
    return v;
  }

  std::string label() {
    Token t = next();
    if (t.kind != Tok::kWord && t.kind != Tok::kString)
      fail(t, "expected a label but found " + describe(t));
    return t.text;
  }

  NodeSpec node() {
    const Token& t = peek();
    if (t.kind == Tok::kPunct && t.text == "(") {
      next();
      Rational u1 = value();
      expect(",");
      Rational u2 = value();
      expect(")");
      return NodeSpec::terminal(u1, u2);
    }
    if (t.kind == Tok::kWord && t.text == "chance") {
      next();
      expect("{");
      std::vector<std::pair<Rational, NodeSpec>> kids;
      do {
        Rational p = value();
        expect(":");
        kids.push_back({p, node()});
      } while (!(peek().kind == Tok::kPunct && peek().text == "}"));
      expect("}");
      return NodeSpec::chance(std::move(kids));
    }
    if (t.kind == Tok::kWord && t.text == "player") {
      next();
      Token who = expect_word("player number");
      if (who.text != "1" && who.text != "2")
        fail(who, "player must be 1 or 2, found '" + who.text + "'");
      Token kw = expect_word("'infoset'");
      if (kw.text != "infoset") fail(kw, "expected 'infoset' but found " + describe(kw));
      std::string id = label();
      expect("{");
      std::vector<std::pair<std::string, NodeSpec>> kids;
      do {
        std::string a = label();
        expect(":");
        kids.push_back({a, node()});
      } while (!(peek().kind == Tok::kPunct && peek().text == "}"));
      expect("}");
      return NodeSpec::decision(who.text == "1" ? 1 : 2, id, std::move(kids));
    }
    fail(t, "expected a node but found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Params params_;
  const Params& overrides_;
};

}  // namespace

NodeSpec parse_game_spec(std::string_view text, const Params& overrides) {
  Parser p(tokenize(text), overrides);
  return p.file();
}

GameTree parse_game(std::string_view text, const Params& overrides) {
  NodeSpec spec = parse_game_spec(text, overrides);
  GameTree tree = GameTree::build(spec);
  auto diags = validate_tree(tree);
  if (!diags.empty()) {
    std::string msg = "invalid game tree:";
    for (const auto& d : diags) msg += "\n  " + d;
    throw std::invalid_argument(msg);
  }
  return tree;
}

GameTree load_game(const std::string& path, const Params& overrides) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str(), overrides);
}

namespace {

std::string quote(const std::string& s) {
  for (char c : s)
    if (!word_char(c) || c == '$') return "\"" + s + "\"";
  if (s.empty()) return "\"\"";
  return s;
}

void format_node(const NodeSpec& n, int depth, std::string& out) {
  std::string pad(2 * depth, ' ');
  switch (n.kind) {
    case NodeKind::kTerminal:
      out += "(" + n.payoff[0].get_str() + ", " + n.payoff[1].get_str() + ")";
      return;
    case NodeKind::kChance:
      out += "chance {\n";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        out += pad + "  " + n.probs[i].get_str() + ": ";
        format_node(n.children[i], depth + 1, out);
        out += "\n";
      }
      out += pad + "}";
      return;
    case NodeKind::kDecision:
      out += "player " + std::to_string(n.player) + " infoset " +
             quote(n.infoset) + " {\n";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        out += pad + "  " + quote(n.labels[i]) + ": ";
        format_node(n.children[i], depth + 1, out);
        out += "\n";
      }
      out += pad + "}";
      return;
  }
}

}  // namespace

std::string format_game(const NodeSpec& spec) {
  std::string out;
  format_node(spec, 0, out);
  return out + "\n";
}

}  // namespace hyperindex
