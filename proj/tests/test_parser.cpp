#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hyperindex/parser.hpp"
#include "test_util.hpp"

using namespace hyperindex;
using hyperindex::testing::corpus;
using hyperindex::testing::q;

TEST_CASE("corpus files parse and validate") {
  for (const char* name :
       {"entry", "entrymod", "game-fig3", "beer_quiche", "chokreps_figIV",
        "three_types", "spence", "stage_fig6", "stage_fig8", "repeated_fig6",
        "repeated_fig8"}) {
    CAPTURE(name);
    CHECK_NOTHROW(corpus(name));
  }
}

TEST_CASE("entry file structure") {
  GameTree t = corpus("entry");
  const Node& root = t.node(t.root());
  CHECK(root.kind == NodeKind::kDecision);
  CHECK(t.infoset(root.infoset).actions == std::vector<std::string>{"Out", "In"});
  CHECK(t.node(root.children[0]).payoff[0] == 2);
}

TEST_CASE("beer-quiche chance weights") {
  GameTree t = corpus("beer_quiche");
  const Node& root = t.node(t.root());
  REQUIRE(root.kind == NodeKind::kChance);
  CHECK(root.probs == Vec{q(9, 10), q(1, 10)});
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_game("player 1 infoset x {\n  a: (1/0, 2)\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
    CHECK(std::string(e.what()).find("malformed rational '1/0'") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(parse_game("player 3 infoset x { a: (0, 0) }"), ParseError);
  CHECK_THROWS_AS(parse_game("(0, 0) (1, 1)"), ParseError);
  CHECK_THROWS_AS(parse_game("player 1 infoset x { }"), ParseError);
  CHECK_THROWS_AS(parse_game("chance { 1/2: (0, 0) 1/3: (0, 0) }"),
                  std::invalid_argument);
}

TEST_CASE("parameters and value expressions") {
  const char* text = "param e = 1/4\n(3-$e, 2*$e+1)";
  GameTree t = parse_game(text);
  CHECK(t.node(0).payoff[0] == q(11, 4));
  CHECK(t.node(0).payoff[1] == q(3, 2));
  t = parse_game(text, {{"e", q(0)}});
  CHECK(t.node(0).payoff[0] == 3);
  CHECK_THROWS_AS(parse_game(text, {{"f", q(0)}}), ParseError);
  CHECK_THROWS_AS(parse_game("(1, $z)"), ParseError);

  GameTree rep = corpus("repeated_fig6", {{"eps", q(0)}});
  GameTree rep2 = corpus("repeated_fig6");
  Rational diff = 0;
  for (std::size_t k = 0; k < rep.num_terminals(); ++k)
    diff += rep.node(rep.terminals()[k]).payoff[1] -
            rep2.node(rep2.terminals()[k]).payoff[1];
  CHECK(diff == q(9, 100));
}

TEST_CASE("format_game round trip") {
  for (const char* name : {"entry", "three_types", "chokreps_figIV"}) {
    std::ifstream in(hyperindex::testing::data_path(std::string(name) + ".game"));
    std::stringstream ss;
    ss << in.rdbuf();
    std::string once = format_game(parse_game_spec(ss.str()));
    CHECK(format_game(parse_game_spec(once)) == once);
  }
}
