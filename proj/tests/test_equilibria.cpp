#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hyperindex/equilibria.hpp"
#include "hyperindex/lp.hpp"
#include "hyperindex/normalform.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace hyperindex;
using hyperindex::testing::corpus;
using hyperindex::testing::q;

namespace {

std::set<MixedProfile> profile_set(const std::vector<ExtremeEquilibrium>& es) {
  std::set<MixedProfile> out;
  for (const auto& e : es) out.insert(e.profile);
  return out;
}

}  // namespace

TEST_CASE("entry reduced normal form") {
  BimatrixGame g = reduced_tree_normal_form(corpus("entry")).game;
  auto eqs = analyze_equilibria(g);
  std::set<MixedProfile> want{
      {unit(3, 1), unit(2, 0)},
      {unit(3, 0), unit(2, 1)},
      {unit(3, 0), {q(2, 3), q(1, 3)}}};
  CHECK(profile_set(eqs.extremes) == want);
  REQUIRE(eqs.components.size() == 2);
  REQUIRE(eqs.subsets.size() == 2);
  int out_subsets = 0;
  for (const auto& s : eqs.subsets) {
    if (s.xs.size() == 1 && s.xs[0] == unit(3, 0)) {
      ++out_subsets;
      CHECK(s.ys.size() == 2);
    }
  }
  CHECK(out_subsets == 1);
  for (const auto& e : eqs.extremes) {
    CHECK(is_equilibrium(g, e.profile));
    CHECK(e.payoffs == payoff(g, e.profile));
  }
}

TEST_CASE("figure 6 stage game has seven isolated equilibria") {
  BimatrixGame g = normal_form(corpus("stage_fig6")).game;
  auto eqs = analyze_equilibria(g);
  std::set<MixedProfile> want{
      {{q(1), q(0), q(0)}, {q(1), q(0), q(0)}},
      {{q(0), q(1), q(0)}, {q(0), q(1), q(0)}},
      {{q(0), q(0), q(1)}, {q(0), q(0), q(1)}},
      {{q(1, 5), q(4, 5), q(0)}, {q(3, 7), q(4, 7), q(0)}},
      {{q(1, 5), q(0), q(4, 5)}, {q(1, 3), q(0), q(2, 3)}},
      {{q(0), q(3, 4), q(1, 4)}, {q(0), q(1, 4), q(3, 4)}},
      {{q(1, 17), q(12, 17), q(4, 17)}, {q(3, 13), q(4, 13), q(6, 13)}}};
  CHECK(profile_set(eqs.extremes) == want);
  CHECK(eqs.extremes.size() == 7);
  CHECK(eqs.components.size() == 7);
  for (const auto& c : eqs.components) CHECK(c.is_singleton());
}

TEST_CASE("trivial and constant games") {
  BimatrixGame one = make_bimatrix({{q(5)}}, {{q(-2)}});
  auto e = enumerate_extreme_equilibria(one);
  REQUIRE(e.size() == 1);
  CHECK(e[0].profile == MixedProfile{{q(1)}, {q(1)}});

  BimatrixGame flat = make_bimatrix(Mat(3, Vec(2, q(1))), Mat(3, Vec(2, q(4))));
  auto s = analyze_equilibria(flat);
  CHECK(s.extremes.size() == 6);
  REQUIRE(s.subsets.size() == 1);
  CHECK(s.subsets[0].xs.size() == 3);
  CHECK(s.subsets[0].ys.size() == 2);
  CHECK(s.components.size() == 1);
}

TEST_CASE("enumeration agrees with the support oracle on random games") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
    // Small ranges make degenerate games common.
    BimatrixGame g = hyperindex::testing::random_game(rng, m, n, trial % 2 ? 2 : 5);
    CAPTURE(trial);
    auto mine = profile_set(enumerate_extreme_equilibria(g));
    auto oracle = hyperindex::testing::oracle_extreme_equilibria(g);
    CHECK(mine == oracle);
    auto eqs = analyze_equilibria(g);
    std::vector<int> seen(eqs.extremes.size(), 0);
    for (const auto& c : eqs.components)
      for (int k : c.extremes) ++seen[k];
    for (int s : seen) CHECK(s == 1);
    for (const auto& sub : eqs.subsets)
      for (const auto& x : sub.xs)
        for (const auto& y : sub.ys) CHECK(is_equilibrium(g, {x, y}));
  }
}

TEST_CASE("subset intersection graph of each component is connected") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    BimatrixGame g = hyperindex::testing::random_game(rng, 3, 3, 1);
    auto eqs = analyze_equilibria(g);
    for (const auto& c : eqs.components) {
      std::vector<int> reached{0};
      std::vector<bool> done(c.subsets.size(), false);
      done[0] = true;
      for (std::size_t k = 0; k < reached.size(); ++k) {
        for (std::size_t j = 0; j < c.subsets.size(); ++j) {
          if (done[j]) continue;
          const auto& a = c.subsets[reached[k]].extremes;
          const auto& b = c.subsets[j].extremes;
          if (std::find_first_of(a.begin(), a.end(), b.begin(), b.end()) != a.end()) {
            done[j] = true;
            reached.push_back(static_cast<int>(j));
          }
        }
      }
      CHECK(reached.size() == c.subsets.size());
    }
  }
}

TEST_CASE("component outcomes") {
  GameTree tree = corpus("entry");
  TreeNormalForm nf = reduced_tree_normal_form(tree);
  auto eqs = analyze_equilibria(nf.game);
  for (const auto& c : eqs.components) {
    ComponentOutcome o = component_outcome(tree, nf, eqs, c);
    REQUIRE(o.unique);
    bool out = eqs.extremes[c.extremes[0]].profile.x[0] == 1;
    Rational mass = 0;
    for (std::size_t t = 0; t < o.outcome.size(); ++t) {
      const auto& pay = tree.node(tree.terminals()[t]).payoff;
      if (out ? pay[0] == 2 : (pay[0] == 3 && pay[1] == 1)) mass += o.outcome[t];
    }
    CHECK(mass == 1);
  }

  // Convex combinations of a unique-outcome component keep the outcome.
  std::mt19937_64 rng(1);
  for (const char* name : {"beer_quiche", "spence", "chokreps_figIV"}) {
    GameTree t = corpus(name);
    TreeNormalForm f = reduced_tree_normal_form(t);
    auto s = analyze_equilibria(f.game);
    for (const auto& c : s.components) {
      ComponentOutcome o = component_outcome(t, f, s, c);
      if (!o.unique) continue;
      for (int trial = 0; trial < 10; ++trial) {
        const auto& sub = c.subsets[trial % c.subsets.size()];
        Vec wx = hyperindex::testing::random_weights(rng, sub.xs.size());
        Vec wy = hyperindex::testing::random_weights(rng, sub.ys.size());
        MixedProfile p{zeros(f.game.rows()), zeros(f.game.cols())};
        for (std::size_t k = 0; k < wx.size(); ++k)
          for (std::size_t i = 0; i < p.x.size(); ++i) p.x[i] += wx[k] * sub.xs[k][i];
        for (std::size_t k = 0; k < wy.size(); ++k)
          for (std::size_t j = 0; j < p.y.size(); ++j) p.y[j] += wy[k] * sub.ys[k][j];
        CHECK(mixed_outcome(t, f, p) == o.outcome);
      }
    }
  }
}

TEST_CASE("distances") {
  BimatrixGame g = reduced_tree_normal_form(corpus("entry")).game;
  auto eqs = analyze_equilibria(g);
  REQUIRE(eqs.components.size() == 2);
  CHECK(distance_between(eqs.components[0], eqs.components[1]) == 1);
  for (const auto& c : eqs.components)
    for (const auto& p : eqs.profiles(c)) {
      CHECK(distance_to_component(p, c) == 0);
      CHECK(eqs.component_of(p) == c.id);
    }
}

TEST_CASE("exploring from a seed recovers the component") {
  std::mt19937_64 rng(23);
  std::vector<BimatrixGame> games;
  for (const char* name : {"entry", "beer_quiche", "repeated_fig8"})
    games.push_back(reduced_tree_normal_form(corpus(name)).game);
  for (int trial = 0; trial < 20; ++trial) {
    BimatrixGame g = hyperindex::testing::random_game(rng, 4, 4, 2);
    games.push_back(g);
  }
  for (const auto& g : games) {
    auto eqs = analyze_equilibria(g);
    for (const auto& c : eqs.components) {
      auto local = explore_component(g, eqs.extremes[c.extremes.back()].profile);
      REQUIRE(local.components.size() == 1);
      std::set<MixedProfile> want;
      for (int e : c.extremes) want.insert(eqs.extremes[e].profile);
      CHECK(profile_set(local.extremes) == want);
      CHECK(local.subsets.size() == c.subsets.size());
    }
  }
}
