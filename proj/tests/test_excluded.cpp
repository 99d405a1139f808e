#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hyperindex/excluded.hpp"
#include "hyperindex/normalform.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace hyperindex;
using hyperindex::testing::corpus;
using hyperindex::testing::q;

namespace {

struct Case {
  GameTree tree;
  TreeNormalForm nf;
  EquilibriumStructure eqs;

  explicit Case(const std::string& name, const Params& params = {})
      : tree(corpus(name, params)),
        nf(reduced_tree_normal_form(tree)),
        eqs(analyze_equilibria(nf.game)) {}

  int label_index(int player, const std::string& label) const {
    const auto& ls = nf.game.labels[player - 1];
    auto it = std::find(ls.begin(), ls.end(), label);
    REQUIRE(it != ls.end());
    return static_cast<int>(it - ls.begin());
  }

  // Component in which player 1 plays the given pure strategy throughout.
  int component_with_row(const std::string& row) const {
    int r = label_index(1, row);
    for (const auto& c : eqs.components) {
      bool all = true;
      for (int e : c.extremes)
        if (eqs.extremes[e].profile.x[r] != 1) all = false;
      if (all) return c.id;
    }
    FAIL("no component with row " << row);
    return -1;
  }

  Outcome outcome(int c) const {
    auto o = component_outcome(tree, nf, eqs, eqs.components[c]);
    REQUIRE(o.unique);
    return o.outcome;
  }
};

std::vector<std::string> infoset_ids(const GameTree& tree,
                                     const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (int u : ids) out.push_back(tree.infoset(u).id);
  return out;
}

std::vector<std::string> labels_of(const TreeNormalForm& nf, int player,
                                   const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(nf.game.labels[player - 1][i]);
  std::sort(out.begin(), out.end());
  return out;
}

// Payoff pair of the excluded game at the named row and column.
std::array<Rational, 2> cell(const ExcludedGame& eg, const std::string& row,
                             const std::string& col) {
  const auto& rl = eg.game.labels[0];
  const auto& cl = eg.game.labels[1];
  auto r = std::find(rl.begin(), rl.end(), row);
  auto c = std::find(cl.begin(), cl.end(), col);
  REQUIRE(r != rl.end());
  REQUIRE(c != cl.end());
  return {eg.game.a[r - rl.begin()][c - cl.begin()],
          eg.game.b[r - rl.begin()][c - cl.begin()]};
}

const char* kCorpus[] = {"entry",         "entrymod",    "game-fig3",
                         "beer_quiche",   "chokreps_figIV", "three_types",
                         "spence",        "stage_fig6",  "stage_fig8",
                         "repeated_fig8"};

}  // namespace

TEST_CASE("on/off-path partition") {
  Case entry("entry");
  int out = entry.component_with_row("Out");
  auto p = on_off_partition(entry.tree, entry.outcome(out));
  CHECK(infoset_ids(entry.tree, p.on[0]) == std::vector<std::string>{"I1"});
  CHECK(infoset_ids(entry.tree, p.off[0]) == std::vector<std::string>{"I2"});
  CHECK(p.on[1].empty());
  CHECK(infoset_ids(entry.tree, p.off[1]) == std::vector<std::string>{"II"});
  CHECK(p.zero_terminals.size() == 4);

  Case f8("stage_fig8");
  for (const auto& c : f8.eqs.components) {
    const auto& e = f8.eqs.extremes[c.extremes[0]];
    if (e.supports[0].size() != 2) continue;
    auto full = on_off_partition(f8.tree, f8.outcome(c.id));
    CHECK(full.off[0].empty());
    CHECK(full.off[1].empty());
    CHECK(full.zero_terminals.empty());
  }

  Case bq("beer_quiche");
  auto qq = on_off_partition(bq.tree, bq.outcome(bq.component_with_row("Q-Q")));
  CHECK(infoset_ids(bq.tree, qq.off[1]) == std::vector<std::string>{"afterB"});
  CHECK(infoset_ids(bq.tree, qq.on[1]) == std::vector<std::string>{"afterQ"});
}

TEST_CASE("observable deviations") {
  Case entry("entry");
  int out = entry.component_with_row("Out");
  auto p = on_off_partition(entry.tree, entry.outcome(out));
  auto devs = observable_deviations(entry.tree, entry.nf, p,
                                    entry.eqs.profiles(entry.eqs.components[out]));
  CHECK(labels_of(entry.nf, 1, devs[0]) ==
        std::vector<std::string>{"In-L", "In-R"});
  CHECK(devs[1].empty());

  Case bq("beer_quiche");
  int qq = bq.component_with_row("Q-Q");
  auto pq = on_off_partition(bq.tree, bq.outcome(qq));
  auto dq = observable_deviations(bq.tree, bq.nf, pq,
                                  bq.eqs.profiles(bq.eqs.components[qq]));
  CHECK(labels_of(bq.nf, 1, dq[0]) ==
        std::vector<std::string>{"B-B", "B-Q", "Q-B"});
  // Fighting after quiche reaches a zero-mass terminal.
  CHECK(labels_of(bq.nf, 2, dq[1]) == std::vector<std::string>{"F-F", "NF-F"});

  // A strategy deviates exactly when it takes a zero-mass action at an
  // on-path information set it reaches.
  for (const char* name : kCorpus) {
    Case k(name);
    for (const auto& c : k.eqs.components) {
      auto o = component_outcome(k.tree, k.nf, k.eqs, c);
      if (!o.unique) continue;
      auto part = on_off_partition(k.tree, o.outcome);
      auto d = observable_deviations(k.tree, k.nf, part, k.eqs.profiles(c));
      for (int player : {1, 2}) {
        std::vector<int> want;
        const auto& plans = k.nf.plans[player - 1];
        const auto& mine = k.tree.player_infosets(player);
        for (std::size_t s = 0; s < plans.size(); ++s) {
          bool dev = false;
          for (std::size_t j = 0; j < mine.size(); ++j) {
            int u = mine[j];
            if (part.on_path(u) && plan_reaches(k.tree, plans[s], u) &&
                !part.positive(u, plans[s][j]))
              dev = true;
          }
          if (dev) want.push_back(static_cast<int>(s));
        }
        CHECK_MESSAGE(d[player - 1] == want, name << " component " << c.id);
      }
      if (d[0].empty() && d[1].empty()) {
        CHECK(part.zero_terminals.empty());
        CHECK(*component_index(k.nf.game, k.eqs, c.id).value != 0);
      }
    }
  }
}

TEST_CASE("kuhn split preserves outcomes") {
  Case r8("repeated_fig8");
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const auto& c : r8.eqs.components) {
    auto o = component_outcome(r8.tree, r8.nf, r8.eqs, c);
    if (!o.unique) continue;
    auto part = on_off_partition(r8.tree, o.outcome);
    if (part.off[0].empty() || part.on[0].empty()) continue;
    for (int player : {1, 2}) {
      const auto& plans = r8.nf.plans[player - 1];
      Vec w = hyperindex::testing::random_weights(rng, plans.size());
      auto split = kuhn_split(r8.tree, part, player, plans, w);
      for (int trial = 0; trial < 5; ++trial) {
        int other = 3 - player;
        BehaviorStrategy opp;
        opp.player = other;
        for (int u : r8.tree.player_infosets(other))
          opp.local.push_back(hyperindex::testing::random_weights(
              rng, r8.tree.infoset(u).actions.size()));
        Outcome want = zeros(r8.tree.num_terminals());
        for (std::size_t s = 0; s < plans.size(); ++s) {
          auto b = pure_behavior(r8.tree, player, plans[s]);
          Outcome os = player == 1 ? outcome_of(r8.tree, b, opp)
                                   : outcome_of(r8.tree, opp, b);
          for (std::size_t z = 0; z < want.size(); ++z) want[z] += w[s] * os[z];
        }
        CHECK(split_outcome(r8.tree, part, split, player, opp) == want);
      }
    }
    if (++checked == 4) break;
  }
  CHECK(checked == 4);
}

TEST_CASE("included game") {
  Case entry("entry");
  int out = entry.component_with_row("Out");
  auto p = on_off_partition(entry.tree, entry.outcome(out));
  auto g = included_game(entry.tree, p, split_strategies(entry.tree, p));
  REQUIRE(g.game.rows() == 1);
  REQUIRE(g.game.cols() == 1);
  CHECK(g.game.a[0][0] == 2);
  CHECK(g.game.b[0][0] == 2);

  Case f8("stage_fig8");
  for (const auto& c : f8.eqs.components) {
    if (f8.eqs.extremes[c.extremes[0]].supports[0].size() != 2) continue;
    auto full = on_off_partition(f8.tree, f8.outcome(c.id));
    auto whole = included_game(f8.tree, full, split_strategies(f8.tree, full));
    CHECK(whole.game.a == f8.nf.game.a);
    CHECK(whole.game.b == f8.nf.game.b);
  }
}

TEST_CASE("excluded games") {
  Case entry("entry");
  int out = entry.component_with_row("Out");
  auto rep = factorized_index(entry.tree, entry.nf, entry.eqs, out);
  REQUIRE(rep.excluded[0].has_value());
  CHECK_FALSE(rep.excluded[1].has_value());
  const auto& e1 = *rep.excluded[0];
  CHECK(e1.on_path_payoff == 2);
  CHECK(cell(e1, "In-L", "l") == std::array<Rational, 2>{3, 1});
  CHECK(cell(e1, "In-L", "r") == std::array<Rational, 2>{0, 0});
  CHECK(cell(e1, "In-R", "l") == std::array<Rational, 2>{0, 0});
  CHECK(cell(e1, "In-R", "r") == std::array<Rational, 2>{1, 3});

  Case bq("beer_quiche");
  auto bqr = factorized_index(bq.tree, bq.nf, bq.eqs, bq.component_with_row("Q-Q"));
  const auto& s = *bqr.excluded[0];
  CHECK(s.game.rows() == 3);
  CHECK(s.game.cols() == 2);
  CHECK(cell(s, "B-Q", "NF") == std::array<Rational, 2>{3, q(9, 10)});
  CHECK(cell(s, "B-Q", "F") == std::array<Rational, 2>{q(6, 5), 0});
  CHECK(cell(s, "Q-B", "NF") == std::array<Rational, 2>{2, q(9, 10)});
  CHECK(cell(s, "Q-B", "F") == std::array<Rational, 2>{q(9, 5), 1});
  CHECK(cell(s, "B-B", "NF") == std::array<Rational, 2>{q(29, 10), q(9, 10)});
  CHECK(cell(s, "B-B", "F") == std::array<Rational, 2>{q(9, 10), q(1, 10)});

  Case f3("game-fig3");
  auto f3r = factorized_index(f3.tree, f3.nf, f3.eqs, f3.component_with_row("T"));
  const auto& t = *f3r.excluded[0];
  CHECK(t.game.rows() == 1);
  CHECK(cell(t, "B", "a") == std::array<Rational, 2>{1, 1});
  CHECK(cell(t, "B", "b") == std::array<Rational, 2>{q(3, 2), 0});
}

TEST_CASE("excluded payoffs do not depend on the anchor within the component") {
  for (const char* name : kCorpus) {
    Case k(name);
    for (const auto& c : k.eqs.components) {
      auto o = component_outcome(k.tree, k.nf, k.eqs, c);
      if (!o.unique) continue;
      auto part = on_off_partition(k.tree, o.outcome);
      auto split = split_strategies(k.tree, part);
      auto devs = observable_deviations(k.tree, k.nf, part, k.eqs.profiles(c));
      for (int player : {1, 2}) {
        if (devs[player - 1].empty()) continue;
        auto eg = excluded_game(k.tree, k.nf, part, split, o.outcome,
                                devs[player - 1], player);
        int other = 3 - player;
        const auto& mine = k.tree.player_infosets(other);
        // Every equilibrium of the component plays the anchor on path.
        Vec bary = zeros(k.nf.plans[other - 1].size());
        for (const auto& p : k.eqs.profiles(c)) {
          const Vec& v = p.of(other);
          auto b = mixed_to_behavior(k.tree, other, k.nf.plans[other - 1], v);
          for (std::size_t j = 0; j < mine.size(); ++j)
            if (part.on_path(mine[j])) CHECK(b.local[j] == eg.anchor.local[j]);
          for (std::size_t s = 0; s < v.size(); ++s) bary[s] += v[s];
        }
        auto b = mixed_to_behavior(k.tree, other, k.nf.plans[other - 1], bary);
        for (std::size_t j = 0; j < mine.size(); ++j)
          if (part.on_path(mine[j])) CHECK(b.local[j] == eg.anchor.local[j]);

        bool pure_on_path = true;
        for (std::size_t j = 0; j < mine.size(); ++j)
          if (part.on_path(mine[j]))
            for (const auto& x : eg.anchor.local[j])
              if (x != 0 && x != 1) pure_on_path = false;
        if (pure_on_path) {
          auto uni = excluded_game(k.tree, k.nf, part, split, o.outcome,
                                   devs[player - 1], player, Anchor::kUniform);
          CHECK(uni.game.a == eg.game.a);
          CHECK(uni.game.b == eg.game.b);
        }
      }
    }
  }
}

TEST_CASE("uniform anchor off the component changes excluded payoffs") {
  Case r8("repeated_fig8");
  bool differed = false;
  for (const auto& c : r8.eqs.components) {
    auto o = component_outcome(r8.tree, r8.nf, r8.eqs, c);
    if (!o.unique) continue;
    auto part = on_off_partition(r8.tree, o.outcome);
    auto split = split_strategies(r8.tree, part);
    auto devs = observable_deviations(r8.tree, r8.nf, part, r8.eqs.profiles(c));
    if (devs[0].empty()) continue;
    auto a = excluded_game(r8.tree, r8.nf, part, split, o.outcome, devs[0], 1);
    auto b = excluded_game(r8.tree, r8.nf, part, split, o.outcome, devs[0], 1,
                           Anchor::kUniform);
    if (a.game.a != b.game.a) differed = true;
  }
  CHECK(differed);
}

TEST_CASE("supporting polytope membership is the direct payoff check") {
  std::mt19937_64 rng(17);
  for (const char* name : kCorpus) {
    Case k(name);
    for (const auto& c : k.eqs.components) {
      auto rep = factorized_index(k.tree, k.nf, k.eqs, c.id);
      for (int player : {1, 2}) {
        if (!rep.excluded[player - 1]) continue;
        const auto& eg = *rep.excluded[player - 1];
        auto sp = supporting_polytope(eg);
        for (int trial = 0; trial < 100; ++trial) {
          Vec mix = hyperindex::testing::random_weights(rng, eg.game.cols());
          bool direct = true;
          for (const auto& row : eg.game.a)
            if (dot(row, mix) > eg.on_path_payoff) direct = false;
          CHECK(sp.contains(mix) == direct);
        }
      }
    }
  }

  Case entry("entry");
  auto rep = factorized_index(entry.tree, entry.nf, entry.eqs,
                              entry.component_with_row("Out"));
  auto sp = supporting_polytope(*rep.excluded[0]);
  // Columns are l, r.
  CHECK(sp.contains({q(2, 3), q(1, 3)}));
  CHECK_FALSE(sp.contains({q(3, 4), q(1, 4)}));
  CHECK(sp.indifferent_rows({q(2, 3), q(1, 3)}).size() == 1);
  CHECK(sp.contains({q(0), q(1)}));
}

TEST_CASE("supporting polytope indices") {
  Case entry("entry");
  auto er = factorized_index(entry.tree, entry.nf, entry.eqs,
                             entry.component_with_row("Out"));
  const auto& ee = *er.excluded[0];
  CHECK(supporting_polytope_index(ee, supporting_polytope(ee)) == 0);
  const auto& pa = *er.polytopes[0];
  int inside = 0;
  for (const auto& c : pa.components) {
    const auto& x = c.extremes[0];
    if (c.placement != Placement::kInside) {
      CHECK(format_profile(ee.game, x) == "(In-L, l)");
      continue;
    }
    ++inside;
    if (x.x[1] == 1)
      CHECK(*c.index == 1);
    else {
      CHECK(x.x == Vec{q(3, 4), q(1, 4)});
      CHECK(x.y == Vec{q(1, 4), q(3, 4)});
      CHECK(*c.index == -1);
    }
  }
  CHECK(inside == 2);

  Case bq("beer_quiche");
  auto br = factorized_index(bq.tree, bq.nf, bq.eqs, bq.component_with_row("Q-Q"));
  CHECK(*br.excluded_factor[0] == 0);
  CHECK(br.polytopes[0]->equilibria.extremes.size() == 3);
  for (const auto& c : br.polytopes[0]->components) {
    std::string f = format_profile(br.excluded[0]->game, c.extremes[0]);
    if (f == "(B-Q, NF)") {
      CHECK(c.placement == Placement::kOutside);
    } else if (f == "(Q-B, F)") {
      CHECK(c.placement == Placement::kInside);
      CHECK(*c.index == 1);
    } else {
      CHECK(f == "(1/10 B-Q + 9/10 Q-B, 5/8 F + 3/8 NF)");
      CHECK(c.placement == Placement::kInside);
      CHECK(*c.index == -1);
    }
  }

  Case ck("chokreps_figIV");
  auto cr = factorized_index(ck.tree, ck.nf, ck.eqs, ck.component_with_row("m'-m'"));
  const auto& ce = *cr.excluded[0];
  REQUIRE(cr.polytopes[0]->equilibria.extremes.size() == 1);
  CHECK(format_profile(ce.game, cr.polytopes[0]->equilibria.extremes[0].profile) ==
        "(m-m, r2)");
  CHECK(cr.polytopes[0]->components[0].placement == Placement::kOutside);
  CHECK(supporting_polytope_index(ce, supporting_polytope(ce)) == 0);
}

TEST_CASE("genericity diagnostics") {
  Case entry("entry");
  auto g = check_genericity(entry.tree, entry.nf, entry.eqs,
                            entry.component_with_row("Out"));
  CHECK(g.unique_outcome);
  CHECK(g.a1);
  CHECK(g.a2[0]);
  CHECK(g.a2[1]);

  Case f3("game-fig3");
  auto r = factorized_index(f3.tree, f3.nf, f3.eqs, f3.component_with_row("T"));
  CHECK(r.genericity.a1);
  CHECK_FALSE(r.genericity.a2[0]);
  CHECK(r.status == "A.2 failed");
  CHECK_FALSE(r.product.has_value());
  const auto& pa = *r.polytopes[0];
  bool witness = false;
  for (const auto& c : pa.components)
    if (c.boundary &&
        format_profile(r.excluded[0]->game, c.extremes[0]) == "(B, a)") {
      witness = true;
      CHECK(c.extremes[0].x == Vec{1});
    }
  CHECK(witness);
  CHECK(r.excluded[0]->on_path_payoff == 1);
  CHECK(pa.detail.find("pays exactly 1") != std::string::npos);
  CHECK_THROWS_AS(supporting_polytope_index(*r.excluded[0],
                                            supporting_polytope(*r.excluded[0])),
                  GenericityError);
}

TEST_CASE("factorized index") {
  Case entry("entry");
  auto out = factorized_index(entry.tree, entry.nf, entry.eqs,
                              entry.component_with_row("Out"));
  CHECK(out.status == "ok");
  CHECK(*out.excluded_factor[0] == 0);
  CHECK(*out.included_factor == 1);
  CHECK(*out.excluded_factor[1] == 1);
  CHECK(*out.product == 0);
  CHECK_FALSE(*out.hyperstable);

  for (const char* name : kCorpus) {
    Case k(name);
    for (const auto& c : k.eqs.components) {
      auto rep = factorized_index(k.tree, k.nf, k.eqs, c.id);
      if (rep.status == "A.1 failed" || rep.status == "A.2 failed") continue;
      CHECK_MESSAGE(rep.status == "ok", name << " component " << c.id);
      REQUIRE(rep.product.has_value());
      REQUIRE(rep.full_index.has_value());
      CHECK(*rep.product == *rep.full_index);
      CHECK(*rep.product ==
            *rep.excluded_factor[0] * *rep.included_factor * *rep.excluded_factor[1]);
    }
  }
}

TEST_CASE("twice-repeated figure 6") {
  auto explore = [](const Params& params, std::size_t cap, bool* complete) {
    GameTree tree = corpus("repeated_fig6", params);
    TreeNormalForm nf = reduced_tree_normal_form(tree);
    auto find = [&](int player, const std::string& l) {
      const auto& ls = nf.game.labels[player - 1];
      return static_cast<std::size_t>(std::find(ls.begin(), ls.end(), l) - ls.begin());
    };
    MixedProfile seed{unit(nf.game.rows(), find(1, "C-A-B-B")),
                      unit(nf.game.cols(), find(2, "A-C-C-A"))};
    EquilibriumStructure eqs = explore_component(nf.game, seed, cap, complete);
    FactorizationOptions options;
    options.cross_check = false;
    return factorized_index(tree, nf, eqs, 0, options);
  };
  bool complete = false;
  auto tweaked = explore({}, 5000, &complete);
  CHECK(complete);
  CHECK(tweaked.status == "ok");
  CHECK(*tweaked.excluded_factor[0] == -1);
  CHECK(*tweaked.included_factor == 1);
  CHECK(*tweaked.excluded_factor[1] == 0);
  CHECK(*tweaked.product == 0);
  CHECK_FALSE(*tweaked.hyperstable);
  REQUIRE(tweaked.included.has_value());
  CHECK(tweaked.included->game.a == Mat{{q(6)}});
  CHECK(tweaked.included->game.b == Mat{{q(6)}});

  // Without the tweak the component is far larger; a partial walk already
  // shows two outcomes.
  auto plain = explore({{"eps", q(0)}}, 200, &complete);
  CHECK_FALSE(complete);
  CHECK_FALSE(plain.genericity.unique_outcome);
  CHECK(plain.status == "A.1 failed");
}
