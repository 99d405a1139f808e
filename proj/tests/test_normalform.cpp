#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hyperindex/equilibria.hpp"
#include "hyperindex/normalform.hpp"
#include "test_util.hpp"

using namespace hyperindex;
using hyperindex::testing::corpus;
using hyperindex::testing::q;

namespace {

BimatrixGame entry_full() { return normal_form(corpus("entry")).game; }
BimatrixGame entry_reduced() { return reduced_tree_normal_form(corpus("entry")).game; }

// Finds a bijection of strategies under which the two games coincide.
bool same_up_to_labels(const BimatrixGame& g, const BimatrixGame& h) {
  if (g.rows() != h.rows() || g.cols() != h.cols()) return false;
  std::vector<int> rp(g.rows()), cp(g.cols());
  for (std::size_t i = 0; i < rp.size(); ++i) rp[i] = static_cast<int>(i);
  do {
    for (std::size_t j = 0; j < cp.size(); ++j) cp[j] = static_cast<int>(j);
    do {
      bool ok = true;
      for (std::size_t i = 0; i < rp.size() && ok; ++i)
        for (std::size_t j = 0; j < cp.size() && ok; ++j)
          ok = g.a[i][j] == h.a[rp[i]][cp[j]] && g.b[i][j] == h.b[rp[i]][cp[j]];
      if (ok) return true;
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return false;
}

}  // namespace

TEST_CASE("payoff") {
  BimatrixGame g = entry_reduced();
  MixedProfile p{{q(0), q(1), q(0)}, {q(1), q(0)}};
  CHECK(payoff(g, p) == std::array<Rational, 2>{q(3), q(1)});
  p = {{q(1), q(0), q(0)}, {q(2, 9), q(7, 9)}};
  CHECK(payoff(g, p) == std::array<Rational, 2>{q(2), q(2)});
  BimatrixGame sub = make_bimatrix({{q(3), q(0)}, {q(0), q(1)}},
                                   {{q(1), q(0)}, {q(0), q(3)}});
  p = {{q(3, 4), q(1, 4)}, {q(1, 4), q(3, 4)}};
  CHECK(payoff(sub, p) == std::array<Rational, 2>{q(3, 4), q(3, 4)});
  CHECK_THROWS_AS(payoff(sub, MixedProfile{{q(1)}, {q(1), q(0)}}),
                  std::invalid_argument);
}

TEST_CASE("is_equivalent") {
  BimatrixGame g = entry_full();
  CHECK(is_equivalent(g, 1, unit(4, 0), unit(4, 0)));
  CHECK(is_equivalent(g, 1, unit(4, 0), unit(4, 1)));
  CHECK_FALSE(is_equivalent(g, 1, unit(4, 2), unit(4, 3)));

  TreeNormalForm mod = reduced_tree_normal_form(corpus("entrymod"));
  REQUIRE(mod.game.labels[0] ==
          std::vector<std::string>{"Out", "In-X", "In-Y-L", "In-Y-R"});
  CHECK(is_equivalent(mod.game, 1, unit(4, 1), {q(3, 4), q(0), q(1, 4), q(0)}));
}

TEST_CASE("reduce") {
  auto [r, map] = reduce(entry_full());
  CHECK(r.rows() == 3);
  CHECK(r.cols() == 2);
  CHECK(r.labels[0] == std::vector<std::string>{"Out-L", "In-L", "In-R"});
  CHECK(map.image[0][1] == Vec{q(1), q(0), q(0)});

  auto [m, mmap] = reduce(reduced_tree_normal_form(corpus("entrymod")).game);
  CHECK(same_up_to_labels(m, r));
  CHECK(mmap.image[0][1] == Vec{q(3, 4), q(1, 4), q(0)});

  BimatrixGame indep = make_bimatrix({{q(1), q(0)}, {q(0), q(1)}},
                                     {{q(0), q(2)}, {q(5), q(0)}});
  auto [same, id] = reduce(indep);
  CHECK(same.a == indep.a);
  CHECK(same.b == indep.b);

  auto [twice, tmap] = reduce(r);
  CHECK(twice.rows() == r.rows());
  CHECK(twice.cols() == r.cols());

  // Every removed strategy reproduces its weighted rows.
  BimatrixGame full = entry_full();
  for (std::size_t s = 0; s < full.rows(); ++s) {
    Vec lifted = zeros(full.rows());
    for (std::size_t k = 0; k < map.retained[0].size(); ++k)
      lifted[map.retained[0][k]] = map.image[0][s][k];
    CHECK(is_equivalent(full, 1, unit(full.rows(), s), lifted));
  }
}

TEST_CASE("add_duplicates") {
  BimatrixGame r = entry_reduced();
  auto [g, map] = add_duplicates(r, 1, {{q(3, 4), q(1, 4), q(0)}});
  CHECK(g.rows() == 4);
  CHECK(g.labels[0][3] == "Out#dup1");
  CHECK(g.a[3] == Vec{q(9, 4), q(3, 2)});
  CHECK(g.b[3] == Vec{q(7, 4), q(3, 2)});
  CHECK(same_up_to_labels(g, reduced_tree_normal_form(corpus("entrymod")).game));

  auto [g2, map2] = add_duplicates(r, 2, {{q(1), q(0)}, {q(1, 3), q(2, 3)}});
  CHECK(g2.cols() == 4);
  CHECK(g2.labels[1][2] == "l#dup1");
  auto [back, bmap] = reduce(g2);
  CHECK(same_up_to_labels(back, reduce(r).first));
  CHECK_THROWS_AS(add_duplicates(r, 1, {{q(1)}}), std::invalid_argument);
}

TEST_CASE("perturb") {
  BimatrixGame sub = make_bimatrix({{q(3), q(0)}, {q(0), q(1)}},
                                   {{q(1), q(0)}, {q(0), q(3)}});
  CHECK(perturb(sub, zeros(2, 2), zeros(2, 2)).a == sub.a);
  BimatrixGame p = perturb(sub, {{q(0), q(2)}, {q(0), q(0)}}, zeros(2, 2));
  CHECK(p.a == Mat{{q(3), q(2)}, {q(0), q(1)}});
  CHECK(p.b == sub.b);
  CHECK_THROWS_AS(perturb(sub, zeros(1, 2), zeros(2, 2)), std::invalid_argument);

  BimatrixGame shifted = perturb(sub, Mat(2, Vec(2, q(7, 3))), zeros(2, 2));
  auto e1 = enumerate_extreme_equilibria(sub);
  auto e2 = enumerate_extreme_equilibria(shifted);
  REQUIRE(e1.size() == e2.size());
  for (std::size_t k = 0; k < e1.size(); ++k)
    CHECK(e1[k].profile == e2[k].profile);
}

TEST_CASE("best_replies") {
  BimatrixGame g = entry_reduced();
  CHECK(best_replies(g, 1, {q(2, 3), q(1, 3)}) == std::vector<int>{0, 1});
  CHECK(best_replies(g, 1, {q(1), q(0)}) == std::vector<int>{1});
  BimatrixGame dom = make_bimatrix({{q(1), q(1)}, {q(2), q(2)}},
                                   {{q(0), q(5)}, {q(0), q(5)}});
  CHECK(best_replies(dom, 2, {q(1, 2), q(1, 2)}) == std::vector<int>{1});
}

TEST_CASE("eliminate_strictly_inferior") {
  BimatrixGame g = entry_reduced();
  Elimination e =
      eliminate_strictly_inferior(g, {MixedProfile{unit(3, 1), unit(2, 0)}});
  CHECK(e.removed[0] == std::vector<int>{0, 2});
  CHECK(e.removed[1] == std::vector<int>{1});
  CHECK(e.game.rows() == 1);
  CHECK(e.game.cols() == 1);

  BimatrixGame mp = make_bimatrix({{q(1), q(-1)}, {q(-1), q(1)}},
                                  {{q(-1), q(1)}, {q(1), q(-1)}});
  e = eliminate_strictly_inferior(
      mp, {MixedProfile{{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}});
  CHECK(e.removed[0].empty());
  CHECK(e.removed[1].empty());

  CHECK_THROWS_AS(
      eliminate_strictly_inferior(g, {MixedProfile{unit(3, 2), unit(2, 0)}}),
      std::invalid_argument);
}
