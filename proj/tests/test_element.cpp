#include <doctest.h>

#include <random>

#include "autg/element.hpp"
#include "autg/zoo.hpp"
#include "helpers.hpp"

using namespace autg;
using namespace autg::testing;

TEST_CASE("element_of: involutions, relations, the empty word") {
  MealyMachine m = grigorchuk();
  CHECK(element_of(m, w("a*a")).is_identity());
  CHECK(element_of(m, w("b*c")) == element_of(m, w("d")));
  CHECK(element_of(m, w("")).is_identity());
  CHECK(element_of(m, w("a*b")) != element_of(m, w("b*a")));
}

TEST_CASE("canonicalize: reachable states of d are the five distinct maps") {
  MealyMachine m = grigorchuk();
  // oracle: a, b, c, d, e are pairwise action-inequivalent to depth 4
  std::vector<Element> gens;
  for (int q = 0; q < m.state_count(); ++q) gens.push_back(canonicalize(m, q));
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      CHECK(!act_equal_to_depth(gens[i], gens[j], 4));
  CHECK(element_of(m, w("d")).size() == 5);
}

TEST_CASE("canonicalize: redundant identity states collapse to one") {
  // three states, all acting trivially
  MealyMachine m("bloated", 2, {"x", "y", "z"},
                 std::vector<MealyMachine::Transition>{
                     {"x", 1, "y", 1},
                     {"x", 2, "z", 2},
                     {"y", 1, "z", 1},
                     {"y", 2, "x", 2},
                     {"z", 1, "x", 1},
                     {"z", 2, "y", 2},
                 });
  Element e = canonicalize(m, 0);
  CHECK(e.size() == 1);
  CHECK(e.is_identity());
}

TEST_CASE("canonicalize: (rs)^k sizes strictly increase in the sushchanskyy semigroup") {
  MealyMachine m = sushchanskyy();
  int prev = 0;
  for (int k = 1; k <= 5; ++k) {
    Element g = element_of(m, GenWord::pow(w("r*s"), k));
    CHECK(g.size() > prev);
    prev = g.size();
  }
}

TEST_CASE("multiply, inverse, conjugate, commutator") {
  MealyMachine m = grigorchuk();
  Element a = element_of(m, w("a"));
  Element b = element_of(m, w("b"));
  CHECK(multiply(a, a).is_identity());
  CHECK(commutator(b, b).is_identity());
  CHECK(multiply(a, inverse(a)).is_identity());
  // conjugation matches the word-level sugar
  Element x2 = element_of(m, w("[a,b]^2"));
  Element ca = element_of(m, w("c*a"));
  CHECK(conjugate(x2, ca) == element_of(m, w("([a,b]^2)^(c*a)")));
  CHECK_THROWS_AS(inverse(element_of(sushchanskyy(), w("r"))), NotInvertibleError);
}

TEST_CASE("state_at follows input paths") {
  MealyMachine m = grigorchuk();
  Element b = element_of(m, w("b"));
  CHECK(state_at(b, {1}) == element_of(m, w("a")));
  CHECK(state_at(b, {2, 2, 2}) == b);
  CHECK(state_at(multiply(b, element_of(m, w("c"))), {2}) ==
        element_of(m, w("c*d")));
}

TEST_CASE("wedge acts on one subtree only") {
  MealyMachine m = grigorchuk();
  Element d = element_of(m, w("d"));
  Element g = wedge({1, 2}, d);
  CHECK(state_at(g, {1, 2}) == d);
  CHECK(wedge({}, d) == d);
  for (const TreeWord& v : words_up_to(2, 6)) {
    if (v.size() >= 2 && v[0] == 1 && v[1] == 2) continue;
    CHECK(g.act(v) == v);
  }
}

TEST_CASE("is_identity and the root action") {
  MealyMachine m = grigorchuk();
  CHECK(element_of(m, w("a^2")).is_identity());
  CHECK(!element_of(m, w("a*b")).is_identity());
  CHECK(element_of(m, w("a")).root_action() == std::vector<Letter>{2, 1});
  CHECK(element_of(m, w("a")).root_cycle_exponent() == 1);
  CHECK(element_of(m, w("b")).root_cycle_exponent() == 0);
}

TEST_CASE("powers") {
  MealyMachine m = grigorchuk();
  Element ab = element_of(m, w("a*b"));
  Element acc = Element::identity(2);
  for (int k = 0; k <= 8; ++k) {
    CHECK(power(ab, k) == acc);
    acc = multiply(acc, ab);
  }
  CHECK(power(ab, -3) == inverse(power(ab, 3)));
}

TEST_CASE("calculus identities on random elements") {
  std::mt19937 rng(42);
  MealyMachine grig = grigorchuk();
  MealyMachine gs = gupta_sidki();

  for (int iter = 0; iter < 300; ++iter) {
    const MealyMachine& m = (iter % 2) ? gs : grig;
    const int p = m.alphabet();
    Element g = element_of(m, random_state_word(rng, m, 5));

    // cocycle: (g@v1)@v2 = g@(v1 v2)
    TreeWord v1 = random_tree_word(rng, p, 3);
    TreeWord v2 = random_tree_word(rng, p, 3);
    TreeWord v12 = v1;
    v12.insert(v12.end(), v2.begin(), v2.end());
    CHECK(state_at(state_at(g, v1), v2) == state_at(g, v12));

    // wedge composition: (v1 v2)*g = v1*(v2*g)
    CHECK(wedge(v12, g) == wedge(v1, wedge(v2, g)));

    // (v*g)@v = g
    CHECK(state_at(wedge(v1, g), v1) == g);

    // twist: (v*g)^h = v^h * (g^{h@v})
    Element h = element_of(m, random_state_word(rng, m, 4));
    TreeWord v = random_tree_word(rng, p, 3);
    CHECK(conjugate(wedge(v, g), h) ==
          wedge(h.act(v), conjugate(g, state_at(h, v))));
  }
}

TEST_CASE("canonical soundness: structural equality is action equality") {
  std::mt19937 rng(43);
  MealyMachine m = grigorchuk();
  for (int iter = 0; iter < 200; ++iter) {
    Element g = element_of(m, random_state_word(rng, m, 5));
    Element h = element_of(m, random_state_word(rng, m, 5));
    CHECK((g == h) == act_equal_to_depth(g, h, 8));
  }
}

TEST_CASE("multiplication is associative in canonical form") {
  std::mt19937 rng(44);
  MealyMachine m = grigorchuk();
  for (int iter = 0; iter < 100; ++iter) {
    Element x = element_of(m, random_state_word(rng, m, 3));
    Element y = element_of(m, random_state_word(rng, m, 3));
    Element z = element_of(m, random_state_word(rng, m, 3));
    CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
  }
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937 rng(45);
  MealyMachine m = gupta_sidki();
  for (int iter = 0; iter < 50; ++iter) {
    Element g = element_of(m, random_state_word(rng, m, 4));
    Element again = canonicalize(g.machine(), 0);
    CHECK(again == g);
  }
}
