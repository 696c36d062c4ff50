#include <doctest.h>

#include "autg/decision.hpp"
#include "autg/element.hpp"
#include "autg/zoo.hpp"
#include "helpers.hpp"

using namespace autg;
using namespace autg::testing;

TEST_CASE("every zoo machine validates") {
  for (const auto& key : zoo_keys()) {
    MealyMachine m = zoo_machine(key);
    ValidationReport r = validate(m);
    CHECK(r.complete);
    CHECK(r.declared_identity_ok);
    bool expect_invertible = key != "sushchanskyy";
    CHECK(r.machine_invertible == expect_invertible);
  }
  CHECK_THROWS_AS(zoo_machine("unknown"), Error);
}

TEST_CASE("grigorchuk squares") {
  MealyMachine m = grigorchuk();
  CHECK(m.step(m.index_of("d"), 2) == std::pair<int, Letter>{m.index_of("b"), 2});
  CHECK(m.step(m.index_of("d"), 1) == std::pair<int, Letter>{m.index_of("e"), 1});
  for (const TreeWord& v : words_up_to(2, 4)) {
    TreeWord flipped = v;
    if (!flipped.empty()) flipped[0] = 3 - flipped[0];
    CHECK(act(m, w("a"), v) == flipped);
  }
}

TEST_CASE("grigorchuk facts: involutions and the Klein four-group b,c,d") {
  MealyMachine m = grigorchuk();
  for (const char* name : {"a", "b", "c", "d"})
    CHECK(multiply(element_of(m, w(name)), element_of(m, w(name))).is_identity());
  CHECK(element_of(m, w("b*c")) == element_of(m, w("d")));
  CHECK(element_of(m, w("c*d")) == element_of(m, w("b")));
  CHECK(element_of(m, w("b*d")) == element_of(m, w("c")));
}

TEST_CASE("sushchanskyy squares") {
  MealyMachine m = sushchanskyy();
  CHECK(act(m, w("r"), {1, 1}) == TreeWord{2, 2});
  CHECK(act(m, w("s"), {1, 2}) == TreeWord{2, 1});
}

TEST_CASE("bsv: t is the binary odometer") {
  MealyMachine m = bsv();
  CHECK(act(m, w("t"), {1, 1, 1}) == TreeWord{2, 1, 1});
  CHECK(act(m, w("t"), {2, 1}) == TreeWord{1, 2});

  // +1 on 2-adic integers, least significant digit first, for all |v| <= 6
  Element t = element_of(m, w("t"));
  for (int len = 1; len <= 6; ++len) {
    for (const TreeWord& v : words_of_length(2, len)) {
      long long value = 0;
      for (int i = 0; i < len; ++i) value |= static_cast<long long>(v[i] - 1) << i;
      long long plus = (value + 1) % (1LL << len);
      TreeWord image = t.act(v);
      long long got = 0;
      for (int i = 0; i < len; ++i) got |= static_cast<long long>(image[i] - 1) << i;
      CHECK(got == plus);
    }
  }
}

TEST_CASE("bsv: t has no order within budget") {
  Element t = element_of(bsv(), w("t"));
  OrderBudget budget;
  budget.power_budget = 64;
  CHECK(order_of(t, budget).kind == OrderResult::BudgetExceeded);
}

TEST_CASE("gupta-sidki recursions") {
  MealyMachine m = gupta_sidki();
  for (const TreeWord& v : words_up_to(3, 3)) {
    TreeWord shifted = v;
    if (!shifted.empty()) shifted[0] = shifted[0] % 3 + 1;
    CHECK(act(m, w("a"), v) == shifted);
  }
  CHECK(m.step(m.index_of("t"), 3) == std::pair<int, Letter>{m.index_of("t"), 3});
  OrderResult r = order_of(element_of(m, w("a")));
  CHECK(r.kind == OrderResult::Order);
  CHECK(r.order == 3);
}

TEST_CASE("affine machines realize v -> Av + w on 2-adics") {
  SUBCASE("+1 is the odometer") {
    MealyMachine plus1 = affine_machine(1, {{1}}, {1});
    for (const TreeWord& v : words_of_length(2, 3)) {
      long long value = 0;
      for (int i = 0; i < 3; ++i) value |= static_cast<long long>(v[i] - 1) << i;
      TreeWord image = act_state(plus1, 0, v);
      long long got = 0;
      for (int i = 0; i < 3; ++i) got |= static_cast<long long>(image[i] - 1) << i;
      CHECK(got == (value + 1) % 8);
    }
    // action-equivalent to the bsv odometer component to depth 6
    Element t = element_of(bsv(), w("t"));
    Element aff = canonicalize(plus1, 0);
    CHECK(aff == t);
  }

  SUBCASE("v -> v is the identity machine") {
    MealyMachine id = affine_machine(1, {{1}}, {0});
    CHECK(canonicalize(id, 0).is_identity());
  }

  SUBCASE("x3 on length-4 words") {
    MealyMachine times3 = affine_machine(1, {{3}}, {0});
    for (const TreeWord& v : words_of_length(2, 4)) {
      long long value = 0;
      for (int i = 0; i < 4; ++i) value |= static_cast<long long>(v[i] - 1) << i;
      TreeWord image = act_state(times3, 0, v);
      long long got = 0;
      for (int i = 0; i < 4; ++i) got |= static_cast<long long>(image[i] - 1) << i;
      CHECK(got == 3 * value % 16);
    }
  }

  SUBCASE("a 2x2 map with negative offset closes") {
    MealyMachine m2 = affine_machine(2, {{1, 1}, {0, 1}}, {-1, 2});
    CHECK(m2.alphabet() == 4);
    CHECK(validate(m2).complete);
  }
}
