// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "autg/decision.hpp"
#include "autg/engel.hpp"
#include "autg/io.hpp"
#include "autg/zoo.hpp"

using namespace autg;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::ostringstream detail;

struct Criterion {
  int number;
  std::string title;
  Clock::time_point start = Clock::now();
  bool ok = true;

  Criterion(int n, std::string t) : number(n), title(std::move(t)) {
    detail.str("");
  }
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "    failed: " << what << "\n";
    }
  }
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
  ~Criterion() {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
              << title << "  (" << seconds() << " s)\n";
    std::cout << detail.str();
    if (!ok) ++failures;
  }
};

GenWord w(const std::string& text) { return parse_word(text); }

std::vector<Element> certificate_tuple(const MealyMachine& m, const std::string& name) {
  Certificate cert = builtin_certificate(name);
  std::vector<Element> tuple;
  for (const auto& cw : cert.component_words)
    tuple.push_back(element_of(m, parse_word(cw)));
  return tuple;
}

std::vector<GenWord> state_words_up_to(const MealyMachine& m, int max_len) {
  std::vector<GenWord> words{GenWord()};
  std::vector<GenWord> level{GenWord()};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<GenWord> next;
    for (const GenWord& gw : level)
      for (int q = 0; q < m.state_count(); ++q)
        next.push_back(gw * GenWord::generator(m.state_name(q)));
    words.insert(words.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return words;
}

TreeWord random_tree_word(std::mt19937& rng, int p, int len) {
  TreeWord v(len);
  std::uniform_int_distribution<int> dist(1, p);
  for (int i = 0; i < len; ++i) v[i] = dist(rng);
  return v;
}

GenWord random_state_word(std::mt19937& rng, const MealyMachine& m, int max_len) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> gen_dist(0, m.state_count() - 1);
  int len = len_dist(rng);
  std::vector<GenWord> parts;
  for (int i = 0; i < len; ++i)
    parts.push_back(GenWord::generator(m.state_name(gen_dist(rng))));
  return GenWord::product(parts);
}

void criterion_1() {
  Criterion c(1, "Grigorchuk Engel certificate (period 9 at 111112)");
  MealyMachine m = grigorchuk();
  std::vector<Element> A0 = certificate_tuple(m, "grigorchuk-A0");
  TreeWord word = parse_tree_word("111112", 2);
  c.require(verify_certificate(A0, 9, word), "verify_certificate");
  // the three Lemma properties, spelled out
  std::vector<Element> A = A0;
  for (int step = 0; step < 9; ++step) {
    std::vector<Element> next;
    for (size_t i = 0; i < A.size(); ++i)
      next.push_back(multiply(inverse(A[i]), A[(i + 1) % A.size()]));
    A = std::move(next);
  }
  for (size_t i = 0; i < A.size(); ++i) {
    c.require(!A[i].is_identity(), "A_9 component is nontrivial");
    c.require(A[i].act(word) == word, "A_9 component fixes 111112");
    c.require(state_at(A[i], word) == A0[i], "A_9 component has state A_0");
  }
  c.require(c.seconds() < 10.0, "runtime under 10 s");
}

void criterion_2() {
  Criterion c(2, "Gupta-Sidki Engel certificate (period 4 at 122)");
  MealyMachine m = gupta_sidki();
  // the tuple as printed in the source does not satisfy its own recursion
  // (see the corrected-orbit builtin); report both outcomes
  std::vector<Element> printed = certificate_tuple(m, "guptasidki-A0-printed");
  bool printed_ok = verify_certificate(printed, 4, parse_tree_word("122", 3));
  detail << "    note: literal printed tuple ([a^-1,t],[a,t]^a,[t^-1,a^-1]) "
         << (printed_ok ? "verifies" : "fails to verify") << "\n";
  std::vector<Element> A0 = certificate_tuple(m, "guptasidki-A0");
  c.require(verify_certificate(A0, 4, parse_tree_word("122", 3)),
            "verify_certificate on the corrected orbit tuple "
            "([a^-1,t], [a^-1,t]^a, [a^-1,t]^(a^-1))");
  c.require(c.seconds() < 10.0, "runtime under 10 s");
}

void criterion_3() {
  Criterion c(3, "Engel pair verdicts on Grigorchuk (Theorem 1 at desk scale)");
  MealyMachine m = grigorchuk();
  Element g0 = element_of(m, w("(b*a)^4*c"));
  Element h0 = element_of(m, w("a*d"));
  EngelVerdict neg = engel_pair_check(g0, h0);
  c.require(neg.kind == EngelVerdict::NotEngel, "((ba)^4 c, ad) is NotEngel");
  c.require(!neg.cycle.empty(), "NotEngel comes with a cycle certificate");
  for (size_t i = 0; i < neg.cycle.size() && c.ok; ++i) {
    c.require(!tuple_is_trivial(neg.cycle[i]), "cycle tuple nontrivial");
    DifferenceStep s = difference_step(neg.cycle[i]);
    const EngelTuple& to = neg.cycle[(i + 1) % neg.cycle.size()];
    bool is_child = false;
    for (const auto& child : s.children) is_child = is_child || child == to;
    c.require(is_child, "cycle edge replays under the difference relation");
  }

  // order-2 elements from the radius-3 ball, plus the generators
  BallData b3 = ball(m, {w("a"), w("b"), w("c"), w("d")}, 3);
  std::vector<Element> involutions;
  for (size_t i = 0; i < b3.elements.size(); ++i) {
    const Element& h = b3.elements[i];
    if (b3.length[i] == 0) continue;
    if (multiply(h, h).is_identity()) involutions.push_back(h);
  }
  c.require(involutions.size() >= 4, "found the involutions in the ball");

  std::mt19937 rng(2026);
  std::vector<Element> randoms;
  for (int i = 0; i < 20; ++i)
    randoms.push_back(element_of(m, random_state_word(rng, m, 4)));
  for (const Element& h : involutions) {
    for (const Element& g : randoms) {
      EngelVerdict v = engel_pair_check(g, h);
      c.require(v.kind == EngelVerdict::Engel, "pair with an involution is Engel");
      if (v.kind != EngelVerdict::Engel) return;
      c.require(v.c_bound <= 64, "E_c = 1 within c <= 64");
      c.require(
          engel_commutator(g, h, static_cast<int>(v.c_bound)).is_identity(),
          "direct iteration confirms E_c = 1");
    }
  }
  c.require(c.seconds() < 120.0, "runtime under 2 min");
}

void criterion_4() {
  Criterion c(4, "word-problem oracle equivalence (linear/canonical/contracting)");
  size_t disagreements = 0;
  for (const std::string key : {"grigorchuk", "gupta_sidki"}) {
    MealyMachine m = zoo_machine(key);
    int max_len = key == "grigorchuk" ? 4 : 3;
    NucleusReport report = nucleus(m);
    c.require(report.verdict() == NucleusVerdict::Nuclear, key + " is nuclear");
    auto words = state_words_up_to(m, max_len);
    std::vector<Element> elements;
    elements.reserve(words.size());
    for (const auto& gw : words) elements.push_back(element_of(m, gw));
    for (size_t i = 0; i < words.size(); ++i)
      for (size_t j = i + 1; j < words.size(); ++j) {
        bool canonical = elements[i] == elements[j];
        if (word_problem_linear(m, words[i], words[j]) != canonical) ++disagreements;
        if (word_problem_contracting(m, words[i], words[j], report) != canonical)
          ++disagreements;
      }
  }
  c.require(disagreements == 0, "zero disagreements");
  detail << "    note: " << disagreements << " disagreements\n";
}

void criterion_5() {
  Criterion c(5, "nucleus verdicts (Grigorchuk nuclear, Sushchanskyy inconclusive)");
  MealyMachine m = grigorchuk();
  NucleusReport r = nucleus(m);
  c.require(r.verdict() == NucleusVerdict::Nuclear, "grigorchuk nuclear");
  c.require(r.nucleus().size() == 5, "nucleus has exactly 5 classes");
  for (const Element& e : r.nucleus()) {
    bool is_state = false;
    for (int q = 0; q < m.state_count(); ++q)
      is_state = is_state || e == canonicalize(m, q);
    c.require(is_state, "nucleus element is one of 1, a, b, c, d");
  }

  NucleusBudget budget;
  budget.depth_budget = 12;
  NucleusReport s = nucleus(sushchanskyy(), budget);
  c.require(s.verdict() == NucleusVerdict::Inconclusive,
            "sushchanskyy inconclusive at depth 12");
  MealyMachine sus = sushchanskyy();
  int prev = 0;
  for (int k = 1; k <= 5; ++k) {
    int size = element_of(sus, GenWord::pow(w("r*s"), k)).size();
    c.require(size > prev, "(rs)^k canonical sizes strictly increase");
    prev = size;
  }
}

void criterion_6() {
  Criterion c(6, "torsion spot-checks and 2-power orders in the radius-3 ball");
  MealyMachine m = grigorchuk();
  for (const char* name : {"a", "b", "c", "d"}) {
    OrderResult r = order_of(element_of(m, w(name)));
    c.require(r.kind == OrderResult::Order && r.order == 2,
              std::string(name) + " has order 2");
  }
  OrderResult ab = order_of(element_of(m, w("a*b")));
  c.require(ab.kind == OrderResult::Order && ab.order == 16, "ab has order 16");

  // the value for ad is recorded from the powering oracle, not assumed
  Element ad = element_of(m, w("a*d"));
  OrderResult ad_r = order_of(ad);
  c.require(ad_r.kind == OrderResult::Order, "ad has finite order");
  c.require(power(ad, ad_r.order).is_identity(), "oracle: (ad)^k = 1");
  for (long long j = 1; j < ad_r.order; ++j)
    c.require(!power(ad, j).is_identity(), "oracle: k minimal");
  detail << "    note: order(ad) = " << ad_r.order << " (computed)\n";

  OrderBudget budget;
  budget.power_budget = 256;
  BallData b3 = ball(m, {w("a"), w("b"), w("c"), w("d")}, 3);
  for (const Element& g : b3.elements) {
    OrderResult r = order_of(g, budget);
    c.require(r.kind == OrderResult::Order, "ball element has finite order");
    c.require((r.order & (r.order - 1)) == 0, "order is a power of 2");
  }
  detail << "    note: ball size v(3) = " << b3.elements.size() << "\n";
}

void criterion_7() {
  Criterion c(7, "calculus identities, 1000 random cases each");
  std::mt19937 rng(777);
  MealyMachine grig = grigorchuk();
  MealyMachine gs = gupta_sidki();
  int cocycle_fail = 0, wedge_fail = 0, twist_fail = 0, wedge_state_fail = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const MealyMachine& m = (iter % 2) ? gs : grig;
    const int p = m.alphabet();
    Element g = element_of(m, random_state_word(rng, m, 5));
    Element h = element_of(m, random_state_word(rng, m, 4));
    TreeWord v1 = random_tree_word(rng, p, 1 + iter % 3);
    TreeWord v2 = random_tree_word(rng, p, 1 + (iter / 3) % 3);
    TreeWord v12 = v1;
    v12.insert(v12.end(), v2.begin(), v2.end());

    if (state_at(state_at(g, v1), v2) != state_at(g, v12)) ++cocycle_fail;
    if (wedge(v12, g) != wedge(v1, wedge(v2, g))) ++wedge_fail;
    if (state_at(wedge(v1, g), v1) != g) ++wedge_state_fail;
    TreeWord v = random_tree_word(rng, p, 1 + iter % 3);
    if (conjugate(wedge(v, g), h) !=
        wedge(h.act(v), conjugate(g, state_at(h, v))))
      ++twist_fail;
  }
  c.require(cocycle_fail == 0, "cocycle (g@v1)@v2 = g@(v1 v2)");
  c.require(wedge_fail == 0, "wedge composition (v1 v2)*g = v1*(v2*g)");
  c.require(wedge_state_fail == 0, "(v*g)@v = g");
  c.require(twist_fail == 0, "twist (v*g)^h = v^h * g^{h@v}");
}

void criterion_8() {
  Criterion c(8, "BSV: odometer action and E_c(m, t) nontrivial for c <= 6");
  MealyMachine b = bsv();
  Element t = element_of(b, w("t"));
  int mismatches = 0;
  for (int len = 1; len <= 6; ++len) {
    long long total = 1LL << len;
    for (long long value = 0; value < total; ++value) {
      TreeWord v(len);
      for (int i = 0; i < len; ++i) v[i] = static_cast<Letter>((value >> i) & 1) + 1;
      TreeWord image = t.act(v);
      long long got = 0;
      for (int i = 0; i < len; ++i) got |= static_cast<long long>(image[i] - 1) << i;
      if (got != (value + 1) % total) ++mismatches;
    }
  }
  c.require(mismatches == 0, "t adds one on all 2-adic words of length <= 6");

  Element mu = element_of(b, w("m"));
  Element e = mu;
  for (int cc = 1; cc <= 6; ++cc) {
    e = commutator(e, t);
    c.require(!e.is_identity(),
              "E_" + std::to_string(cc) + "(m, t) is nontrivial");
  }
}

void criterion_9() {
  Criterion c(9, "affine builder against the integer oracle");
  MealyMachine m31 = affine_machine(1, {{3}}, {1});
  int mismatches = 0;
  for (int len = 1; len <= 5; ++len) {
    long long total = 1LL << len;
    for (long long value = 0; value < total; ++value) {
      TreeWord v(len);
      for (int i = 0; i < len; ++i) v[i] = static_cast<Letter>((value >> i) & 1) + 1;
      TreeWord image = act_state(m31, 0, v);
      long long got = 0;
      for (int i = 0; i < len; ++i) got |= static_cast<long long>(image[i] - 1) << i;
      if (got != (3 * value + 1) % total) ++mismatches;
    }
  }
  c.require(mismatches == 0, "affine(1,[3],[1]) is v -> 3v+1 mod 2^L, L <= 5");

  Element plus1 = canonicalize(affine_machine(1, {{1}}, {1}), 0);
  Element t = element_of(bsv(), w("t"));
  c.require(plus1 == t, "affine(1,[1],[1]) equals the bsv odometer");
  // equality of canonical forms subsumes depth-6 action agreement; check
  // the actions explicitly anyway
  bool agree = true;
  for (int len = 1; len <= 6 && agree; ++len) {
    long long total = 1LL << len;
    for (long long value = 0; value < total; ++value) {
      TreeWord v(len);
      for (int i = 0; i < len; ++i) v[i] = static_cast<Letter>((value >> i) & 1) + 1;
      if (plus1.act(v) != t.act(v)) {
        agree = false;
        break;
      }
    }
  }
  c.require(agree, "actions agree to depth 6");
}

void criterion_10() {
  Criterion c(10, "bounded detector with the activity-count probe");
  c.require(is_bounded(grigorchuk()), "grigorchuk bounded");
  c.require(!is_bounded(sushchanskyy()), "sushchanskyy not bounded");
  auto grig = activity_counts(grigorchuk(), 8);
  size_t early = *std::max_element(grig.begin(), grig.begin() + 4);
  bool flat = true;
  for (int n = 4; n < 8; ++n) flat = flat && grig[n] <= early;
  c.require(flat, "grigorchuk activity counts stay bounded for n <= 8");
  auto sus = activity_counts(sushchanskyy(), 8);
  c.require(sus[7] > *std::max_element(sus.begin(), sus.begin() + 4),
            "sushchanskyy activity counts grow");
  detail << "    note: grigorchuk counts:";
  for (size_t x : grig) detail << " " << x;
  detail << "\n    note: sushchanskyy counts:";
  for (size_t x : sus) detail << " " << x;
  detail << "\n";
}

void criterion_11() {
  Criterion c(11, "period search on ((ba)^4 c, ad)");
  MealyMachine m = grigorchuk();
  Element g = element_of(m, w("(b*a)^4*c"));
  Element h = element_of(m, w("a*d"));
  auto r = period_search(g, h, 32, 16);
  c.require(r.has_value(), "period search returns a proposal");
  if (!r) return;
  c.require(r->period == 9, "proposed period is 9");
  c.require(r->c >= 0 && r->c <= 23, "common states found at some c <= 23");
  c.require(!r->common_states.empty(), "common states are nonempty");
  detail << "    note: common states at c = " << r->c << ", count "
         << r->common_states.size() << ", smallest has "
         << (r->common_states.empty() ? 0 : r->common_states.front().size())
         << " states\n";

  // sizes grow subexponentially: a straight line fits with small residuals
  const auto& sizes = r->sizes;
  c.require(sizes.size() >= 33, "sizes computed for all c <= 32");
  double n = static_cast<double>(sizes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    sx += i;
    sy += sizes[i];
    sxx += double(i) * i;
    sxy += double(i) * sizes[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  double rms = 0, mean = sy / n;
  for (size_t i = 0; i < sizes.size(); ++i) {
    double resid = sizes[i] - (intercept + slope * i);
    rms += resid * resid;
  }
  rms = std::sqrt(rms / n);
  detail << "    note: linear fit slope " << slope << ", rms residual " << rms
         << ", mean size " << mean << "\n";
  c.require(rms <= 0.35 * mean, "rms residual small against the mean size");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 11 criteria passed\n";
  return 0;
}
