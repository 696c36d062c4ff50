#include "autg/decision.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace autg {

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const noexcept {
    size_t h = v.size();
    for (int x : v) h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Resolve a word to a flat state sequence, routing inverse factors through
// the doubled machine when necessary. Both words must be resolved against
// the same machine, hence the two-word helper.
struct LinearInput {
  std::optional<MealyMachine> machine;
  std::vector<int> u, v;
  int identity = -1;
};

LinearInput prepare_linear(const MealyMachine& m0, const GenWord& u, const GenWord& v) {
  LinearInput in;
  std::vector<std::pair<int, int>> ru, rv;
  if (u.has_inverse_factors() || v.has_inverse_factors()) {
    DoubledMachine dbl = double_with_inverses(m0);
    auto resolve = [&](const GenWord& w) {
      std::vector<int> out;
      for (const auto& [name, sign] : w.factors()) {
        int idx = dbl.machine.index_of(name);
        if (idx == -1 || idx >= m0.state_count()) throw Error("unknown generator: " + name);
        if (sign < 0) {
          idx = dbl.inverse_index[idx];
          if (idx == -1) throw NotInvertibleError("inverse of non-invertible generator: " + name);
        }
        out.push_back(idx);
      }
      return out;
    };
    in.u = resolve(u);
    in.v = resolve(v);
    auto [mach, id] = with_identity(dbl.machine);
    in.machine = std::move(mach);
    in.identity = id;
  } else {
    for (const auto& [idx, sign] : resolve_word(m0, u)) in.u.push_back(idx);
    for (const auto& [idx, sign] : resolve_word(m0, v)) in.v.push_back(idx);
    auto [mach, id] = with_identity(m0);
    in.machine = std::move(mach);
    in.identity = id;
  }
  return in;
}

}  // namespace

bool word_problem_linear(const MealyMachine& m0, const GenWord& u, const GenWord& v) {
  LinearInput in = prepare_linear(m0, u, v);
  const MealyMachine& m = *in.machine;
  const int p = m.alphabet();
  const size_t n = std::max(in.u.size(), in.v.size());
  in.u.resize(n, in.identity);
  in.v.resize(n, in.identity);
  if (n == 0) return true;

  // On-demand vertices of the Q^n power automaton, identified by
  // merge-propagation; identification fails when two vertices with
  // different root actions would be merged.
  std::vector<std::vector<int>> tuples;
  std::vector<std::vector<Letter>> pi;  // root action per vertex
  std::vector<int> parent;              // union-find over vertex ids
  std::unordered_map<std::vector<int>, int, VecHash> index;
  auto intern = [&](const std::vector<int>& t) {
    auto [it, fresh] = index.emplace(t, static_cast<int>(tuples.size()));
    if (fresh) {
      tuples.push_back(t);
      parent.push_back(static_cast<int>(tuples.size()) - 1);
      std::vector<Letter> act(p);
      for (Letter x = 1; x <= p; ++x) {
        Letter y = x;
        for (int q : t) y = m.output(q, y);
        act[x - 1] = y;
      }
      pi.push_back(std::move(act));
    }
    return it->second;
  };
  auto successor = [&](int id, Letter x) {
    std::vector<int> t(tuples[id].size());
    Letter y = x;
    const std::vector<int>& src = tuples[id];
    for (size_t i = 0; i < src.size(); ++i) {
      auto [nq, ny] = m.step(src[i], y);
      t[i] = nq;
      y = ny;
    }
    return intern(t);
  };
  auto find = [&](int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };

  std::deque<std::pair<int, int>> work;
  work.emplace_back(intern(in.u), intern(in.v));
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    if (find(a) == find(b)) continue;
    if (pi[a] != pi[b]) return false;
    parent[find(a)] = find(b);
    for (Letter x = 1; x <= p; ++x)
      work.emplace_back(successor(a, x), successor(b, x));
  }
  return true;
}

bool word_problem_canonical(const Element& g, const Element& h) { return g == h; }

// --- nucleus ---------------------------------------------------------------

NucleusReport nucleus(const MealyMachine& m0, const NucleusBudget& budget) {
  NucleusReport report;
  const int nq = m0.state_count();
  auto [ext, id_idx] = with_identity(m0);
  report.machine_ = ext;
  report.identity_index_ = id_idx;
  const MealyMachine& m = *report.machine_;
  const int p = m.alphabet();

  // single-state elements of the original machine: the candidate nucleus
  std::unordered_map<Element, int> qbar;
  std::vector<Element> state_elements(m.state_count());
  for (int q = 0; q < m.state_count(); ++q) {
    state_elements[q] = canonicalize(m, q);
    if (q < nq || q == id_idx) qbar.emplace(state_elements[q], q);
  }
  report.state_class_.resize(m.state_count());
  for (int q = 0; q < m.state_count(); ++q)
    report.state_class_[q] = qbar.at(state_elements[q]);

  // contract-depth of an element: 0 inside the nucleus, otherwise one more
  // than the worst letter child; DFS with memoization, a cycle of states
  // outside the nucleus can never contract
  std::unordered_map<Element, std::optional<int>> memo;
  std::unordered_map<Element, bool> on_stack;
  size_t explored = 0;
  bool out_of_budget = false;
  std::function<std::optional<int>(const Element&, int)> contract_depth =
      [&](const Element& g, int depth) -> std::optional<int> {
    if (qbar.count(g)) return 0;
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    if (on_stack[g]) return std::nullopt;  // recurrent non-nucleus element
    if (depth >= budget.depth_budget || g.size() > budget.size_budget ||
        ++explored > budget.element_budget) {
      out_of_budget = true;
      return std::nullopt;
    }
    on_stack[g] = true;
    std::optional<int> worst = 0;
    for (Letter x = 1; x <= p; ++x) {
      auto child = contract_depth(state_at(g, TreeWord{x}), depth + 1);
      if (!child) {
        worst = std::nullopt;
        break;
      }
      worst = std::max(*worst, *child + 1);
    }
    on_stack[g] = false;
    memo.emplace(g, worst);
    if (!worst && report.frontier_.size() < 16) report.frontier_.push_back(g);
    return worst;
  };

  bool nuclear = true;
  int n_star = 0;
  for (int q1 = 0; q1 < nq; ++q1) {
    for (int q2 = 0; q2 < nq; ++q2) {
      Element pair = multiply(state_elements[q1], state_elements[q2]);
      auto d = contract_depth(pair, 0);
      if (d) {
        report.witness_depths_[{q1, q2}] = *d;
        n_star = std::max(n_star, *d);
      } else {
        nuclear = false;
      }
    }
  }
  report.elements_explored_ = explored;
  if (!nuclear) {
    report.verdict_ = NucleusVerdict::Inconclusive;
    return report;
  }

  report.verdict_ = NucleusVerdict::Nuclear;
  for (const auto& [el, q] : qbar) report.nucleus_.push_back(el);
  std::sort(report.nucleus_.begin(), report.nucleus_.end());
  report.contraction_depth_ = std::max(n_star, 1);

  // rewrite table: every length-2 word over the extended stateset, at every
  // depth-n_star vertex, is one nucleus state
  const int n = report.contraction_depth_;
  long long words = 1;
  for (int i = 0; i < n; ++i) words *= p;
  const int total = m.state_count();
  report.pair_rewrite_.assign(total * total, std::vector<int>(words, -1));
  for (int q1 = 0; q1 < total; ++q1)
    for (int q2 = 0; q2 < total; ++q2) {
      Element pair = multiply(state_elements[q1], state_elements[q2]);
      for (long long wi = 0; wi < words; ++wi) {
        TreeWord w(n);
        long long r = wi;
        for (int i = n - 1; i >= 0; --i) {
          w[i] = static_cast<Letter>(r % p) + 1;
          r /= p;
        }
        Element st = state_at(pair, w);
        auto it = qbar.find(st);
        if (it == qbar.end())
          throw Error("nucleus table incomplete for pair " + m.state_name(q1) +
                      " " + m.state_name(q2));
        report.pair_rewrite_[q1 * total + q2][wi] = it->second;
      }
    }
  return report;
}

bool word_problem_contracting(const MealyMachine& m0, const GenWord& u,
                              const GenWord& v, const NucleusReport& report) {
  if (report.verdict() != NucleusVerdict::Nuclear)
    throw Error("contracting word problem requires a Nuclear report");
  if (!report.machine_ || report.machine_->alphabet() != m0.alphabet() ||
      report.machine_->state_count() < m0.state_count())
    throw Error("nucleus report does not match the machine");
  if (u.has_inverse_factors() || v.has_inverse_factors())
    throw Error("contracting word problem takes positive state words only");
  const MealyMachine& m = *report.machine_;
  const int p = m.alphabet();
  const int n = report.contraction_depth_;
  const int id = report.identity_index_;
  const int total = m.state_count();

  auto resolve = [&](const GenWord& w) {
    std::vector<int> out;
    for (const auto& [name, sign] : w.factors()) {
      int idx = m.index_of(name);
      if (idx == -1) throw Error("unknown generator: " + name);
      out.push_back(idx);
    }
    return out;
  };

  // drop identity-class states; they never change the element
  auto normalize = [&](std::vector<int> w) {
    std::erase_if(w, [&](int q) { return report.state_class_[q] == report.state_class_[id]; });
    return w;
  };

  long long word_count = 1;
  for (int i = 0; i < n; ++i) word_count *= p;
  auto vertex = [&](long long wi) {
    TreeWord w(n);
    long long r = wi;
    for (int i = n - 1; i >= 0; --i) {
      w[i] = static_cast<Letter>(r % p) + 1;
      r /= p;
    }
    return w;
  };
  auto act_word = [&](const std::vector<int>& word, TreeWord w) {
    for (int q : word) w = act_state(m, q, w);
    return w;
  };
  // (q_1 ... q_k)@w as a word of nucleus states, via the pair table
  auto state_word = [&](std::vector<int> word, long long wi) {
    if (word.size() % 2) word.push_back(id);
    std::vector<int> out;
    TreeWord w = vertex(wi);
    for (size_t i = 0; i < word.size(); i += 2) {
      long long widx = 0;
      for (Letter x : w) widx = widx * p + (x - 1);
      out.push_back(report.pair_rewrite_[word[i] * total + word[i + 1]][widx]);
      w = act_state(m, word[i + 1], act_state(m, word[i], w));
    }
    return out;
  };

  std::map<std::pair<std::vector<int>, std::vector<int>>, bool> memo;
  std::function<bool(std::vector<int>, std::vector<int>)> equal =
      [&](std::vector<int> a, std::vector<int> b) -> bool {
    a = normalize(a);
    b = normalize(b);
    if (a.size() <= 1 && b.size() <= 1) {
      int ca = a.empty() ? report.state_class_[id] : report.state_class_[a[0]];
      int cb = b.empty() ? report.state_class_[id] : report.state_class_[b[0]];
      return ca == cb;
    }
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo.emplace(key, true);  // provisional; cycles cannot occur as lengths shrink
    bool result = true;
    for (long long wi = 0; wi < word_count && result; ++wi) {
      TreeWord w = vertex(wi);
      if (act_word(a, w) != act_word(b, w)) result = false;
    }
    for (long long wi = 0; wi < word_count && result; ++wi)
      result = equal(state_word(a, wi), state_word(b, wi));
    memo[key] = result;
    return result;
  };
  return equal(resolve(u), resolve(v));
}

// --- bounded ----------------------------------------------------------------

bool is_bounded(const MealyMachine& m) {
  const int nq = m.state_count();
  const int p = m.alphabet();
  std::vector<bool> trivial(nq);
  for (int q = 0; q < nq; ++q) trivial[q] = canonicalize(m, q).is_identity();

  // multigraph on non-identity states
  std::vector<std::vector<int>> out(nq);
  for (int q = 0; q < nq; ++q) {
    if (trivial[q]) continue;
    for (Letter x = 1; x <= p; ++x) {
      int t = m.next(q, x);
      if (!trivial[t]) out[q].push_back(t);
    }
  }

  // Tarjan strongly connected components
  std::vector<int> comp(nq, -1), low(nq), num(nq, -1), stack;
  std::vector<bool> on_stack(nq, false);
  int counter = 0, comp_count = 0;
  std::function<void(int)> dfs = [&](int v) {
    num[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : out[v]) {
      if (num[w] == -1) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      for (;;) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comp_count;
        if (w == v) break;
      }
      ++comp_count;
    }
  };
  for (int q = 0; q < nq; ++q)
    if (!trivial[q] && num[q] == -1) dfs(q);

  std::vector<int> comp_size(comp_count, 0), internal_edges(comp_count, 0);
  for (int q = 0; q < nq; ++q) {
    if (trivial[q]) continue;
    ++comp_size[comp[q]];
    for (int t : out[q])
      if (comp[t] == comp[q]) ++internal_edges[comp[q]];
  }
  std::vector<bool> is_cycle(comp_count, false);
  for (int c = 0; c < comp_count; ++c) {
    if (internal_edges[c] == 0) continue;
    if (internal_edges[c] > comp_size[c]) return false;  // two loops share states
    is_cycle[c] = true;
  }

  // no directed path between two distinct cycles
  std::vector<std::set<int>> cond(comp_count);
  for (int q = 0; q < nq; ++q) {
    if (trivial[q]) continue;
    for (int t : out[q])
      if (comp[t] != comp[q]) cond[comp[q]].insert(comp[t]);
  }
  std::vector<int> reaches_cycle(comp_count, -1);  // -1 unknown, else 0/1
  std::function<bool(int)> reaches = [&](int c) -> bool {
    if (reaches_cycle[c] != -1) return reaches_cycle[c];
    reaches_cycle[c] = 0;
    bool r = false;
    for (int d : cond[c]) r = r || is_cycle[d] || reaches(d);
    reaches_cycle[c] = r;
    return r;
  };
  for (int c = 0; c < comp_count; ++c)
    if (is_cycle[c] && reaches(c)) return false;
  return true;
}

std::vector<size_t> activity_counts(const MealyMachine& m, int n_max) {
  const int p = m.alphabet();
  const int nq = m.state_count();
  std::vector<bool> trivial(nq);
  for (int q = 0; q < nq; ++q) trivial[q] = canonicalize(m, q).is_identity();

  std::vector<size_t> counts;
  for (int n = 1; n <= n_max; ++n) {
    long long words = 1;
    for (int i = 0; i < n; ++i) {
      words *= p;
      if (words > 1'000'000) throw BudgetError("activity probe too large");
    }
    std::set<std::pair<int, TreeWord>> image;
    TreeWord u(n, 1);
    for (long long wi = 0; wi < words; ++wi) {
      long long r = wi;
      for (int i = n - 1; i >= 0; --i) {
        u[i] = static_cast<Letter>(r % p) + 1;
        r /= p;
      }
      for (int q = 0; q < nq; ++q) {
        int s = q;
        TreeWord y(n);
        for (int i = 0; i < n; ++i) {
          auto [t, o] = m.step(s, u[i]);
          s = t;
          y[i] = o;
        }
        if (!trivial[s]) image.emplace(s, y);
      }
    }
    counts.push_back(image.size());
  }
  return counts;
}

// --- order ------------------------------------------------------------------

OrderResult order_of(const Element& g, const OrderBudget& budget) {
  OrderResult r;
  const bool invertible = g.invertible();
  Element acc = g;
  std::unordered_map<Element, long long> seen;
  for (long long k = 1; k <= budget.power_budget; ++k) {
    if (acc.size() > budget.size_budget) return r;  // BudgetExceeded
    if (invertible && acc.is_identity()) {
      r.kind = OrderResult::Order;
      r.order = k;
      r.m = 0;
      r.n = k;
      return r;
    }
    auto [it, fresh] = seen.emplace(acc, k);
    if (!fresh) {
      r.kind = OrderResult::Cycle;
      r.m = it->second;
      r.n = k;
      return r;
    }
    acc = multiply(acc, g);
  }
  return r;
}

// --- ball -------------------------------------------------------------------

BallData ball(std::vector<Element> generators, std::vector<std::string> names,
              int radius, const BallBudget& budget) {
  BallData b;
  b.generators = std::move(generators);
  b.generator_names = std::move(names);
  b.radius = radius;
  const int p = b.generators.empty() ? 1 : b.generators[0].alphabet();
  Element one = Element::identity(p);
  b.elements.push_back(one);
  b.length.push_back(0);
  b.word.push_back({});
  b.index.emplace(one, 0);
  b.sizes.push_back(1);
  size_t level_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    size_t level_end = b.elements.size();
    for (size_t i = level_begin; i < level_end; ++i) {
      for (size_t gi = 0; gi < b.generators.size(); ++gi) {
        Element next = multiply(b.elements[i], b.generators[gi]);
        if (b.index.count(next)) continue;
        if (b.elements.size() >= budget.max_elements)
          throw BudgetError("ball budget exceeded");
        b.index.emplace(next, static_cast<int>(b.elements.size()));
        b.elements.push_back(next);
        b.length.push_back(r);
        std::vector<int> w = b.word[i];
        w.push_back(static_cast<int>(gi));
        b.word.push_back(std::move(w));
      }
    }
    b.sizes.push_back(b.elements.size());
    level_begin = level_end;
  }
  return b;
}

BallData ball(const MealyMachine& m, const std::vector<GenWord>& generators,
              int radius, const BallBudget& budget) {
  std::vector<Element> gens;
  std::vector<std::string> names;
  gens.reserve(generators.size());
  for (const auto& w : generators) {
    gens.push_back(element_of(m, w));
    names.push_back(w.text());
  }
  if (gens.empty()) {
    // the trivial ball: v(n) = 1 for every radius
    BallData b;
    b.radius = radius;
    Element one = Element::identity(m.alphabet());
    b.elements = {one};
    b.length = {0};
    b.word = {{}};
    b.index.emplace(one, 0);
    b.sizes.assign(radius + 1, 1);
    return b;
  }
  return ball(std::move(gens), std::move(names), radius, budget);
}

std::optional<int> BallData::metric(const Element& g) const {
  auto it = index.find(g);
  if (it == index.end()) return std::nullopt;
  return length[it->second];
}

std::optional<int> word_metric(const Element& g, const BallData& ball_data) {
  return ball_data.metric(g);
}

int complexity_size(const Element& g) { return g.size(); }

// --- contraction estimate ----------------------------------------------------

ContractionEstimate contraction_estimate(const MealyMachine& m,
                                         const BallData& ball_data) {
  if (ball_data.radius < 3) throw Error("contraction estimate needs a radius >= 3 ball");
  const int p = m.alphabet();
  const Rational eta_floor(1, 1024);

  // (|g|, |g@j|) over the whole ball; children that escape the ball are
  // charged radius+1, a lower bound on their true length
  std::vector<std::pair<long long, long long>> samples;
  for (size_t i = 0; i < ball_data.elements.size(); ++i) {
    if (ball_data.length[i] == 0) continue;
    const Element& g = ball_data.elements[i];
    for (Letter j = 1; j <= p; ++j) {
      Element child = state_at(g, TreeWord{j});
      auto len = ball_data.metric(child);
      samples.emplace_back(ball_data.length[i],
                           len ? *len : ball_data.radius + 1);
    }
  }

  ContractionEstimate best;
  best.radius_checked = ball_data.radius;
  if (samples.empty()) {
    best.eta = eta_floor;
    best.C = Rational(0);
    return best;
  }
  bool found = false;
  for (int c2 = 0; c2 <= 4; ++c2) {  // C grid 0, 1/2, 1, 3/2, 2
    Rational C(c2, 2);
    Rational eta = eta_floor;
    bool ok = true;
    for (const auto& [ng, nc] : samples) {
      Rational needed = (Rational(nc) - C) / Rational(ng);
      if (needed > eta) eta = needed;
      if (eta > Rational(1)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (!found || eta < best.eta || (eta == best.eta && C < best.C)) {
      best.eta = eta;
      best.C = C;
      found = true;
    }
  }
  if (!found) {
    // fall back to eta = 1 and the least C that verifies the bound
    Rational C(0);
    for (const auto& [ng, nc] : samples) {
      Rational needed = Rational(nc) - Rational(ng);
      if (needed > C) C = needed;
    }
    best.eta = Rational(1);
    best.C = C;
  }
  return best;
}

}  // namespace autg
