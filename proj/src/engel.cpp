#include "autg/engel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace autg {

bool tuple_is_trivial(const EngelTuple& t) {
  return std::all_of(t.begin(), t.end(),
                     [](const Element& g) { return g.is_identity(); });
}

size_t EngelTupleHash::operator()(const EngelTuple& t) const noexcept {
  size_t h = t.size();
  for (const Element& g : t)
    h ^= g.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Element engel_commutator(const Element& g, const Element& h, int c) {
  Element e = g;
  for (int i = 0; i < c; ++i) e = commutator(e, h);
  return e;
}

DifferenceStep difference_step(const EngelTuple& t) {
  if (t.empty()) throw Error("empty tuple");
  const size_t n = t.size();
  DifferenceStep step;
  step.difference.reserve(n);
  for (size_t i = 0; i < n; ++i)
    step.difference.push_back(multiply(inverse(t[i]), t[(i + 1) % n]));
  step.descended = std::all_of(step.difference.begin(), step.difference.end(),
                               [](const Element& g) { return g.fixes_letters(); });
  if (step.descended) {
    const int p = t[0].alphabet();
    for (Letter j = 1; j <= p; ++j) {
      EngelTuple child;
      child.reserve(n);
      for (const Element& g : step.difference)
        child.push_back(state_at(g, TreeWord{j}));
      step.children.push_back(std::move(child));
    }
  } else {
    step.children.push_back(step.difference);
  }
  return step;
}

ExploredGraph explore_difference_graph(const std::vector<EngelTuple>& seeds,
                                       const EngelBudget& budget,
                                       bool prefer_seed_cycles) {
  ExploredGraph graph;
  std::optional<std::vector<int>> fallback_cycle;
  std::unordered_map<EngelTuple, int, EngelTupleHash> index;
  auto intern = [&](const EngelTuple& t) -> int {
    auto [it, fresh] = index.emplace(t, static_cast<int>(graph.nodes.size()));
    if (fresh) {
      graph.nodes.push_back(t);
      graph.edges.emplace_back();
    }
    return it->second;
  };
  auto oversized = [&](const EngelTuple& t) {
    return std::any_of(t.begin(), t.end(), [&](const Element& g) {
      return g.size() > budget.size_budget;
    });
  };
  long long work_left = budget.work_budget;
  auto charge = [&](const EngelTuple& t) {
    for (size_t i = 0; i < t.size(); ++i)
      work_left -= static_cast<long long>(t[i].size()) * t[(i + 1) % t.size()].size();
    return work_left >= 0;
  };

  // iterative DFS with an on-stack marker: a back edge closes a cycle, and
  // any cycle away from the trivial tuple is a non-Engel certificate
  std::vector<int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<int> dfs_parent;
  auto ensure = [&](size_t n) {
    if (state.size() < n) {
      state.resize(n, 0);
      dfs_parent.resize(n, -1);
    }
  };

  for (const EngelTuple& seed : seeds) {
    if (oversized(seed)) {
      graph.failed = true;
      continue;
    }
    int root = intern(seed);
    if (seeds.size() == 1) graph.root = root;
    ensure(graph.nodes.size());
    if (state[root] != 0) continue;

    struct Frame {
      int node;
      size_t child = 0;
      std::vector<std::pair<EngelTuple, GraphEdge>> targets;
    };
    std::vector<Frame> stack;
    auto open = [&](int v, int parent) {
      ensure(graph.nodes.size());
      state[v] = 1;
      dfs_parent[v] = parent;
      Frame f;
      f.node = v;
      const EngelTuple& t = graph.nodes[v];
      if (tuple_is_trivial(t)) {
        // absorbing self-loop; not expanded
        graph.edges[v].push_back({v, true, 1});
        state[v] = 2;
        return false;
      }
      if (!charge(t)) {
        graph.failed = true;
        graph.edges[v].push_back({-1, false, 0});
        state[v] = 2;
        return false;
      }
      DifferenceStep step = difference_step(t);
      for (size_t j = 0; j < step.children.size(); ++j) {
        GraphEdge e;
        e.descended = step.descended;
        e.letter = step.descended ? static_cast<Letter>(j + 1) : 0;
        f.targets.emplace_back(std::move(step.children[j]), e);
      }
      stack.push_back(std::move(f));
      return true;
    };

    if (!open(root, -1)) continue;
    while (!stack.empty() && !graph.cycle) {
      Frame& f = stack.back();
      if (f.child >= f.targets.size()) {
        state[f.node] = 2;
        stack.pop_back();
        continue;
      }
      auto& [target, edge] = f.targets[f.child++];
      bool is_new = index.find(target) == index.end();
      if (oversized(target) ||
          (is_new && graph.nodes.size() >= budget.node_budget)) {
        graph.failed = true;
        GraphEdge fail = edge;
        fail.to = -1;
        graph.edges[f.node].push_back(fail);
        continue;
      }
      int v = intern(target);
      ensure(graph.nodes.size());
      edge.to = v;
      graph.edges[f.node].push_back(edge);
      if (state[v] == 0) {
        int from = f.node;
        open(v, from);
      } else if (state[v] == 1) {
        // back edge: walk the DFS stack from f.node up to v
        std::vector<int> cycle;
        for (int w = f.node; w != -1; w = dfs_parent[w]) {
          cycle.push_back(w);
          if (w == v) break;
        }
        std::reverse(cycle.begin(), cycle.end());
        if (!prefer_seed_cycles) {
          graph.cycle = std::move(cycle);
        } else {
          bool through_seed = false;
          for (int id : cycle)
            for (const EngelTuple& seed : seeds)
              through_seed = through_seed || graph.nodes[id] == seed;
          if (through_seed)
            graph.cycle = std::move(cycle);
          else if (!fallback_cycle)
            fallback_cycle = std::move(cycle);
        }
      }
    }
  }
  if (!graph.cycle && fallback_cycle) graph.cycle = std::move(fallback_cycle);
  return graph;
}

EngelVerdict engel_pair_check(const Element& g, const Element& h,
                              const EngelBudget& budget) {
  EngelVerdict verdict;
  const int p = g.alphabet();
  if (g.is_identity()) {
    verdict.kind = EngelVerdict::Engel;
    verdict.c_bound = 0;
    return verdict;
  }
  if (h.is_identity()) {
    verdict.kind = EngelVerdict::Engel;
    verdict.c_bound = 1;  // E_1(g, 1) = [g, 1] = 1
    return verdict;
  }
  if (!g.invertible() || !h.invertible())
    throw NotInvertibleError("Engel checks need invertible elements");

  OrderResult ord = order_of(h, budget.order_budget);
  if (ord.kind != OrderResult::Order) {
    verdict.kind = EngelVerdict::Inconclusive;
    verdict.note = "order of h unknown within budget";
    return verdict;
  }
  long long n = ord.order;
  if (n % p != 0) n *= p / std::gcd(static_cast<long long>(p), n);

  EngelTuple t0;
  Element hp = Element::identity(p);
  for (long long i = 0; i < n; ++i) {
    t0.push_back(conjugate(g, hp));
    hp = multiply(hp, h);
  }

  ExploredGraph graph = explore_difference_graph({t0}, budget);
  verdict.nodes_explored = graph.nodes.size();
  if (graph.cycle) {
    verdict.kind = EngelVerdict::NotEngel;
    for (int id : *graph.cycle) verdict.cycle.push_back(graph.nodes[id]);
    return verdict;
  }
  if (graph.failed) {
    verdict.kind = EngelVerdict::Inconclusive;
    verdict.note = "exploration budget exceeded";
    return verdict;
  }
  // every path is absorbed by the trivial tuple, so E_c(g, h) vanishes for
  // some c; find the least one by direct iteration
  Element e = g;
  const long long limit =
      std::max<long long>(64, 2 * static_cast<long long>(graph.nodes.size()));
  for (long long c = 0; c <= limit; ++c) {
    if (e.is_identity()) {
      verdict.kind = EngelVerdict::Engel;
      verdict.c_bound = c;
      return verdict;
    }
    e = commutator(e, h);
  }
  verdict.kind = EngelVerdict::Inconclusive;
  verdict.note = "difference graph absorbed but E_c did not vanish within bound";
  return verdict;
}

std::optional<Rational> radius_bound(long long norm_g, long long norm_h, int n,
                                     const Rational& eta, const Rational& C) {
  long long two_n = 1;
  for (int i = 0; i < n && two_n < (1LL << 40); ++i) two_n *= 2;
  if (Rational(two_n) * eta >= Rational(1)) return std::nullopt;
  return Rational(norm_g + n * norm_h) * Rational(two_n) * C /
         (Rational(1) - Rational(two_n) * eta);
}

ExponentCheckResult engel_exponent_check(const MealyMachine& m, int n, int R,
                                         const BallData& ball_data,
                                         size_t tuple_budget, NormKind norm) {
  ExponentCheckResult result;
  if (norm == NormKind::WordLength && ball_data.radius < R)
    throw Error("ball radius is smaller than R");
  if (n < 1 || n % m.alphabet() != 0)
    throw Error("n must be a positive multiple of the alphabet size");
  auto inside_ball = [&](const Element& g) {
    if (norm == NormKind::StateCount) return g.size() <= R;
    auto len = ball_data.metric(g);
    return len.has_value() && *len <= R;
  };

  std::vector<int> members;  // indices into ball_data.elements inside B(R)
  for (size_t i = 0; i < ball_data.elements.size(); ++i)
    if (inside_ball(ball_data.elements[i])) members.push_back(static_cast<int>(i));
  double count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<double>(members.size());
  if (count > static_cast<double>(tuple_budget)) {
    result.kind = ExponentCheckResult::Inconclusive;
    result.note = "tuple budget exceeded";
    return result;
  }

  const size_t total = static_cast<size_t>(count);
  std::unordered_map<EngelTuple, int, EngelTupleHash> index;
  std::vector<EngelTuple> nodes;
  nodes.reserve(total);
  {
    std::vector<size_t> digits(n, 0);
    for (size_t id = 0; id < total; ++id) {
      EngelTuple t;
      t.reserve(n);
      for (int i = 0; i < n; ++i)
        t.push_back(ball_data.elements[members[digits[i]]]);
      index.emplace(t, static_cast<int>(nodes.size()));
      nodes.push_back(std::move(t));
      for (int i = n - 1; i >= 0; --i) {
        if (++digits[i] < members.size()) break;
        digits[i] = 0;
      }
    }
  }

  // edges; -1 is the fail vertex
  std::vector<std::vector<int>> succ(nodes.size());
  for (size_t id = 0; id < nodes.size(); ++id) {
    DifferenceStep step = difference_step(nodes[id]);
    for (const EngelTuple& child : step.children) {
      bool inside = std::all_of(child.begin(), child.end(), inside_ball);
      if (!inside) continue;  // edge to fail, never part of a cycle
      auto it = index.find(child);
      if (it == index.end()) continue;
      succ[id].push_back(it->second);
    }
  }

  // Tarjan SCC over the materialized graph
  std::vector<int> num(nodes.size(), -1), low(nodes.size()), comp(nodes.size(), -1);
  std::vector<int> tarjan_stack;
  std::vector<bool> on_stack(nodes.size(), false);
  int counter = 0, comp_count = 0;
  struct Frame {
    int v;
    size_t i = 0;
  };
  for (size_t start = 0; start < nodes.size(); ++start) {
    if (num[start] != -1) continue;
    std::vector<Frame> stack{{static_cast<int>(start)}};
    num[start] = low[start] = counter++;
    tarjan_stack.push_back(static_cast<int>(start));
    on_stack[start] = true;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.i < succ[f.v].size()) {
        int w = succ[f.v][f.i++];
        if (num[w] == -1) {
          num[w] = low[w] = counter++;
          tarjan_stack.push_back(w);
          on_stack[w] = true;
          stack.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        if (low[f.v] == num[f.v]) {
          for (;;) {
            int w = tarjan_stack.back();
            tarjan_stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            if (w == f.v) break;
          }
          ++comp_count;
        }
        int v = f.v;
        stack.pop_back();
        if (!stack.empty()) low[stack.back().v] = std::min(low[stack.back().v], low[v]);
      }
    }
  }

  std::vector<int> comp_size(comp_count, 0);
  for (size_t id = 0; id < nodes.size(); ++id) ++comp_size[comp[id]];
  for (size_t id = 0; id < nodes.size(); ++id) {
    bool in_cycle = comp_size[comp[id]] > 1;
    if (!in_cycle)
      in_cycle = std::find(succ[id].begin(), succ[id].end(), static_cast<int>(id)) !=
                 succ[id].end();
    if (!in_cycle || tuple_is_trivial(nodes[id])) continue;
    // walk successors inside the component until the start repeats
    result.kind = ExponentCheckResult::NotEngelWitness;
    std::vector<int> cycle{static_cast<int>(id)};
    std::set<int> seen{static_cast<int>(id)};
    int cur = static_cast<int>(id);
    for (;;) {
      int nxt = -1;
      for (int w : succ[cur])
        if (comp[w] == comp[cur]) {
          nxt = w;
          break;
        }
      if (nxt == -1 || nxt == cycle.front()) break;
      if (seen.count(nxt)) {
        // trim the tail before the repeated vertex
        auto at = std::find(cycle.begin(), cycle.end(), nxt);
        cycle.erase(cycle.begin(), at);
        break;
      }
      seen.insert(nxt);
      cycle.push_back(nxt);
      cur = nxt;
    }
    for (int w : cycle) result.cycle.push_back(nodes[w]);
    return result;
  }
  result.kind = ExponentCheckResult::AllEngel;
  return result;
}

std::optional<std::vector<EngelTuple>> branched_witness_check(
    const MealyMachine& m, const std::vector<GenWord>& K_generators, int n,
    const EngelBudget& budget, std::vector<EngelTuple> seeds) {
  if (seeds.empty()) {
    // default seeds: n-tuples over the identity and the K-generators and
    // their inverses
    std::vector<Element> pool{Element::identity(m.alphabet())};
    for (const GenWord& w : K_generators) {
      Element k = element_of(m, w);
      pool.push_back(k);
      if (k.invertible()) pool.push_back(inverse(k));
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    size_t total = 1;
    for (int i = 0; i < n; ++i) total *= pool.size();
    std::vector<size_t> digits(n, 0);
    for (size_t id = 0; id < total; ++id) {
      EngelTuple t;
      for (int i = 0; i < n; ++i) t.push_back(pool[digits[i]]);
      if (!tuple_is_trivial(t)) seeds.push_back(std::move(t));
      for (int i = n - 1; i >= 0; --i) {
        if (++digits[i] < pool.size()) break;
        digits[i] = 0;
      }
    }
  }
  for (const EngelTuple& t : seeds)
    if (static_cast<int>(t.size()) != n)
      throw Error("seed tuples must have length n");

  ExploredGraph graph = explore_difference_graph(seeds, budget, true);
  if (!graph.cycle) return std::nullopt;
  std::vector<EngelTuple> cycle;
  for (int id : *graph.cycle) cycle.push_back(graph.nodes[id]);
  return cycle;
}

WitnessSpec make_witness_spec(const Element& h, std::vector<Element> tuple,
                              const OrderBudget& budget) {
  OrderResult ord = order_of(h, budget);
  if (ord.kind != OrderResult::Order)
    throw Error("witness construction needs h of finite order");
  const long long sn = ord.order;
  if (tuple.empty() || sn % tuple.size() != 0)
    throw Error("tuple length must divide the order of h");
  const int p = h.alphabet();

  // smallest depth with an orbit of length exactly order(h)
  for (int depth = 1; depth <= 24; ++depth) {
    long long words = 1;
    for (int i = 0; i < depth && words <= 1'000'000; ++i) words *= p;
    if (words > 1'000'000) break;
    std::vector<bool> visited(words, false);
    auto encode = [&](const TreeWord& w) {
      long long r = 0;
      for (Letter x : w) r = r * p + (x - 1);
      return r;
    };
    auto decode = [&](long long wi) {
      TreeWord w(depth);
      for (int i = depth - 1; i >= 0; --i) {
        w[i] = static_cast<Letter>(wi % p) + 1;
        wi /= p;
      }
      return w;
    };
    for (long long wi = 0; wi < words; ++wi) {
      if (visited[wi]) continue;
      // collect the forward orbit of h from this vertex
      std::vector<long long> orbit{wi};
      visited[wi] = true;
      long long cur = encode(h.act(decode(wi)));
      while (cur != wi) {
        visited[cur] = true;
        orbit.push_back(cur);
        cur = encode(h.act(decode(cur)));
      }
      if (static_cast<long long>(orbit.size()) != sn) continue;
      // label v_1 = lexicographically least vertex; forward action of h
      // decreases the index, so walking the forward orbit fills v_1, v_0 =
      // v_sn, v_{sn-1}, ...
      size_t least = 0;
      for (size_t i = 1; i < orbit.size(); ++i)
        if (orbit[i] < orbit[least]) least = i;
      WitnessSpec spec;
      spec.h = h;
      spec.tuple = std::move(tuple);
      spec.orbit.resize(sn);
      for (long long k = 0; k < sn; ++k) {
        // v_1^{h^k} = v_{1-k}; labels live in 1..sn, stored 0-based
        long long label = ((1 - k) % sn + sn) % sn;
        if (label == 0) label = sn;
        spec.orbit[label - 1] = decode(orbit[(least + k) % sn]);
      }
      return spec;
    }
  }
  throw Error("no orbit of full order found within depth budget");
}

Element build_witness(const WitnessSpec& spec) {
  const long long sn = static_cast<long long>(spec.orbit.size());
  const size_t n = spec.tuple.size();
  if (n == 0 || sn % n != 0) throw Error("tuple length must divide the orbit length");
  const int p = spec.h.alphabet();
  // check the orbit really is an h-orbit with v_i^h = v_{i-1}
  for (long long i = 0; i < sn; ++i) {
    const TreeWord& v = spec.orbit[i];
    const TreeWord& prev = spec.orbit[(i - 1 + sn) % sn];
    if (spec.h.act(v) != prev) throw Error("malformed orbit: v_i^h != v_{i-1}");
  }

  Element g = Element::identity(p);
  Element h_i = Element::identity(p);  // h_i = (h@v_1)^-1 ... (h@v_i)^-1
  for (long long i = 1; i <= sn; ++i) {
    h_i = multiply(h_i, inverse(state_at(spec.h, spec.orbit[i - 1])));
    const Element& k = spec.tuple[(i - 1) % n];
    g = multiply(g, wedge(spec.orbit[i - 1], conjugate(k, h_i)));
  }
  return g;
}

bool verify_certificate(const std::vector<Element>& A0, int period,
                        const TreeWord& word) {
  if (A0.empty() || period < 1) return false;
  const size_t n = A0.size();
  std::vector<Element> A = A0;
  for (int step = 0; step < period; ++step) {
    std::vector<Element> next;
    next.reserve(n);
    for (size_t i = 0; i < n; ++i)
      next.push_back(multiply(inverse(A[i]), A[(i + 1) % n]));
    A = std::move(next);
  }
  for (size_t i = 0; i < n; ++i) {
    if (A[i].is_identity()) return false;
    if (A[i].act(word) != word) return false;
    if (state_at(A[i], word) != A0[i]) return false;
  }
  return true;
}

std::optional<PeriodSearchResult> period_search(const Element& g, const Element& h,
                                                int c_max, int window,
                                                int size_budget) {
  PeriodSearchResult result;
  std::vector<Element> engel;
  Element e = g;
  for (int c = 0; c <= c_max; ++c) {
    result.sizes.push_back(e.size());
    engel.push_back(e);
    if (e.size() > size_budget) {
      result.size_budget_hit = true;
      break;
    }
    if (c < c_max) e = commutator(e, h);
  }
  const int have = static_cast<int>(result.sizes.size()) - 1;  // E_0..E_have
  if (have < 2) return std::nullopt;

  // autocorrelation of the size increments ranks the candidate lags: a good
  // period has lagged increments that line up, i.e. small mean absolute
  // mismatch
  std::vector<int> diff;
  for (int i = 0; i + 1 <= have; ++i)
    diff.push_back(result.sizes[i + 1] - result.sizes[i]);
  std::vector<std::pair<double, int>> scored;  // (score, lag)
  for (int lag = 1; lag <= window && lag * 2 <= static_cast<int>(diff.size()); ++lag) {
    double score = 0;
    int count = 0;
    for (size_t i = 0; i + lag < diff.size(); ++i, ++count)
      score += std::abs(diff[i + lag] - diff[i]);
    scored.emplace_back(score / std::max(count, 1), lag);
  }
  if (scored.empty()) return std::nullopt;
  std::sort(scored.begin(), scored.end());

  // validation of a candidate lag: the state sets of E_c and E_{c+lag}
  // must eventually coincide up to boundary effects. States that occur in
  // most of the E_c are ambient noise (generator sections and the like)
  // and are ignored.
  std::vector<std::vector<Element>> states(engel.size());
  for (size_t c = 0; c < engel.size(); ++c) states[c] = states_of(engel[c]);
  std::map<Element, int> occurrences;
  for (const auto& s : states)
    for (const Element& x : s) ++occurrences[x];
  std::vector<Element> noise;
  for (const auto& [x, n] : occurrences)
    if (3 * n > 2 * static_cast<int>(states.size())) noise.push_back(x);
  std::sort(noise.begin(), noise.end());
  std::vector<std::vector<Element>> filtered(states.size());
  for (size_t c = 0; c < states.size(); ++c)
    for (const Element& x : states[c])
      if (!x.is_identity() && !std::binary_search(noise.begin(), noise.end(), x))
        filtered[c].push_back(x);

  const double ratio_threshold = 0.6;
  const size_t min_set = 12;
  auto first_match = [&](int lag) -> std::pair<int, std::vector<Element>> {
    for (int c = 0; c + lag <= have; ++c) {
      const auto& a = filtered[c];
      const auto& b = filtered[c + lag];
      if (a.size() < min_set || b.size() < min_set) continue;
      std::vector<Element> common;
      for (const Element& x : a)
        if (std::binary_search(b.begin(), b.end(), x)) common.push_back(x);
      double ratio =
          static_cast<double>(common.size()) / std::min(a.size(), b.size());
      if (ratio >= ratio_threshold) return {c, std::move(common)};
    }
    return {-1, {}};
  };

  for (const auto& [score, lag] : scored) {
    auto [c, common] = first_match(lag);
    if (c < 0) continue;
    // prefer a proper divisor that also validates (a doubled period
    // matches whenever the true one does)
    int period = lag;
    for (int d = 2; d < period; ++d) {
      if (period % d != 0) continue;
      auto [cd, common_d] = first_match(d);
      if (cd >= 0) {
        period = d;
        c = cd;
        common = std::move(common_d);
        break;
      }
    }
    std::sort(common.begin(), common.end(), [](const Element& a, const Element& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    result.period = period;
    result.c = c;
    result.common_states = std::move(common);
    return result;
  }
  // no lag validates; report the best-scoring one with no match data
  result.period = scored.front().second;
  result.c = -1;
  return result;
}

}  // namespace autg
