#include "autg/element.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace autg {

namespace {

size_t hash_combine(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

size_t table_hash(int p, const std::vector<int>& next,
                  const std::vector<Letter>& out) {
  size_t h = static_cast<size_t>(p);
  for (int v : next) h = hash_combine(h, static_cast<size_t>(v));
  for (Letter v : out) h = hash_combine(h, static_cast<size_t>(v));
  return h;
}

}  // namespace

const Element::Data& Element::data() const {
  static const std::shared_ptr<const Data> trivial = [] {
    auto d = std::make_shared<Data>();
    d->p = 1;
    d->next = {0};
    d->out = {1};
    d->hash = table_hash(1, d->next, d->out);
    return d;
  }();
  return d_ ? *d_ : *trivial;
}

Element Element::identity(int alphabet) {
  RawMachine raw;
  raw.p = alphabet;
  raw.next.assign(alphabet, 0);
  raw.out.resize(alphabet);
  for (Letter x = 1; x <= alphabet; ++x) raw.out[x - 1] = x;
  return canonicalize(raw, 0);
}

int Element::alphabet() const { return data().p; }
int Element::size() const { return static_cast<int>(data().out.size()) / data().p; }

bool Element::is_identity() const {
  const Data& d = data();
  if (d.out.size() != static_cast<size_t>(d.p)) return false;
  for (Letter x = 1; x <= d.p; ++x)
    if (d.out[x - 1] != x) return false;
  return true;
}

bool Element::invertible() const {
  const Data& d = data();
  int n = size();
  std::vector<bool> seen(d.p);
  for (int q = 0; q < n; ++q) {
    std::fill(seen.begin(), seen.end(), false);
    for (Letter x = 1; x <= d.p; ++x) {
      Letter y = d.out[q * d.p + (x - 1)];
      if (seen[y - 1]) return false;
      seen[y - 1] = true;
    }
  }
  return true;
}

int Element::next(int q, Letter x) const { return data().next[q * data().p + (x - 1)]; }
Letter Element::output(int q, Letter x) const { return data().out[q * data().p + (x - 1)]; }

std::vector<Letter> Element::root_action() const {
  const Data& d = data();
  return std::vector<Letter>(d.out.begin(), d.out.begin() + d.p);
}

bool Element::fixes_letters() const {
  const Data& d = data();
  for (Letter x = 1; x <= d.p; ++x)
    if (d.out[x - 1] != x) return false;
  return true;
}

int Element::root_cycle_exponent() const {
  const Data& d = data();
  // out(x) = ((x - 1 + k) mod p) + 1 for some fixed k?
  int k = d.out[0] - 1;
  for (Letter x = 1; x <= d.p; ++x)
    if (d.out[x - 1] != (x - 1 + k) % d.p + 1) return -1;
  return k;
}

TreeWord Element::act(const TreeWord& v) const {
  const Data& d = data();
  TreeWord image;
  image.reserve(v.size());
  int q = 0;
  for (Letter x : v) {
    if (x < 1 || x > d.p) throw Error("letter out of range in tree word");
    int c = q * d.p + (x - 1);
    image.push_back(d.out[c]);
    q = d.next[c];
  }
  return image;
}

size_t Element::hash() const { return data().hash; }

bool operator==(const Element& a, const Element& b) {
  const auto& da = a.data();
  const auto& db = b.data();
  if (&da == &db) return true;
  return da.hash == db.hash && da.p == db.p && da.out == db.out &&
         da.next == db.next;
}

bool operator<(const Element& a, const Element& b) {
  const auto& da = a.data();
  const auto& db = b.data();
  if (da.p != db.p) return da.p < db.p;
  if (da.out.size() != db.out.size()) return da.out.size() < db.out.size();
  if (da.out != db.out) return da.out < db.out;
  return da.next < db.next;
}

MealyMachine Element::machine(const std::string& name) const {
  const Data& d = data();
  int n = size();
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "s" + std::to_string(i);
  std::optional<int> identity;
  for (int q = 0; q < n; ++q) {
    bool id = true;
    for (Letter x = 1; x <= d.p && id; ++x) {
      int c = q * d.p + (x - 1);
      id = d.next[c] == q && d.out[c] == x;
    }
    if (id) {
      identity = q;
      break;
    }
  }
  return MealyMachine(name, d.p, std::move(names), d.next, d.out, identity);
}

Element canonicalize(const RawMachine& raw, int initial) {
  const int p = raw.p;
  const int n = raw.state_count();
  if (initial < 0 || initial >= n) throw Error("initial state out of range");

  // 1. restrict to the part reachable from the initial state
  std::vector<int> order;         // BFS discovery order
  std::vector<int> to_compact(n, -1);
  order.reserve(n);
  to_compact[initial] = 0;
  order.push_back(initial);
  for (size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    for (Letter x = 1; x <= p; ++x) {
      int t = raw.next[q * p + (x - 1)];
      if (to_compact[t] == -1) {
        to_compact[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  const int m = static_cast<int>(order.size());
  std::vector<int> next(m * p);
  std::vector<Letter> out(m * p);
  for (int i = 0; i < m; ++i) {
    int q = order[i];
    for (Letter x = 1; x <= p; ++x) {
      next[i * p + (x - 1)] = to_compact[raw.next[q * p + (x - 1)]];
      out[i * p + (x - 1)] = raw.out[q * p + (x - 1)];
    }
  }

  // 2. partition refinement: start from output rows, refine by successor
  // classes until stable
  std::vector<int> cls(m);
  {
    std::map<std::vector<Letter>, int> by_row;
    for (int i = 0; i < m; ++i) {
      std::vector<Letter> row(out.begin() + i * p, out.begin() + (i + 1) * p);
      auto [it, fresh] = by_row.emplace(std::move(row), static_cast<int>(by_row.size()));
      cls[i] = it->second;
    }
  }
  size_t klass_count = 0;
  for (int c : cls) klass_count = std::max<size_t>(klass_count, c + 1);
  for (;;) {
    std::map<std::vector<int>, int> by_sig;
    std::vector<int> refined(m);
    std::vector<int> sig(p + 1);
    for (int i = 0; i < m; ++i) {
      sig[0] = cls[i];
      for (Letter x = 1; x <= p; ++x) sig[x] = cls[next[i * p + (x - 1)]];
      auto [it, fresh] = by_sig.emplace(sig, static_cast<int>(by_sig.size()));
      refined[i] = it->second;
    }
    if (by_sig.size() == klass_count) break;
    klass_count = by_sig.size();
    cls = std::move(refined);
  }

  // 3. quotient + 4. BFS relabel from the class of the initial state,
  // exploring letters in increasing order
  const int k = static_cast<int>(klass_count);
  std::vector<int> rep(k, -1);
  for (int i = 0; i < m; ++i)
    if (rep[cls[i]] == -1) rep[cls[i]] = i;
  std::vector<int> relabel(k, -1);
  std::vector<int> bfs;
  bfs.reserve(k);
  relabel[cls[0]] = 0;
  bfs.push_back(cls[0]);
  for (size_t i = 0; i < bfs.size(); ++i) {
    int r = rep[bfs[i]];
    for (Letter x = 1; x <= p; ++x) {
      int t = cls[next[r * p + (x - 1)]];
      if (relabel[t] == -1) {
        relabel[t] = static_cast<int>(bfs.size());
        bfs.push_back(t);
      }
    }
  }
  const int final_n = static_cast<int>(bfs.size());

  auto d = std::make_shared<Element::Data>();
  d->p = p;
  d->next.resize(final_n * p);
  d->out.resize(final_n * p);
  for (int i = 0; i < final_n; ++i) {
    int r = rep[bfs[i]];
    for (Letter x = 1; x <= p; ++x) {
      d->next[i * p + (x - 1)] = relabel[cls[next[r * p + (x - 1)]]];
      d->out[i * p + (x - 1)] = out[r * p + (x - 1)];
    }
  }
  d->hash = table_hash(p, d->next, d->out);
  return Element(std::move(d));
}

Element canonicalize(const MealyMachine& m, int initial) {
  RawMachine raw{m.alphabet(), m.next_table(), m.out_table()};
  return canonicalize(raw, initial);
}

Element element_of_state(const MealyMachine& m, int state, int sign) {
  if (sign >= 0) return canonicalize(m, state);
  Element g = canonicalize(m, state);
  return inverse(g);
}

Element element_of(const MealyMachine& m, const GenWord& w) {
  Element acc = Element::identity(m.alphabet());
  for (const auto& [idx, sign] : resolve_word(m, w))
    acc = multiply(acc, element_of_state(m, idx, sign));
  return acc;
}

Element multiply(const Element& g, const Element& h) {
  if (g.alphabet() != h.alphabet())
    throw Error("elements over different alphabets");
  const int p = g.alphabet();
  // product machine on reachable state pairs; output applies g then h
  std::unordered_map<long long, int> index;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int a, int b) {
    long long key = static_cast<long long>(a) * h.size() + b;
    auto [it, fresh] = index.emplace(key, static_cast<int>(pairs.size()));
    if (fresh) pairs.emplace_back(a, b);
    return it->second;
  };
  intern(0, 0);
  RawMachine raw;
  raw.p = p;
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    for (Letter x = 1; x <= p; ++x) {
      Letter y = g.output(a, x);
      raw.out.push_back(h.output(b, y));
      raw.next.push_back(intern(g.next(a, x), h.next(b, y)));
    }
  }
  // rows were appended per state in discovery order, so the table layout is
  // already state-major
  return canonicalize(raw, 0);
}

Element inverse(const Element& g) {
  const int p = g.alphabet();
  const int n = g.size();
  RawMachine raw;
  raw.p = p;
  raw.next.assign(n * p, -1);
  raw.out.assign(n * p, 0);
  for (int q = 0; q < n; ++q) {
    for (Letter x = 1; x <= p; ++x) {
      Letter y = g.output(q, x);
      if (raw.next[q * p + (y - 1)] != -1)
        throw NotInvertibleError("element is not invertible");
      raw.next[q * p + (y - 1)] = g.next(q, x);
      raw.out[q * p + (y - 1)] = x;
    }
  }
  return canonicalize(raw, 0);
}

Element conjugate(const Element& g, const Element& h) {
  return multiply(multiply(inverse(h), g), h);
}

Element commutator(const Element& g, const Element& h) {
  return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
}

Element power(const Element& g, long long k) {
  Element base = k < 0 ? inverse(g) : g;
  unsigned long long e = k < 0 ? -static_cast<unsigned long long>(k) : k;
  Element acc = Element::identity(g.alphabet());
  while (e) {
    if (e & 1) acc = multiply(acc, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return acc;
}

namespace {

// States of a canonical element are pairwise inequivalent, so re-rooting it
// only needs the reachable restriction and a fresh BFS relabeling.
Element reroot_canonical(const Element& g, int start) {
  const int p = g.alphabet();
  std::vector<int> relabel(g.size(), -1);
  std::vector<int> order;
  relabel[start] = 0;
  order.push_back(start);
  for (size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    for (Letter x = 1; x <= p; ++x) {
      int t = g.next(q, x);
      if (relabel[t] == -1) {
        relabel[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  const int m = static_cast<int>(order.size());
  RawMachine raw;
  raw.p = p;
  raw.next.resize(m * p);
  raw.out.resize(m * p);
  for (int i = 0; i < m; ++i)
    for (Letter x = 1; x <= p; ++x) {
      raw.next[i * p + (x - 1)] = relabel[g.next(order[i], x)];
      raw.out[i * p + (x - 1)] = g.output(order[i], x);
    }
  return canonicalize(raw, 0);
}

}  // namespace

Element state_at(const Element& g, const TreeWord& v) {
  const int p = g.alphabet();
  int q = 0;
  for (Letter x : v) {
    if (x < 1 || x > p) throw Error("letter out of range in tree word");
    q = g.next(q, x);
  }
  if (q == 0) return g;
  return reroot_canonical(g, q);
}

std::vector<Element> states_of(const Element& g) {
  std::vector<Element> result;
  result.reserve(g.size());
  for (int q = 0; q < g.size(); ++q) result.push_back(reroot_canonical(g, q));
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

Element wedge(const TreeWord& v, const Element& g) {
  if (v.empty()) return g;
  const int p = g.alphabet();
  const int n = static_cast<int>(v.size());
  for (Letter x : v)
    if (x < 1 || x > p) throw Error("letter out of range in tree word");
  // path states 0..n-1, then g's states shifted by n, then an identity sink
  const int g_off = n;
  const int id = n + g.size();
  RawMachine raw;
  raw.p = p;
  raw.next.assign((id + 1) * p, 0);
  raw.out.assign((id + 1) * p, 0);
  for (int i = 0; i < n; ++i) {
    for (Letter x = 1; x <= p; ++x) {
      raw.out[i * p + (x - 1)] = x;
      raw.next[i * p + (x - 1)] =
          x == v[i] ? (i + 1 < n ? i + 1 : g_off) : id;
    }
  }
  for (int q = 0; q < g.size(); ++q)
    for (Letter x = 1; x <= p; ++x) {
      raw.next[(g_off + q) * p + (x - 1)] = g_off + g.next(q, x);
      raw.out[(g_off + q) * p + (x - 1)] = g.output(q, x);
    }
  for (Letter x = 1; x <= p; ++x) {
    raw.next[id * p + (x - 1)] = id;
    raw.out[id * p + (x - 1)] = x;
  }
  return canonicalize(raw, 0);
}

bool is_identity(const Element& g) { return g.is_identity(); }

}  // namespace autg
