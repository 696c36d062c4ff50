#include "autg/mealy.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace autg {

MealyMachine::MealyMachine(std::string name, int alphabet,
                           std::vector<std::string> states,
                           const std::vector<Transition>& transitions,
                           const std::optional<std::string>& identity)
    : name_(std::move(name)), alphabet_(alphabet), states_(std::move(states)) {
  if (alphabet_ < 1) throw Error("alphabet size must be at least 1");
  if (states_.empty()) throw Error("machine needs at least one state");
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < state_count(); ++i) {
    if (!index.emplace(states_[i], i).second)
      throw Error("duplicate state name: " + states_[i]);
  }
  next_tab_.assign(states_.size() * alphabet_, -1);
  out_tab_.assign(states_.size() * alphabet_, 0);
  for (const auto& t : transitions) {
    auto from = index.find(t.from);
    if (from == index.end()) throw Error("unknown state: " + t.from);
    auto to = index.find(t.to);
    if (to == index.end()) throw Error("unknown state: " + t.to);
    if (t.input < 1 || t.input > alphabet_ || t.output < 1 || t.output > alphabet_)
      throw Error("letter out of range in transition from " + t.from);
    int c = from->second * alphabet_ + (t.input - 1);
    if (next_tab_[c] != -1)
      throw Error("duplicate transition: " + t.from + " " + std::to_string(t.input));
    next_tab_[c] = to->second;
    out_tab_[c] = t.output;
  }
  if (identity) {
    auto it = index.find(*identity);
    if (it == index.end()) throw Error("unknown identity state: " + *identity);
    identity_ = it->second;
  }
  check_tables();
}

MealyMachine::MealyMachine(std::string name, int alphabet,
                           std::vector<std::string> states,
                           std::vector<int> next_tab, std::vector<Letter> out_tab,
                           std::optional<int> identity)
    : name_(std::move(name)),
      alphabet_(alphabet),
      states_(std::move(states)),
      next_tab_(std::move(next_tab)),
      out_tab_(std::move(out_tab)),
      identity_(identity) {
  if (alphabet_ < 1) throw Error("alphabet size must be at least 1");
  if (states_.empty()) throw Error("machine needs at least one state");
  if (next_tab_.size() != states_.size() * alphabet_ ||
      out_tab_.size() != states_.size() * alphabet_)
    throw Error("transition tables have the wrong size");
  if (identity_ && (*identity_ < 0 || *identity_ >= state_count()))
    throw Error("identity state index out of range");
  check_tables();
}

void MealyMachine::check_tables() const {
  for (size_t i = 0; i < next_tab_.size(); ++i) {
    if (next_tab_[i] < 0 || next_tab_[i] >= state_count())
      throw Error("missing or invalid transition for state " +
                  states_[i / alphabet_] + ", letter " +
                  std::to_string(i % alphabet_ + 1));
    if (out_tab_[i] < 1 || out_tab_[i] > alphabet_)
      throw Error("output letter out of range for state " + states_[i / alphabet_]);
  }
}

int MealyMachine::cell(int q, Letter x) const {
  if (q < 0 || q >= state_count())
    throw Error("unknown state index " + std::to_string(q));
  if (x < 1 || x > alphabet_)
    throw Error("letter " + std::to_string(x) + " out of range 1.." +
                std::to_string(alphabet_));
  return q * alphabet_ + (x - 1);
}

int MealyMachine::index_of(std::string_view state) const {
  for (int i = 0; i < state_count(); ++i)
    if (states_[i] == state) return i;
  return -1;
}

std::pair<int, Letter> MealyMachine::step(int q, Letter x) const {
  int c = cell(q, x);
  return {next_tab_[c], out_tab_[c]};
}

bool MealyMachine::state_invertible(int q) const {
  std::vector<bool> seen(alphabet_, false);
  for (Letter x = 1; x <= alphabet_; ++x) {
    Letter y = out_tab_[q * alphabet_ + (x - 1)];
    if (seen[y - 1]) return false;
    seen[y - 1] = true;
  }
  return true;
}

bool MealyMachine::invertible() const {
  for (int q = 0; q < state_count(); ++q)
    if (!state_invertible(q)) return false;
  return true;
}

bool MealyMachine::state_is_identity(int q) const {
  for (Letter x = 1; x <= alphabet_; ++x) {
    int c = q * alphabet_ + (x - 1);
    if (next_tab_[c] != q || out_tab_[c] != x) return false;
  }
  return true;
}

ValidationReport validate(const MealyMachine& m) {
  ValidationReport r;
  r.complete = true;  // construction guarantees totality
  for (int q = 0; q < m.state_count(); ++q) {
    if (m.state_invertible(q)) r.invertible_states.push_back(q);
    if (m.state_is_identity(q)) r.identity_states.push_back(q);
  }
  r.machine_invertible =
      static_cast<int>(r.invertible_states.size()) == m.state_count();
  r.declared_identity = m.identity_state();
  if (r.declared_identity)
    r.declared_identity_ok = m.state_is_identity(*r.declared_identity);
  return r;
}

TreeWord act_state(const MealyMachine& m, int q, const TreeWord& v) {
  TreeWord image;
  image.reserve(v.size());
  int s = q;
  for (Letter x : v) {
    auto [t, y] = m.step(s, x);
    image.push_back(y);
    s = t;
  }
  return image;
}

namespace {

// Letter tuples x_1..x_m ranked with x_1 most significant; 1-based.
TreeWord decode_block(Letter big, int p, int m) {
  TreeWord w(m);
  long long r = big - 1;
  for (int i = m - 1; i >= 0; --i) {
    w[i] = static_cast<Letter>(r % p) + 1;
    r /= p;
  }
  return w;
}

Letter encode_block(const TreeWord& w, int p) {
  long long r = 0;
  for (Letter x : w) r = r * p + (x - 1);
  return static_cast<Letter>(r + 1);
}

}  // namespace

MealyMachine power_product(const MealyMachine& machine, int m, int n,
                           const PowerBudget& budget) {
  if (m < 1 || n < 1) throw Error("power_product requires m, n >= 1");
  const int p = machine.alphabet();
  const long long q = machine.state_count();
  long long big_p = 1;
  for (int i = 0; i < m; ++i) {
    big_p *= p;
    if (big_p > budget.max_alphabet)
      throw BudgetError("alphabet budget exceeded: p^m > " +
                        std::to_string(budget.max_alphabet));
  }
  long long big_q = 1;
  for (int i = 0; i < n; ++i) {
    big_q *= q;
    if (big_q > budget.max_states)
      throw BudgetError("state budget exceeded: |Q|^n > " +
                        std::to_string(budget.max_states));
  }

  std::vector<std::string> names(big_q);
  std::vector<int> tuple(n, 0);
  for (long long id = 0; id < big_q; ++id) {
    long long r = id;
    for (int i = n - 1; i >= 0; --i) {
      tuple[i] = static_cast<int>(r % q);
      r /= q;
    }
    std::string nm = machine.state_name(tuple[0]);
    for (int i = 1; i < n; ++i) nm += "." + machine.state_name(tuple[i]);
    names[id] = nm;
  }

  std::vector<int> next_tab(big_q * big_p);
  std::vector<Letter> out_tab(big_q * big_p);
  for (long long id = 0; id < big_q; ++id) {
    long long r = id;
    for (int i = n - 1; i >= 0; --i) {
      tuple[i] = static_cast<int>(r % q);
      r /= q;
    }
    for (Letter big_x = 1; big_x <= big_p; ++big_x) {
      TreeWord block = decode_block(big_x, p, m);
      long long target = 0;
      for (int i = 0; i < n; ++i) {
        int s = tuple[i];
        for (int j = 0; j < m; ++j) {
          auto [t, y] = machine.step(s, block[j]);
          s = t;
          block[j] = y;
        }
        target = target * q + s;
      }
      next_tab[id * big_p + (big_x - 1)] = static_cast<int>(target);
      out_tab[id * big_p + (big_x - 1)] = encode_block(block, p);
    }
  }

  std::optional<int> identity;
  if (machine.identity_state()) {
    long long id = 0;
    for (int i = 0; i < n; ++i) id = id * q + *machine.identity_state();
    identity = static_cast<int>(id);
  }
  return MealyMachine(machine.name() + "_" + std::to_string(m) + "x" +
                          std::to_string(n),
                      static_cast<int>(big_p), std::move(names),
                      std::move(next_tab), std::move(out_tab), identity);
}

MealyMachine invert_machine(const MealyMachine& m) {
  const int p = m.alphabet();
  std::vector<std::string> names;
  names.reserve(m.state_count());
  for (int q = 0; q < m.state_count(); ++q) {
    if (!m.state_invertible(q))
      throw NotInvertibleError("state " + m.state_name(q) + " is not invertible");
    names.push_back(m.state_is_identity(q) ? m.state_name(q)
                                           : m.state_name(q) + "_inv");
  }
  std::vector<int> next_tab(m.state_count() * p);
  std::vector<Letter> out_tab(m.state_count() * p);
  for (int q = 0; q < m.state_count(); ++q) {
    for (Letter x = 1; x <= p; ++x) {
      auto [t, y] = m.step(q, x);
      next_tab[q * p + (y - 1)] = t;
      out_tab[q * p + (y - 1)] = x;
    }
  }
  return MealyMachine(m.name() + "_inv", p, std::move(names), std::move(next_tab),
                      std::move(out_tab), m.identity_state());
}

std::pair<MealyMachine, int> with_identity(const MealyMachine& m) {
  if (m.identity_state()) return {m, *m.identity_state()};
  for (int q = 0; q < m.state_count(); ++q)
    if (m.state_is_identity(q)) return {m, q};
  const int p = m.alphabet();
  std::vector<std::string> names = m.state_names();
  std::string id_name = "id";
  while (m.index_of(id_name) != -1) id_name += "_";
  names.push_back(id_name);
  std::vector<int> next_tab = m.next_table();
  std::vector<Letter> out_tab = m.out_table();
  int e = m.state_count();
  for (Letter x = 1; x <= p; ++x) {
    next_tab.push_back(e);
    out_tab.push_back(x);
  }
  return {MealyMachine(m.name(), p, std::move(names), std::move(next_tab),
                       std::move(out_tab), e),
          e};
}

DoubledMachine double_with_inverses(const MealyMachine& m) {
  const int p = m.alphabet();
  const int nq = m.state_count();
  std::vector<int> inv_index(nq, -1);
  std::vector<std::string> names = m.state_names();
  int fresh = nq;
  for (int q = 0; q < nq; ++q) {
    if (!m.state_invertible(q)) continue;
    if (m.state_is_identity(q)) {
      inv_index[q] = q;
      continue;
    }
    inv_index[q] = fresh++;
    std::string nm = m.state_name(q) + "_inv";
    while (std::find(names.begin(), names.end(), nm) != names.end()) nm += "_";
    names.push_back(nm);
  }
  std::vector<int> next_tab(fresh * p, -1);
  std::vector<Letter> out_tab(fresh * p, 0);
  std::copy(m.next_table().begin(), m.next_table().end(), next_tab.begin());
  std::copy(m.out_table().begin(), m.out_table().end(), out_tab.begin());
  for (int q = 0; q < nq; ++q) {
    int qi = inv_index[q];
    if (qi < nq) continue;  // not invertible, or its own inverse
    for (Letter x = 1; x <= p; ++x) {
      auto [t, y] = m.step(q, x);
      int ti = inv_index[t];
      if (ti == -1)
        throw NotInvertibleError("state " + m.state_name(t) +
                                 " is not invertible");
      next_tab[qi * p + (y - 1)] = ti;
      out_tab[qi * p + (y - 1)] = x;
    }
  }
  // non-invertible states have no inverse rows; drop them from the doubled
  // table only if some row stayed unset
  for (size_t i = 0; i < next_tab.size(); ++i)
    if (next_tab[i] == -1)
      throw NotInvertibleError("inverse rows incomplete");
  MealyMachine doubled(m.name() + "_pm", p, std::move(names), std::move(next_tab),
                       std::move(out_tab), m.identity_state());
  return {std::move(doubled), std::move(inv_index)};
}

}  // namespace autg
