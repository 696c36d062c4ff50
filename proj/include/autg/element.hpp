#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "autg/mealy.hpp"
#include "autg/words.hpp"

namespace autg {

/// Plain transition tables of an anonymous transducer, the intermediate
/// form every element operation produces before canonicalization.
struct RawMachine {
  int p = 1;
  std::vector<int> next;     // state-major, size states*p
  std::vector<Letter> out;   // same layout
  int state_count() const { return static_cast<int>(out.size()) / p; }
};

/// One (semi)group element: a minimized, reachable initial transducer with
/// states relabeled in breadth-first order from the initial state. Two
/// elements are equal in the (semi)group iff their representations are
/// structurally identical, so operator== decides the word problem.
/// Elements are immutable values; copies share storage.
class Element {
 public:
  Element() = default;  // identity over a 1-letter alphabet

  static Element identity(int alphabet);

  int alphabet() const;
  int size() const;  // number of states of the canonical machine
  bool is_identity() const;
  bool invertible() const;

  int next(int q, Letter x) const;
  Letter output(int q, Letter x) const;

  /// x -> out(initial, x); the root self-map pi(g) of the alphabet.
  std::vector<Letter> root_action() const;
  bool fixes_letters() const;

  /// When the root action is a power of the cycle (1 2 ... p), its
  /// exponent in 0..p-1; -1 otherwise.
  int root_cycle_exponent() const;

  TreeWord act(const TreeWord& v) const;

  size_t hash() const;

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  /// Deterministic total order (by size, then tables); used for stable reports.
  friend bool operator<(const Element& a, const Element& b);

  /// The underlying canonical machine, named and serializable.
  MealyMachine machine(const std::string& name = "element") const;

 private:
  friend Element canonicalize(const RawMachine&, int);
  struct Data {
    int p = 1;
    std::vector<int> next;
    std::vector<Letter> out;
    size_t hash = 0;
  };
  explicit Element(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  const Data& data() const;
  std::shared_ptr<const Data> d_;
};

/// Reachable restriction, partition-refinement minimization, quotient and
/// BFS relabeling; idempotent on canonical input.
Element canonicalize(const RawMachine& raw, int initial);
Element canonicalize(const MealyMachine& m, int initial);

/// Canonical element of one machine state (sign -1 for its inverse).
Element element_of_state(const MealyMachine& m, int state, int sign = +1);

/// Evaluate a generator word to a canonical element, leftmost factor first.
Element element_of(const MealyMachine& m, const GenWord& w);

Element multiply(const Element& g, const Element& h);
Element inverse(const Element& g);
Element conjugate(const Element& g, const Element& h);   // h^-1 g h
Element commutator(const Element& g, const Element& h);  // g^-1 h^-1 g h
Element power(const Element& g, long long k);

/// The state g@v, i.e. the action of g on the subtree below v^g.
Element state_at(const Element& g, const TreeWord& v);

/// All states of g as canonical elements (g@v over all vertices v),
/// deduplicated, in BFS state order.
std::vector<Element> states_of(const Element& g);

/// The wedge v*g: acts as g on the subtree vX*, trivially elsewhere.
Element wedge(const TreeWord& v, const Element& g);

bool is_identity(const Element& g);

}  // namespace autg

template <>
struct std::hash<autg::Element> {
  size_t operator()(const autg::Element& e) const noexcept { return e.hash(); }
};
