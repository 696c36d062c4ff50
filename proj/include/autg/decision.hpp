#pragma once

#include <boost/rational.hpp>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "autg/element.hpp"
#include "autg/mealy.hpp"
#include "autg/words.hpp"

namespace autg {

using Rational = boost::rational<long long>;

/// Linear-space word problem: merge-propagation over on-demand vertices of
/// the Q^n power automaton. Words may use inverses when the machine is
/// invertible (they are resolved through the doubled machine).
bool word_problem_linear(const MealyMachine& m, const GenWord& u, const GenWord& v);

/// Cross-check oracle: structural comparison of canonical forms.
bool word_problem_canonical(const Element& g, const Element& h);

enum class NucleusVerdict { Nuclear, Inconclusive };

struct NucleusBudget {
  int depth_budget = 32;
  int size_budget = 10'000;      // canonical states per explored element
  size_t element_budget = 100'000;
};

/// Result of the nuclear check: every length-2 state word must have all
/// its states land, at some depth, in the set of single-state elements.
class NucleusReport {
 public:
  NucleusVerdict verdict() const { return verdict_; }
  /// Distinct element classes of the machine states, when Nuclear.
  const std::vector<Element>& nucleus() const { return nucleus_; }
  /// Depth at which the pair word q1 q2 had all states in the nucleus.
  const std::map<std::pair<int, int>, int>& witness_depths() const {
    return witness_depths_;
  }
  int contraction_depth() const { return contraction_depth_; }
  size_t elements_explored() const { return elements_explored_; }
  /// Elements still outside the nucleus when the budget ran out.
  const std::vector<Element>& frontier_evidence() const { return frontier_; }

 private:
  friend NucleusReport nucleus(const MealyMachine&, const NucleusBudget&);
  friend bool word_problem_contracting(const MealyMachine&, const GenWord&,
                                       const GenWord&, const NucleusReport&);
  NucleusVerdict verdict_ = NucleusVerdict::Inconclusive;
  std::vector<Element> nucleus_;
  std::map<std::pair<int, int>, int> witness_depths_;
  int contraction_depth_ = 0;
  size_t elements_explored_ = 0;
  std::vector<Element> frontier_;
  // preprocessed data for the polynomial word problem
  std::optional<MealyMachine> machine_;  // machine with guaranteed identity
  int identity_index_ = -1;
  std::vector<int> state_class_;                 // state -> representative state
  std::vector<std::vector<int>> pair_rewrite_;   // [q1*|Q|+q2][word index] -> state
};

NucleusReport nucleus(const MealyMachine& m, const NucleusBudget& budget = {});

/// Polynomial-time word problem for nuclear automata: recursive comparison
/// with length-2 blocks rewritten to nucleus states. Requires a Nuclear report.
bool word_problem_contracting(const MealyMachine& m, const GenWord& u,
                              const GenWord& v, const NucleusReport& report);

/// Cycle-structure test for bounded automata: apart from identity states,
/// every simple cycle is disjoint from every other and no path connects two
/// cycles.
bool is_bounded(const MealyMachine& m);

/// |Phi(X^n x Q) \ ({identity} x X^n)| for n = 1..n_max; the counting
/// probe behind the bounded definition.
std::vector<size_t> activity_counts(const MealyMachine& m, int n_max);

struct OrderResult {
  enum Kind { Order, Cycle, BudgetExceeded } kind = BudgetExceeded;
  long long order = 0;  // k with g^k = 1, minimal (invertible g)
  long long m = 0, n = 0;  // minimal m < n with g^m = g^n (semigroup case)
};

struct OrderBudget {
  long long power_budget = 256;
  int size_budget = 100'000;
};

OrderResult order_of(const Element& g, const OrderBudget& budget = {});

struct BallBudget {
  size_t max_elements = 1'000'000;
};

/// Ball of the generated (semi)group under BFS with canonical-form
/// deduplication. Deterministic: frontiers are scanned in discovery order
/// and generators in the given order, so each element keeps the
/// lexicographically first shortest word.
struct BallData {
  std::vector<Element> generators;
  std::vector<std::string> generator_names;
  int radius = 0;
  std::vector<Element> elements;        // discovery order; elements[0] = identity
  std::vector<int> length;              // word length per element
  std::vector<std::vector<int>> word;   // generator indices per element
  std::vector<size_t> sizes;            // v(0..radius), cumulative counts
  std::unordered_map<Element, int> index;

  bool contains(const Element& g) const { return index.count(g) != 0; }
  /// Exact word length, or nullopt when g lies outside the ball.
  std::optional<int> metric(const Element& g) const;
};

BallData ball(const MealyMachine& m, const std::vector<GenWord>& generators,
              int radius, const BallBudget& budget = {});
BallData ball(std::vector<Element> generators, std::vector<std::string> names,
              int radius, const BallBudget& budget = {});

/// Exact word metric when g is inside the ball, otherwise nullopt.
std::optional<int> word_metric(const Element& g, const BallData& ball_data);

/// Total surrogate complexity: state count of the canonical form.
int complexity_size(const Element& g);

struct ContractionEstimate {
  Rational eta{1, 1};   // in (0,1]
  Rational C{0, 1};
  int radius_checked = 0;
};

/// Fit of the contraction property |g@j| <= eta*|g| + C over a computed
/// ball, scanning a small grid of C values and keeping the pair with the
/// least eta that verifies the bound on the whole ball.
ContractionEstimate contraction_estimate(const MealyMachine& m,
                                         const BallData& ball_data);

}  // namespace autg
