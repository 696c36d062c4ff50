#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autg/decision.hpp"
#include "autg/element.hpp"

namespace autg {

/// An n-tuple of canonical elements, the vertices of the cyclic-difference
/// graph. The trivial tuple is all-identity.
using EngelTuple = std::vector<Element>;

bool tuple_is_trivial(const EngelTuple& t);

struct EngelTupleHash {
  size_t operator()(const EngelTuple& t) const noexcept;
};

struct EngelBudget {
  size_t node_budget = 100'000;
  int size_budget = 10'000;  // canonical states per tuple component
  // total work across the exploration, in product-table cells (the cost of
  // multiplying elements of sizes m and n is charged as m*n); keeps the
  // wall clock bounded even when sizes crawl upward under the size budget
  long long work_budget = 50'000'000;
  OrderBudget order_budget{};
};

/// One step of the difference dynamics: differences h_i = g_i^-1 g_{i+1}
/// (cyclically); when every h_i fixes the alphabet the step descends and
/// yields the p children (h_1@j, ..., h_n@j), otherwise the single
/// difference tuple is the next vertex.
struct DifferenceStep {
  EngelTuple difference;
  bool descended = false;
  std::vector<EngelTuple> children;  // p children when descended, else the difference
};
DifferenceStep difference_step(const EngelTuple& t);

struct GraphEdge {
  int to = -1;  // -1 encodes the fail vertex
  bool descended = false;
  Letter letter = 0;  // valid when descended
};

/// The reachable, memoized part of the difference graph.
struct ExploredGraph {
  std::vector<EngelTuple> nodes;
  std::vector<std::vector<GraphEdge>> edges;
  int root = 0;
  bool failed = false;  // some edge hit a budget (the `fail` vertex)
  std::optional<std::vector<int>> cycle;  // node ids of a nontrivial cycle
};

/// Explore from the given seeds until closure, a nontrivial cycle, or a
/// budget breach. Trivial tuples are absorbing and never expanded. With
/// prefer_seed_cycles the search keeps going past cycles that avoid every
/// seed, reporting one of those only when no seed lies on a cycle.
ExploredGraph explore_difference_graph(const std::vector<EngelTuple>& seeds,
                                       const EngelBudget& budget = {},
                                       bool prefer_seed_cycles = false);

/// E_0(g,h) = g, E_c(g,h) = [E_{c-1}(g,h), h].
Element engel_commutator(const Element& g, const Element& h, int c);

struct EngelVerdict {
  enum Kind { Engel, NotEngel, Inconclusive } kind = Inconclusive;
  long long c_bound = 0;              // Engel: minimal c with E_c(g,h) = 1
  std::vector<EngelTuple> cycle;      // NotEngel: a reachable nontrivial cycle
  std::string note;
  size_t nodes_explored = 0;
};

/// Pair mode of the difference-graph semi-algorithm, from the start tuple
/// t0 = (g, g^h, ..., g^{h^{n-1}}) for n the order of h (raised to a
/// multiple of p when needed).
EngelVerdict engel_pair_check(const Element& g, const Element& h,
                              const EngelBudget& budget = {});

/// R = (|g| + n|h|) 2^n C / (1 - 2^n eta) when 2^n eta < 1, else nullopt.
std::optional<Rational> radius_bound(long long norm_g, long long norm_h, int n,
                                     const Rational& eta, const Rational& C);

struct ExponentCheckResult {
  enum Kind { AllEngel, NotEngelWitness, Inconclusive } kind = Inconclusive;
  std::vector<EngelTuple> cycle;
  std::string note;
};

/// Which norm bounds the ball B(R): the exact word metric, or the state
/// count of the canonical form as a surrogate when exact balls are out of
/// reach.
enum class NormKind { WordLength, StateCount };

/// Exponent mode: materializes the full graph on B(R)^n (with the fail
/// vertex) and looks for a cycle through a nontrivial tuple. The ball
/// supplies the candidate elements; membership in B(R) is decided by the
/// chosen norm.
ExponentCheckResult engel_exponent_check(const MealyMachine& m, int n, int R,
                                         const BallData& ball_data,
                                         size_t tuple_budget = 1'000'000,
                                         NormKind norm = NormKind::WordLength);

/// Weakly-branched witness mode: explore the difference dynamics from
/// tuples of K-elements and report a nontrivial cycle when one is found.
/// When no seeds are given, all n-tuples over {1} + K-generators (and
/// their inverses) are used. Absence of a cycle within budget proves
/// nothing.
std::optional<std::vector<EngelTuple>> branched_witness_check(
    const MealyMachine& m, const std::vector<GenWord>& K_generators, int n,
    const EngelBudget& budget = {}, std::vector<EngelTuple> seeds = {});

/// Data of the witness construction g = prod_i (v_i * k_{i%n}^{h_i}).
struct WitnessSpec {
  Element h;
  std::vector<TreeWord> orbit;  // v_1..v_{sn} with v_i^h = v_{i-1} (cyclic)
  std::vector<Element> tuple;   // k_1..k_n; n divides the orbit length
};

/// Finds the smallest depth at which h has an orbit of length exactly
/// order(h), picks the orbit containing the lexicographically least word,
/// and labels it so that v_i^h = v_{i-1}.
WitnessSpec make_witness_spec(const Element& h, std::vector<Element> tuple,
                              const OrderBudget& budget = {});

/// Validates the orbit and tuple invariants and returns the canonical
/// product of wedges. Throws on a malformed orbit.
Element build_witness(const WitnessSpec& spec);

/// Iterates A_{k+1,i} = A_{k,i}^-1 A_{k,i+1 mod n} for `period` steps and
/// checks that every final component fixes `word`, is nontrivial, and has
/// state A_{0,i} at `word`.
bool verify_certificate(const std::vector<Element>& A0, int period,
                        const TreeWord& word);

struct PeriodSearchResult {
  int period = 0;
  int c = 0;                           // E_c and E_{c+period} share states
  std::vector<Element> common_states;  // sorted by canonical size, nontrivial
  std::vector<int> sizes;              // canonical sizes of E_0..E_cmax
  bool size_budget_hit = false;
};

/// The period-guessing heuristic: canonical sizes of E_c, autocorrelation
/// of their increments, and state-set intersection between E_c and
/// E_{c+period}.
std::optional<PeriodSearchResult> period_search(const Element& g, const Element& h,
                                                int c_max, int window = 16,
                                                int size_budget = 100'000);

}  // namespace autg
