#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace autg {

using Letter = int;                    // letters are 1..p
using TreeWord = std::vector<Letter>;  // finite word over the alphabet, possibly empty

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : Error {
  using Error::Error;
};
struct NotInvertibleError : Error {
  using Error::Error;
};

struct PowerBudget {
  int max_alphabet = 4096;
  long long max_states = 1'000'000;
};

/// A complete letter-to-letter transducer Phi: X x Q -> Q x X. Every
/// (state, letter) pair has exactly one transition; this is enforced at
/// construction. States act on words over {1..p} by reading input labels
/// and emitting output labels; invertible states generate groups of tree
/// automorphisms, general states only a semigroup.
class MealyMachine {
 public:
  struct Transition {
    std::string from;
    Letter input;
    std::string to;
    Letter output;
  };

  MealyMachine(std::string name, int alphabet, std::vector<std::string> states,
               const std::vector<Transition>& transitions,
               const std::optional<std::string>& identity = std::nullopt);

  /// Table form: next_tab/out_tab are state-major, row q at [q*p, (q+1)*p).
  MealyMachine(std::string name, int alphabet, std::vector<std::string> states,
               std::vector<int> next_tab, std::vector<Letter> out_tab,
               std::optional<int> identity);

  const std::string& name() const { return name_; }
  int alphabet() const { return alphabet_; }
  int state_count() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::string& state_name(int q) const { return states_.at(q); }
  std::optional<int> identity_state() const { return identity_; }

  /// Index of a named state, -1 when unknown.
  int index_of(std::string_view state) const;

  int next(int q, Letter x) const { return next_tab_[cell(q, x)]; }
  Letter output(int q, Letter x) const { return out_tab_[cell(q, x)]; }

  /// One transition: returns (q@x, x^{pi(q)}). Throws on bad state/letter.
  std::pair<int, Letter> step(int q, Letter x) const;

  /// The output row of q is a permutation of 1..p.
  bool state_invertible(int q) const;
  bool invertible() const;

  /// q loops to itself and copies every letter.
  bool state_is_identity(int q) const;

  const std::vector<int>& next_table() const { return next_tab_; }
  const std::vector<Letter>& out_table() const { return out_tab_; }

 private:
  int cell(int q, Letter x) const;
  void check_tables() const;

  std::string name_;
  int alphabet_ = 1;
  std::vector<std::string> states_;
  std::vector<int> next_tab_;
  std::vector<Letter> out_tab_;
  std::optional<int> identity_;
};

struct ValidationReport {
  bool complete = true;  // always true for a constructed machine
  std::vector<std::pair<std::string, Letter>> missing;
  std::vector<int> invertible_states;
  bool machine_invertible = false;
  std::optional<int> declared_identity;
  bool declared_identity_ok = true;  // declared state satisfies the identity laws
  std::vector<int> identity_states;  // states structurally acting as identity
  bool valid() const { return complete && declared_identity_ok; }
};

/// Diagnostic pass: completeness, per-state invertibility, identity detection.
ValidationReport validate(const MealyMachine& m);

/// Image of a word under one state, reading the letters through the machine.
TreeWord act_state(const MealyMachine& m, int q, const TreeWord& v);

/// The composite automaton Phi_{m,n}: stateset Q^n, alphabet X^m.
MealyMachine power_product(const MealyMachine& machine, int m, int n,
                           const PowerBudget& budget = {});

/// Machine of formal inverse states: next(q', y) = (q@x)' and out(q', y) = x
/// whenever out(q, x) = y. Requires every state invertible.
MealyMachine invert_machine(const MealyMachine& m);

/// Returns a machine that surely has an identity state (appending a fresh
/// one when none is present), together with its index.
std::pair<MealyMachine, int> with_identity(const MealyMachine& m);

/// Machine containing both the original states and their formal inverses
/// (only for the invertible ones); used to evaluate words with negative
/// exponents. inverse_index[q] is the index of q^-1, or -1.
struct DoubledMachine {
  MealyMachine machine;
  std::vector<int> inverse_index;
};
DoubledMachine double_with_inverses(const MealyMachine& m);

}  // namespace autg
