#pragma once

#include <string>
#include <utility>
#include <vector>

#include "autg/mealy.hpp"

namespace autg {

/// A formal product of generators with integer powers, conjugation
/// superscripts and commutator brackets. Expansion to a flat sequence of
/// (generator name, +-1) factors is computed eagerly; whether an inverse
/// factor is legal is only decided against a concrete machine.
class GenWord {
 public:
  using Factor = std::pair<std::string, int>;  // (generator, +1 or -1)

  GenWord() = default;  // empty word

  static GenWord generator(std::string name);
  static GenWord product(std::vector<GenWord> parts);
  static GenWord pow(GenWord base, long long exponent);
  static GenWord conj(GenWord base, GenWord by);  // by^-1 * base * by
  static GenWord comm(GenWord u, GenWord v);      // u^-1 v^-1 u v

  GenWord operator*(const GenWord& rhs) const;

  const std::vector<Factor>& factors() const { return factors_; }
  bool has_inverse_factors() const;
  const std::string& text() const { return text_; }
  bool empty() const { return factors_.empty(); }
  size_t length() const { return factors_.size(); }

 private:
  std::vector<Factor> factors_;
  std::string text_;
};

/// Resolve factors to state indices of m; signed entries keep the factor
/// sign. Throws on unknown generators, and on inverse factors whenever
/// the named state is not invertible.
std::vector<std::pair<int, int>> resolve_word(const MealyMachine& m,
                                              const GenWord& w);

/// Right action of a word of states on a tree word, leftmost factor first:
/// v^{gh} = (v^g)^h. Inverse factors are rejected here; use element_of for
/// group elements.
TreeWord act(const MealyMachine& m, const GenWord& w, const TreeWord& v);

}  // namespace autg
