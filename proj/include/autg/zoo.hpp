#pragma once

#include <string>
#include <vector>

#include "autg/mealy.hpp"

namespace autg {

/// The five-state automaton of Grigorchuk's group: states a, b, c, d, e
/// over the binary alphabet, with e the identity.
MealyMachine grigorchuk();

/// The two-state non-invertible automaton generating a semigroup of
/// intermediate growth; state r is not invertible.
MealyMachine sushchanskyy();

/// The Brunner-Sidki-Vieira automaton: states t, t_inv, m, m_inv, e.
/// t is the binary odometer (+1 on 2-adic integers, least significant
/// digit first).
MealyMachine bsv();

/// The Gupta-Sidki automaton on three letters: states t, t_inv, a, a_inv, e.
MealyMachine gupta_sidki();

/// Transducer of the affine map v -> Av + w on n-tuples of 2-adic
/// integers. The alphabet is {0,1}^n encoded as letters 1..2^n (component
/// i of a letter L is bit i-1 of L-1); words read least significant digit
/// first. States are the carry offsets reachable from w.
MealyMachine affine_machine(int n, const std::vector<std::vector<long long>>& A,
                            const std::vector<long long>& w);

std::vector<std::string> zoo_keys();
MealyMachine zoo_machine(const std::string& key);  // throws on unknown key

}  // namespace autg
