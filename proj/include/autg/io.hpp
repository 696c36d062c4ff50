#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autg/element.hpp"
#include "autg/mealy.hpp"
#include "autg/words.hpp"

namespace autg {

struct ParseError : Error {
  ParseError(std::string message, size_t line);
  size_t line;  // 1-based; 0 when not tied to a line
};

/// Line-oriented automaton format, `#` starts a comment:
///
///   automaton <ident>
///   alphabet <p>
///   states <ident>+
///   identity <ident>          (optional)
///   <state> <letter> -> <state> <letter>
///   initial <ident>           (optional, for serialized elements)
///
/// Every (state, letter) pair must appear exactly once.
struct ParsedAutomaton {
  MealyMachine machine;
  std::optional<std::string> initial;
};

ParsedAutomaton parse_machine(std::string_view text);

/// Serializes states in declared order, transitions sorted by (state,
/// letter); parse(serialize(m)) == m bit-exactly.
std::string serialize_machine(const MealyMachine& m,
                              const std::optional<std::string>& initial = {});

/// Canonical element as a machine named by `name`, states s0, s1, ... in
/// BFS order, with an `initial s0` line.
std::string serialize_element(const Element& e, const std::string& name = "element");
Element parse_element(std::string_view text);

/// Word grammar: product by `*` or juxtaposition of parenthesized parts,
/// `^k` integer powers, `^(word)` conjugation, `[u,v]` commutators.
/// Examples: `[a,b]^2`, `([a,b]^2)^(c*a)`, `(b*a)^4*c`.
GenWord parse_word(std::string_view text);

/// Tree words on the command line: digit string when p <= 9 (e.g. 111112),
/// comma-separated integers otherwise.
TreeWord parse_tree_word(std::string_view text, int alphabet);
std::string format_tree_word(const TreeWord& v, int alphabet);

/// Replayable Engel certificate:
///
///   certificate
///   machine <zoo:key or path>
///   period <k>
///   word <tree word>
///   component <generator word>     (one line per tuple component)
struct Certificate {
  std::string machine_ref;
  int period = 0;
  std::string word_text;
  std::vector<std::string> component_words;
};

Certificate parse_certificate(std::string_view text);
std::string serialize_certificate(const Certificate& c);

/// Built-in certificates (`grigorchuk-A0`, `guptasidki-A0`).
std::vector<std::string> builtin_certificate_names();
Certificate builtin_certificate(const std::string& name);

}  // namespace autg
