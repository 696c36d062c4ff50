#pragma once

#include <random>
#include <string>
#include <vector>

#include "autg/element.hpp"
#include "autg/io.hpp"
#include "autg/mealy.hpp"
#include "autg/words.hpp"

namespace autg::testing {

inline std::vector<TreeWord> words_up_to(int p, int max_len) {
  std::vector<TreeWord> all{{}};
  std::vector<TreeWord> level{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<TreeWord> next;
    for (const TreeWord& w : level)
      for (Letter x = 1; x <= p; ++x) {
        TreeWord e = w;
        e.push_back(x);
        next.push_back(e);
      }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

inline std::vector<TreeWord> words_of_length(int p, int len) {
  std::vector<TreeWord> level{{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<TreeWord> next;
    for (const TreeWord& w : level)
      for (Letter x = 1; x <= p; ++x) {
        TreeWord e = w;
        e.push_back(x);
        next.push_back(e);
      }
    level = std::move(next);
  }
  return level;
}

inline TreeWord random_tree_word(std::mt19937& rng, int p, int len) {
  TreeWord w(len);
  std::uniform_int_distribution<int> dist(1, p);
  for (int i = 0; i < len; ++i) w[i] = dist(rng);
  return w;
}

/// Random positive word over the machine states.
inline GenWord random_state_word(std::mt19937& rng, const MealyMachine& m,
                                 int max_len) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> gen_dist(0, m.state_count() - 1);
  int len = len_dist(rng);
  std::vector<GenWord> parts;
  for (int i = 0; i < len; ++i)
    parts.push_back(GenWord::generator(m.state_name(gen_dist(rng))));
  return GenWord::product(parts);
}

inline GenWord w(const std::string& text) { return parse_word(text); }

/// Two elements act identically on every word up to the given depth.
inline bool act_equal_to_depth(const Element& a, const Element& b, int depth) {
  for (const TreeWord& v : words_up_to(a.alphabet(), depth))
    if (a.act(v) != b.act(v)) return false;
  return true;
}

inline MealyMachine one_state_identity(int p = 2) {
  std::vector<MealyMachine::Transition> ts;
  for (Letter x = 1; x <= p; ++x) ts.push_back({"e", x, "e", x});
  return MealyMachine("trivial", p, {"e"}, ts, "e");
}

}  // namespace autg::testing
