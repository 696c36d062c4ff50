#include "autg/zoo.hpp"

#include <map>
#include <string>

namespace autg {

namespace {
using T = MealyMachine::Transition;
}

MealyMachine grigorchuk() {
  return MealyMachine("grigorchuk", 2, {"a", "b", "c", "d", "e"},
                      std::vector<T>{
                          {"a", 1, "e", 2},
                          {"a", 2, "e", 1},
                          {"b", 1, "a", 1},
                          {"b", 2, "c", 2},
                          {"c", 1, "a", 1},
                          {"c", 2, "d", 2},
                          {"d", 1, "e", 1},
                          {"d", 2, "b", 2},
                          {"e", 1, "e", 1},
                          {"e", 2, "e", 2},
                      },
                      "e");
}

MealyMachine sushchanskyy() {
  // state r doubles every prefix of ones; s flips every letter
  return MealyMachine("sushchanskyy", 2, {"r", "s"},
                      std::vector<T>{
                          {"r", 1, "r", 2},
                          {"r", 2, "s", 2},
                          {"s", 1, "s", 2},
                          {"s", 2, "s", 1},
                      });
}

MealyMachine bsv() {
  return MealyMachine("bsv", 2, {"t", "t_inv", "m", "m_inv", "e"},
                      std::vector<T>{
                          {"t", 1, "e", 2},
                          {"t", 2, "t", 1},
                          {"t_inv", 1, "t_inv", 2},
                          {"t_inv", 2, "e", 1},
                          {"m", 1, "e", 2},
                          {"m", 2, "m_inv", 1},
                          {"m_inv", 1, "m", 2},
                          {"m_inv", 2, "e", 1},
                          {"e", 1, "e", 1},
                          {"e", 2, "e", 2},
                      },
                      "e");
}

MealyMachine gupta_sidki() {
  return MealyMachine("gupta_sidki", 3, {"t", "t_inv", "a", "a_inv", "e"},
                      std::vector<T>{
                          {"t", 1, "a", 1},
                          {"t", 2, "a_inv", 2},
                          {"t", 3, "t", 3},
                          {"t_inv", 1, "a_inv", 1},
                          {"t_inv", 2, "a", 2},
                          {"t_inv", 3, "t_inv", 3},
                          {"a", 1, "e", 2},
                          {"a", 2, "e", 3},
                          {"a", 3, "e", 1},
                          {"a_inv", 1, "e", 3},
                          {"a_inv", 2, "e", 1},
                          {"a_inv", 3, "e", 2},
                          {"e", 1, "e", 1},
                          {"e", 2, "e", 2},
                          {"e", 3, "e", 3},
                      },
                      "e");
}

MealyMachine affine_machine(int n, const std::vector<std::vector<long long>>& A,
                            const std::vector<long long>& w) {
  if (n < 1 || n > 12) throw Error("affine dimension out of range 1..12");
  if (A.size() != static_cast<size_t>(n) || w.size() != static_cast<size_t>(n))
    throw Error("matrix/vector dimensions do not match n");
  for (const auto& row : A)
    if (row.size() != static_cast<size_t>(n))
      throw Error("matrix rows must have length n");
  const int p = 1 << n;

  using Vec = std::vector<long long>;
  std::map<Vec, int> index;
  std::vector<Vec> offsets;
  auto intern = [&](const Vec& v) {
    auto [it, fresh] = index.emplace(v, static_cast<int>(offsets.size()));
    if (fresh) offsets.push_back(v);
    return it->second;
  };
  intern(w);

  std::vector<int> next_tab;
  std::vector<Letter> out_tab;
  // on digit vector x: output (Ax + carry) mod 2, carry' = (Ax + carry - out)/2
  for (size_t s = 0; s < offsets.size(); ++s) {
    if (offsets.size() > 100000) throw Error("affine carry set failed to close");
    for (int letter = 0; letter < p; ++letter) {
      Vec carry = offsets[s];
      Vec value(n);
      for (int i = 0; i < n; ++i) {
        long long acc = carry[i];
        for (int j = 0; j < n; ++j)
          acc += A[i][j] * ((letter >> j) & 1);
        value[i] = acc;
      }
      int out_letter = 0;
      Vec next_carry(n);
      for (int i = 0; i < n; ++i) {
        long long bit = ((value[i] % 2) + 2) % 2;
        out_letter |= static_cast<int>(bit) << i;
        next_carry[i] = (value[i] - bit) / 2;
      }
      next_tab.push_back(intern(next_carry));
      out_tab.push_back(out_letter + 1);
    }
  }

  std::vector<std::string> names(offsets.size());
  std::optional<int> identity;
  for (size_t s = 0; s < offsets.size(); ++s) {
    std::string nm = "w";
    for (int i = 0; i < n; ++i) {
      long long c = offsets[s][i];
      if (i) nm += "_";
      nm += c < 0 ? "m" + std::to_string(-c) : std::to_string(c);
    }
    names[s] = nm;
  }
  MealyMachine machine("affine", p, std::move(names), std::move(next_tab),
                       std::move(out_tab), std::nullopt);
  for (int s = 0; s < machine.state_count(); ++s)
    if (machine.state_is_identity(s)) {
      identity = s;
      break;
    }
  if (!identity) return machine;
  return MealyMachine(machine.name(), p, machine.state_names(),
                      machine.next_table(), machine.out_table(), identity);
}

std::vector<std::string> zoo_keys() {
  return {"grigorchuk", "sushchanskyy", "bsv", "gupta_sidki"};
}

MealyMachine zoo_machine(const std::string& key) {
  if (key == "grigorchuk") return grigorchuk();
  if (key == "sushchanskyy") return sushchanskyy();
  if (key == "bsv") return bsv();
  if (key == "gupta_sidki" || key == "guptasidki") return gupta_sidki();
  throw Error("unknown zoo machine: " + key +
              " (known: grigorchuk, sushchanskyy, bsv, gupta_sidki)");
}

}  // namespace autg
