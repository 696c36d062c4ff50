#include "autg/words.hpp"

#include <algorithm>

namespace autg {

namespace {

std::vector<GenWord::Factor> invert_factors(const std::vector<GenWord::Factor>& fs) {
  std::vector<GenWord::Factor> inv;
  inv.reserve(fs.size());
  for (auto it = fs.rbegin(); it != fs.rend(); ++it)
    inv.emplace_back(it->first, -it->second);
  return inv;
}

void append(std::vector<GenWord::Factor>& dst, const std::vector<GenWord::Factor>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

GenWord GenWord::generator(std::string name) {
  GenWord w;
  w.text_ = name;
  w.factors_.emplace_back(std::move(name), +1);
  return w;
}

GenWord GenWord::product(std::vector<GenWord> parts) {
  GenWord w;
  for (auto& part : parts) {
    if (!w.text_.empty() && !part.text_.empty()) w.text_ += "*";
    w.text_ += part.text_;
    append(w.factors_, part.factors_);
  }
  return w;
}

GenWord GenWord::operator*(const GenWord& rhs) const {
  return product({*this, rhs});
}

GenWord GenWord::pow(GenWord base, long long exponent) {
  GenWord w;
  bool atom = base.factors_.size() == 1 && base.factors_[0].second == 1 &&
              base.text_ == base.factors_[0].first;
  w.text_ = (atom ? base.text_ : "(" + base.text_ + ")") + "^" +
            std::to_string(exponent);
  const auto once = exponent >= 0 ? base.factors_ : invert_factors(base.factors_);
  unsigned long long reps =
      exponent >= 0 ? exponent : -static_cast<unsigned long long>(exponent);
  for (unsigned long long i = 0; i < reps; ++i) append(w.factors_, once);
  return w;
}

GenWord GenWord::conj(GenWord base, GenWord by) {
  GenWord w;
  bool atom = base.factors_.size() == 1 && base.factors_[0].second == 1 &&
              base.text_ == base.factors_[0].first;
  w.text_ = (atom ? base.text_ : "(" + base.text_ + ")") + "^(" + by.text_ + ")";
  w.factors_ = invert_factors(by.factors_);
  append(w.factors_, base.factors_);
  append(w.factors_, by.factors_);
  return w;
}

GenWord GenWord::comm(GenWord u, GenWord v) {
  GenWord w;
  w.text_ = "[" + u.text_ + "," + v.text_ + "]";
  w.factors_ = invert_factors(u.factors_);
  append(w.factors_, invert_factors(v.factors_));
  append(w.factors_, u.factors_);
  append(w.factors_, v.factors_);
  return w;
}

bool GenWord::has_inverse_factors() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.second < 0; });
}

std::vector<std::pair<int, int>> resolve_word(const MealyMachine& m,
                                              const GenWord& w) {
  std::vector<std::pair<int, int>> resolved;
  resolved.reserve(w.factors().size());
  for (const auto& [name, sign] : w.factors()) {
    int idx = m.index_of(name);
    if (idx == -1) throw Error("unknown generator: " + name);
    if (sign < 0 && !m.state_invertible(idx))
      throw NotInvertibleError("inverse of non-invertible generator: " + name);
    resolved.emplace_back(idx, sign);
  }
  return resolved;
}

TreeWord act(const MealyMachine& m, const GenWord& w, const TreeWord& v) {
  TreeWord image = v;
  for (const auto& [idx, sign] : resolve_word(m, w)) {
    if (sign < 0)
      throw Error("act requires non-negative powers; use element_of for inverses");
    image = act_state(m, idx, image);
  }
  return image;
}

}  // namespace autg
