#include "autg/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace autg {

ParseError::ParseError(std::string message, size_t line_no)
    : Error(line_no ? "line " + std::to_string(line_no) + ": " + message
                    : message),
      line(line_no) {}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

long long parse_int(const std::string& s, size_t line) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
}

}  // namespace

ParsedAutomaton parse_machine(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  size_t line_no = 0;

  std::optional<std::string> name;
  std::optional<int> alphabet;
  std::vector<std::string> states;
  std::optional<std::string> identity;
  std::optional<std::string> initial;
  std::map<std::string, int> state_index;
  // (state, letter) -> line of first definition, to report duplicates
  std::map<std::pair<int, Letter>, size_t> seen;
  std::vector<MealyMachine::Transition> transitions;

  while (std::getline(in, raw)) {
    ++line_no;
    auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    if (head == "automaton") {
      if (tokens.size() != 2) throw ParseError("automaton takes one name", line_no);
      name = tokens[1];
    } else if (head == "alphabet") {
      if (tokens.size() != 2) throw ParseError("alphabet takes one size", line_no);
      long long p = parse_int(tokens[1], line_no);
      if (p < 1 || p > 1'000'000) throw ParseError("alphabet size out of range", line_no);
      alphabet = static_cast<int>(p);
    } else if (head == "states") {
      if (tokens.size() < 2) throw ParseError("states needs at least one name", line_no);
      for (size_t i = 1; i < tokens.size(); ++i) {
        if (!state_index.emplace(tokens[i], static_cast<int>(states.size())).second)
          throw ParseError("duplicate state name: " + tokens[i], line_no);
        states.push_back(tokens[i]);
      }
    } else if (head == "identity") {
      if (tokens.size() != 2) throw ParseError("identity takes one state", line_no);
      identity = tokens[1];
      if (!state_index.count(*identity))
        throw ParseError("unknown state: " + *identity, line_no);
    } else if (head == "initial") {
      if (tokens.size() != 2) throw ParseError("initial takes one state", line_no);
      initial = tokens[1];
      if (!state_index.count(*initial))
        throw ParseError("unknown state: " + *initial, line_no);
    } else if (tokens.size() == 5 && tokens[2] == "->") {
      if (!alphabet) throw ParseError("alphabet must come before transitions", line_no);
      auto from = state_index.find(tokens[0]);
      if (from == state_index.end())
        throw ParseError("unknown state: " + tokens[0], line_no);
      auto to = state_index.find(tokens[3]);
      if (to == state_index.end())
        throw ParseError("unknown state: " + tokens[3], line_no);
      long long x = parse_int(tokens[1], line_no);
      long long y = parse_int(tokens[4], line_no);
      if (x < 1 || x > *alphabet)
        throw ParseError("letter " + tokens[1] + " out of range 1.." +
                             std::to_string(*alphabet),
                         line_no);
      if (y < 1 || y > *alphabet)
        throw ParseError("letter " + tokens[4] + " out of range 1.." +
                             std::to_string(*alphabet),
                         line_no);
      auto key = std::make_pair(from->second, static_cast<Letter>(x));
      auto [it, fresh] = seen.emplace(key, line_no);
      if (!fresh)
        throw ParseError("duplicate transition for state " + tokens[0] +
                             ", letter " + tokens[1] + " (first at line " +
                             std::to_string(it->second) + ")",
                         line_no);
      transitions.push_back({tokens[0], static_cast<Letter>(x), tokens[3],
                             static_cast<Letter>(y)});
    } else {
      throw ParseError("unrecognized line: '" + raw + "'", line_no);
    }
  }
  if (!name) throw ParseError("missing 'automaton' header", 0);
  if (!alphabet) throw ParseError("missing 'alphabet' header", 0);
  if (states.empty()) throw ParseError("missing 'states' line", 0);
  for (const auto& [st, idx] : state_index)
    for (Letter x = 1; x <= *alphabet; ++x)
      if (!seen.count({idx, x}))
        throw ParseError(
            "missing transition for state " + st + ", letter " + std::to_string(x),
            0);
  return {MealyMachine(*name, *alphabet, std::move(states), transitions, identity),
          initial};
}

std::string serialize_machine(const MealyMachine& m,
                              const std::optional<std::string>& initial) {
  std::ostringstream out;
  out << "automaton " << m.name() << "\n";
  out << "alphabet " << m.alphabet() << "\n";
  out << "states";
  for (const auto& s : m.state_names()) out << " " << s;
  out << "\n";
  if (m.identity_state())
    out << "identity " << m.state_name(*m.identity_state()) << "\n";
  for (int q = 0; q < m.state_count(); ++q)
    for (Letter x = 1; x <= m.alphabet(); ++x) {
      auto [t, y] = m.step(q, x);
      out << m.state_name(q) << " " << x << " -> " << m.state_name(t) << " " << y
          << "\n";
    }
  if (initial) out << "initial " << *initial << "\n";
  return out.str();
}

std::string serialize_element(const Element& e, const std::string& name) {
  return serialize_machine(e.machine(name), "s0");
}

Element parse_element(std::string_view text) {
  ParsedAutomaton parsed = parse_machine(text);
  if (!parsed.initial) throw ParseError("element file needs an 'initial' line", 0);
  return canonicalize(parsed.machine, parsed.machine.index_of(*parsed.initial));
}

// --- generator words ----------------------------------------------------------

namespace {

struct WordParser {
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos + 1), 0);
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool reserved(char c) const {
    return c == '^' || c == '*' || c == '(' || c == ')' || c == '[' || c == ']' ||
           c == ',';
  }
  std::optional<char> peek() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    return text[pos];
  }

  GenWord parse_word() {
    std::vector<GenWord> factors;
    factors.push_back(parse_factor());
    for (;;) {
      auto c = peek();
      if (!c) break;
      if (*c == '*') {
        ++pos;
        factors.push_back(parse_factor());
      } else if (*c == '(' || *c == '[' || starts_ident(*c)) {
        factors.push_back(parse_factor());
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors[0] : GenWord::product(std::move(factors));
  }

  bool starts_ident(char c) const {
    return !reserved(c) && !std::isspace(static_cast<unsigned char>(c)) &&
           !std::isdigit(static_cast<unsigned char>(c)) && c != '-';
  }

  GenWord parse_factor() {
    GenWord base = parse_primary();
    for (;;) {
      auto c = peek();
      if (!c || *c != '^') break;
      ++pos;
      auto nxt = peek();
      if (!nxt) fail("exponent expected after '^'");
      if (*nxt == '(') {
        ++pos;
        GenWord by = parse_word();
        expect(')');
        base = GenWord::conj(std::move(base), std::move(by));
      } else {
        base = GenWord::pow(std::move(base), parse_int());
      }
    }
    return base;
  }

  GenWord parse_primary() {
    auto c = peek();
    if (!c) fail("unexpected end of word");
    if (*c == '(') {
      ++pos;
      GenWord w = parse_word();
      expect(')');
      return w;
    }
    if (*c == '[') {
      ++pos;
      GenWord u = parse_word();
      expect(',');
      GenWord v = parse_word();
      expect(']');
      return GenWord::comm(std::move(u), std::move(v));
    }
    if (!starts_ident(*c)) fail(std::string("unexpected character '") + *c + "'");
    size_t start = pos;
    while (pos < text.size() && !reserved(text[pos]) &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    return GenWord::generator(std::string(text.substr(start, pos - start)));
  }

  long long parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start || (pos == start + 1 && text[start] == '-'))
      fail("integer exponent expected");
    return std::stoll(std::string(text.substr(start, pos - start)));
  }

  void expect(char c) {
    auto got = peek();
    if (!got || *got != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
};

}  // namespace

GenWord parse_word(std::string_view text) {
  WordParser p{text};
  if (!p.peek()) return GenWord();  // empty word
  GenWord w = p.parse_word();
  if (p.peek()) p.fail("trailing input");
  return w;
}

TreeWord parse_tree_word(std::string_view text, int alphabet) {
  TreeWord w;
  std::string s(text);
  if (s.empty()) return w;
  if (alphabet <= 9 && s.find(',') == std::string::npos) {
    for (size_t i = 0; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("tree words over small alphabets are digit strings", 0);
      int x = s[i] - '0';
      if (x < 1 || x > alphabet)
        throw ParseError("letter " + std::to_string(x) + " out of range 1.." +
                             std::to_string(alphabet),
                         0);
      w.push_back(x);
    }
    return w;
  }
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    long long x = parse_int(tok, 0);
    if (x < 1 || x > alphabet)
      throw ParseError("letter " + tok + " out of range", 0);
    w.push_back(static_cast<Letter>(x));
  }
  return w;
}

std::string format_tree_word(const TreeWord& v, int alphabet) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (alphabet > 9 && i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

// --- certificates --------------------------------------------------------------

Certificate parse_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  size_t line_no = 0;
  Certificate cert;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    if (head == "certificate") {
      header = true;
    } else if (head == "machine") {
      if (tokens.size() != 2) throw ParseError("machine takes one reference", line_no);
      cert.machine_ref = tokens[1];
    } else if (head == "period") {
      if (tokens.size() != 2) throw ParseError("period takes one integer", line_no);
      cert.period = static_cast<int>(parse_int(tokens[1], line_no));
    } else if (head == "word") {
      if (tokens.size() != 2) throw ParseError("word takes one tree word", line_no);
      cert.word_text = tokens[1];
    } else if (head == "component") {
      auto pos = line.find("component");
      std::string rest = line.substr(pos + 9);
      size_t b = rest.find_first_not_of(" \t");
      if (b == std::string::npos) throw ParseError("component needs a word", line_no);
      size_t e = rest.find_last_not_of(" \t");
      cert.component_words.push_back(rest.substr(b, e - b + 1));
    } else {
      throw ParseError("unrecognized certificate line: '" + raw + "'", line_no);
    }
  }
  if (!header) throw ParseError("missing 'certificate' header", 0);
  if (cert.machine_ref.empty()) throw ParseError("missing 'machine' line", 0);
  if (cert.period < 1) throw ParseError("missing or invalid 'period'", 0);
  if (cert.word_text.empty()) throw ParseError("missing 'word' line", 0);
  if (cert.component_words.empty()) throw ParseError("missing 'component' lines", 0);
  return cert;
}

std::string serialize_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "certificate\n";
  out << "machine " << c.machine_ref << "\n";
  out << "period " << c.period << "\n";
  out << "word " << c.word_text << "\n";
  for (const auto& w : c.component_words) out << "component " << w << "\n";
  return out.str();
}

std::vector<std::string> builtin_certificate_names() {
  return {"grigorchuk-A0", "guptasidki-A0", "guptasidki-A0-printed"};
}

Certificate builtin_certificate(const std::string& name) {
  if (name == "grigorchuk-A0") {
    Certificate c;
    c.machine_ref = "zoo:grigorchuk";
    c.period = 9;
    c.word_text = "111112";
    c.component_words = {
        "[a,b]^-2*([a,b]^2)^(c*a)",
        "(([a,b]^2)^(c*a))^-1*[a,b]^2*([a,b]^2)^(c*a*b)",
        "(([a,b]^2)^(c*a*b))^-1*[a,b]^-2",
        "[a,b]^2",
    };
    return c;
  }
  if (name == "guptasidki-A0") {
    // the a-conjugation orbit of [a^-1, t]; the tuple commonly printed for
    // this certificate garbles the second and third entries and does not
    // replay (see guptasidki-A0-printed)
    Certificate c;
    c.machine_ref = "zoo:gupta_sidki";
    c.period = 4;
    c.word_text = "122";
    c.component_words = {
        "[a^-1,t]",
        "([a^-1,t])^(a)",
        "([a^-1,t])^(a^-1)",
    };
    return c;
  }
  if (name == "guptasidki-A0-printed") {
    Certificate c;
    c.machine_ref = "zoo:gupta_sidki";
    c.period = 4;
    c.word_text = "122";
    c.component_words = {
        "[a^-1,t]",
        "([a,t])^(a)",
        "[t^-1,a^-1]",
    };
    return c;
  }
  throw Error("unknown builtin certificate: " + name);
}

}  // namespace autg
