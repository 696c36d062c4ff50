#include "autg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "autg/decision.hpp"
#include "autg/engel.hpp"
#include "autg/io.hpp"
#include "autg/zoo.hpp"

namespace autg {

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

MealyMachine load_machine(const std::string& ref) {
  if (ref.rfind("zoo:", 0) == 0) return zoo_machine(ref.substr(4));
  std::ifstream in(ref);
  if (!in) throw Error("cannot open machine file: " + ref);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str()).machine;
}

std::vector<GenWord> default_generators(const MealyMachine& m) {
  std::vector<GenWord> gens;
  for (int q = 0; q < m.state_count(); ++q)
    if (!m.state_is_identity(q)) gens.push_back(GenWord::generator(m.state_name(q)));
  return gens;
}

std::vector<GenWord> parse_generator_list(const MealyMachine& m,
                                          const std::string& spec) {
  if (spec.empty()) return default_generators(m);
  std::vector<GenWord> gens;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) gens.push_back(parse_word(tok));
  return gens;
}

std::string verdict_name(EngelVerdict::Kind k) {
  switch (k) {
    case EngelVerdict::Engel: return "engel";
    case EngelVerdict::NotEngel: return "not-engel";
    default: return "inconclusive";
  }
}

struct Options {
  std::string machine;
  std::string word_u, word_v, word_h;
  std::string algo = "all";
  std::string metric = "word";
  std::string generators;
  std::string builtin, file;
  std::vector<std::string> components;
  long long power_budget = 256;
  long long node_budget = 100'000;
  long long work_budget = 50'000'000;
  long long size_budget = 10'000;
  long long tuple_budget = 1'000'000;
  int depth_budget = 32;
  int radius = 4;
  int n = 2;
  int R = 1;
  int cmax = 32;
  int window = 16;
};

int cmd_validate(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  ValidationReport r = validate(m);
  out << "machine: " << m.name() << "\n";
  out << "states: " << m.state_count() << "\n";
  out << "alphabet: " << m.alphabet() << "\n";
  out << "complete: " << (r.complete ? "yes" : "no") << "\n";
  out << "invertible: " << (r.machine_invertible ? "yes" : "no") << "\n";
  std::string names;
  for (int q : r.invertible_states)
    names += (names.empty() ? "" : " ") + m.state_name(q);
  out << "invertible-states: " << names << "\n";
  names.clear();
  for (int q : r.identity_states)
    names += (names.empty() ? "" : " ") + m.state_name(q);
  out << "identity-states: " << names << "\n";
  if (r.declared_identity) {
    out << "declared-identity: " << m.state_name(*r.declared_identity) << "\n";
    out << "declared-identity-ok: " << (r.declared_identity_ok ? "yes" : "no")
        << "\n";
  }
  return r.valid() ? kYes : kNo;
}

int cmd_act(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  GenWord w = parse_word(o.word_u);
  TreeWord v = parse_tree_word(o.word_v, m.alphabet());
  TreeWord image;
  if (w.has_inverse_factors())
    image = element_of(m, w).act(v);
  else
    image = act(m, w, v);
  out << "image: " << format_tree_word(image, m.alphabet()) << "\n";
  return kYes;
}

int cmd_canon(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  Element g = element_of(m, parse_word(o.word_u));
  out << "states: " << g.size() << "\n";
  out << "identity: " << (g.is_identity() ? "yes" : "no") << "\n";
  out << serialize_element(g);
  return kYes;
}

int cmd_wp(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  GenWord u = parse_word(o.word_u);
  GenWord v = parse_word(o.word_v);
  std::vector<std::pair<std::string, bool>> verdicts;
  if (o.algo == "linear" || o.algo == "all")
    verdicts.emplace_back("linear", word_problem_linear(m, u, v));
  if (o.algo == "canonical" || o.algo == "all")
    verdicts.emplace_back("canonical",
                          word_problem_canonical(element_of(m, u), element_of(m, v)));
  if (o.algo == "contracting" || o.algo == "all") {
    NucleusBudget nb;
    nb.depth_budget = o.depth_budget;
    NucleusReport report = nucleus(m, nb);
    if (report.verdict() == NucleusVerdict::Nuclear) {
      verdicts.emplace_back("contracting", word_problem_contracting(m, u, v, report));
    } else if (o.algo == "contracting") {
      out << "verdict: inconclusive\n";
      out << "reason: automaton not certified nuclear\n";
      return kInconclusive;
    }
  }
  for (const auto& [name, eq] : verdicts)
    out << name << ": " << (eq ? "equal" : "different") << "\n";
  bool first = verdicts.front().second;
  for (const auto& [name, eq] : verdicts)
    if (eq != first) {
      out << "verdict: disagreement\n";
      return kUsage;  // oracle disagreement is an internal error
    }
  out << "verdict: " << (first ? "equal" : "different") << "\n";
  return first ? kYes : kNo;
}

int cmd_order(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  Element g = element_of(m, parse_word(o.word_u));
  OrderBudget budget;
  budget.power_budget = o.power_budget;
  budget.size_budget = static_cast<int>(o.size_budget);
  OrderResult r = order_of(g, budget);
  switch (r.kind) {
    case OrderResult::Order:
      out << "verdict: order\n";
      out << "order: " << r.order << "\n";
      return kYes;
    case OrderResult::Cycle:
      out << "verdict: cycle\n";
      out << "m: " << r.m << "\n";
      out << "n: " << r.n << "\n";
      return kYes;
    default:
      out << "verdict: budget-exceeded\n";
      return kInconclusive;
  }
}

int cmd_nucleus(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  NucleusBudget budget;
  budget.depth_budget = o.depth_budget;
  budget.size_budget = static_cast<int>(o.size_budget);
  NucleusReport r = nucleus(m, budget);
  if (r.verdict() == NucleusVerdict::Nuclear) {
    out << "verdict: nuclear\n";
    out << "nucleus-size: " << r.nucleus().size() << "\n";
    out << "contraction-depth: " << r.contraction_depth() << "\n";
    int i = 0;
    for (const Element& e : r.nucleus())
      out << "nucleus-element-" << i++ << "-states: " << e.size() << "\n";
    return kYes;
  }
  out << "verdict: inconclusive\n";
  out << "explored: " << r.elements_explored() << "\n";
  return kInconclusive;
}

int cmd_bounded(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  bool b = is_bounded(m);
  out << "bounded: " << (b ? "yes" : "no") << "\n";
  auto counts = activity_counts(m, 8);
  out << "activity-counts:";
  for (size_t c : counts) out << " " << c;
  out << "\n";
  return b ? kYes : kNo;
}

int cmd_ball(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  BallData b = ball(m, parse_generator_list(m, o.generators), o.radius);
  out << "radius: " << b.radius << "\n";
  out << "sizes:";
  for (size_t s : b.sizes) out << " " << s;
  out << "\n";
  return kYes;
}

int cmd_engel_pair(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  Element g = element_of(m, parse_word(o.word_u));
  Element h = element_of(m, parse_word(o.word_v));
  EngelBudget budget;
  budget.node_budget = static_cast<size_t>(o.node_budget);
  budget.size_budget = static_cast<int>(o.size_budget);
  budget.work_budget = o.work_budget;
  budget.order_budget.power_budget = o.power_budget;
  EngelVerdict v = engel_pair_check(g, h, budget);
  out << "verdict: " << verdict_name(v.kind) << "\n";
  out << "nodes-explored: " << v.nodes_explored << "\n";
  if (v.kind == EngelVerdict::Engel) out << "c-bound: " << v.c_bound << "\n";
  if (v.kind == EngelVerdict::NotEngel) {
    out << "cycle-length: " << v.cycle.size() << "\n";
    for (size_t i = 0; i < v.cycle.size(); ++i) {
      out << "cycle-" << i << "-sizes:";
      for (const Element& e : v.cycle[i]) out << " " << e.size();
      out << "\n";
    }
  }
  if (!v.note.empty()) out << "note: " << v.note << "\n";
  switch (v.kind) {
    case EngelVerdict::Engel: return kYes;
    case EngelVerdict::NotEngel: return kNo;
    default: return kInconclusive;
  }
}

int cmd_engel_exponent(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  int radius = std::max(o.radius, o.R);
  BallData b = ball(m, parse_generator_list(m, o.generators), radius);
  NormKind norm = o.metric == "size" ? NormKind::StateCount : NormKind::WordLength;
  ExponentCheckResult r = engel_exponent_check(
      m, o.n, o.R, b, static_cast<size_t>(o.tuple_budget), norm);
  switch (r.kind) {
    case ExponentCheckResult::AllEngel:
      out << "verdict: all-engel\n";
      return kYes;
    case ExponentCheckResult::NotEngelWitness:
      out << "verdict: witness-cycle\n";
      out << "cycle-length: " << r.cycle.size() << "\n";
      return kNo;
    default:
      out << "verdict: inconclusive\n";
      if (!r.note.empty()) out << "note: " << r.note << "\n";
      return kInconclusive;
  }
}

int cmd_engel_witness(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  Element h = element_of(m, parse_word(o.word_h));
  std::vector<Element> tuple;
  for (const auto& w : o.components) tuple.push_back(element_of(m, parse_word(w)));
  if (tuple.empty()) throw Error("witness needs --component words");
  WitnessSpec spec = make_witness_spec(h, std::move(tuple));
  Element g = build_witness(spec);
  out << "orbit-length: " << spec.orbit.size() << "\n";
  out << "orbit-depth: " << spec.orbit[0].size() << "\n";
  out << "witness-states: " << g.size() << "\n";
  out << serialize_element(g, "witness");
  return kYes;
}

int cmd_engel_certify(const Options& o, std::ostream& out) {
  Certificate cert;
  if (!o.builtin.empty()) {
    cert = builtin_certificate(o.builtin);
  } else if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw Error("cannot open certificate file: " + o.file);
    std::stringstream buf;
    buf << in.rdbuf();
    cert = parse_certificate(buf.str());
  } else {
    throw Error("certify needs --builtin or --file");
  }
  MealyMachine m = load_machine(o.machine.empty() ? cert.machine_ref : o.machine);
  std::vector<Element> A0;
  for (const auto& w : cert.component_words)
    A0.push_back(element_of(m, parse_word(w)));
  TreeWord word = parse_tree_word(cert.word_text, m.alphabet());
  bool ok = verify_certificate(A0, cert.period, word);
  out << "period: " << cert.period << "\n";
  out << "word: " << cert.word_text << "\n";
  out << "components: " << A0.size() << "\n";
  out << "verified: " << (ok ? "yes" : "no") << "\n";
  return ok ? kYes : kNo;
}

int cmd_engel_search(const Options& o, std::ostream& out) {
  MealyMachine m = load_machine(o.machine);
  Element g = element_of(m, parse_word(o.word_u));
  Element h = element_of(m, parse_word(o.word_v));
  auto r = period_search(g, h, o.cmax, o.window, static_cast<int>(o.size_budget));
  if (!r) {
    out << "verdict: no-period\n";
    return kInconclusive;
  }
  out << "period: " << r->period << "\n";
  out << "sizes:";
  for (int s : r->sizes) out << " " << s;
  out << "\n";
  if (r->c >= 0) {
    out << "common-at: " << r->c << "\n";
    out << "common-count: " << r->common_states.size() << "\n";
    out << "smallest-common-states: " << r->common_states.front().size() << "\n";
    return kYes;
  }
  out << "common-at: none\n";
  return kInconclusive;
}

int cmd_zoo(const Options& o, std::ostream& out) {
  if (o.machine.empty()) {
    for (const auto& k : zoo_keys()) out << k << "\n";
    return kYes;
  }
  out << serialize_machine(zoo_machine(o.machine));
  return kYes;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact computation in automaton (semi)groups", "autg"};
  app.set_help_flag("--help", "print help");  // frees -h and the name h
  app.require_subcommand(1);
  Options o;

  auto add_machine = [&](CLI::App* cmd) {
    cmd->add_option("machine", o.machine, "zoo:<key> or an automaton file")
        ->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a machine");
  add_machine(validate_cmd);

  auto* act_cmd = app.add_subcommand("act", "apply a word of states to a tree word");
  add_machine(act_cmd);
  act_cmd->add_option("word", o.word_u)->required();
  act_cmd->add_option("treeword", o.word_v)->required();

  auto* canon_cmd = app.add_subcommand("canon", "canonical form of a word");
  add_machine(canon_cmd);
  canon_cmd->add_option("word", o.word_u)->required();

  auto* wp_cmd = app.add_subcommand("wp", "word problem");
  add_machine(wp_cmd);
  wp_cmd->add_option("u", o.word_u)->required();
  wp_cmd->add_option("v", o.word_v)->required();
  wp_cmd->add_option("--algo", o.algo, "linear|canonical|contracting|all")
      ->check(CLI::IsMember({"linear", "canonical", "contracting", "all"}));

  auto* order_cmd = app.add_subcommand("order", "order of an element");
  add_machine(order_cmd);
  order_cmd->add_option("word", o.word_u)->required();
  order_cmd->add_option("--budget", o.power_budget, "power budget");
  order_cmd->add_option("--size-budget", o.size_budget);

  auto* nucleus_cmd = app.add_subcommand("nucleus", "nuclear check");
  add_machine(nucleus_cmd);
  nucleus_cmd->add_option("--depth", o.depth_budget);
  nucleus_cmd->add_option("--size-budget", o.size_budget);

  auto* bounded_cmd = app.add_subcommand("bounded", "bounded-automaton check");
  add_machine(bounded_cmd);

  auto* ball_cmd = app.add_subcommand("ball", "growth ball");
  add_machine(ball_cmd);
  ball_cmd->add_option("--radius", o.radius);
  ball_cmd->add_option("--generators", o.generators, "comma-separated words");

  auto* engel = app.add_subcommand("engel", "Engel property tools");
  engel->require_subcommand(1);

  auto* pair_cmd = engel->add_subcommand("pair", "is (g,h) an Engel pair");
  pair_cmd->set_help_flag("--help", "print help");
  add_machine(pair_cmd);
  pair_cmd->add_option("g", o.word_u)->required();
  pair_cmd->add_option("h", o.word_v)->required();
  pair_cmd->add_option("--node-budget", o.node_budget);
  pair_cmd->add_option("--size-budget", o.size_budget);
  pair_cmd->add_option("--order-budget", o.power_budget);
  pair_cmd->add_option("--work-budget", o.work_budget);

  auto* exp_cmd = engel->add_subcommand("exponent", "all elements of exponent n");
  add_machine(exp_cmd);
  exp_cmd->add_option("n", o.n)->required();
  exp_cmd->add_option("R", o.R)->required();
  exp_cmd->add_option("--radius", o.radius, "ball radius (defaults to R)");
  exp_cmd->add_option("--generators", o.generators);
  exp_cmd->add_option("--tuple-budget", o.tuple_budget);
  exp_cmd->add_option("--metric", o.metric, "word|size norm for B(R)")
      ->check(CLI::IsMember({"word", "size"}));

  auto* wit_cmd = engel->add_subcommand("witness", "build the wedge-product witness");
  wit_cmd->set_help_flag("--help", "print help");
  add_machine(wit_cmd);
  wit_cmd->add_option("h", o.word_h)->required();
  wit_cmd->add_option("--component", o.components, "tuple component words")
      ->required();

  auto* cert_cmd = engel->add_subcommand("certify", "replay a periodic certificate");
  cert_cmd->add_option("machine", o.machine, "override the certificate machine");
  cert_cmd->add_option("--builtin", o.builtin);
  cert_cmd->add_option("--file", o.file);

  auto* search_cmd = engel->add_subcommand("search", "period heuristic for E_c");
  search_cmd->set_help_flag("--help", "print help");
  add_machine(search_cmd);
  search_cmd->add_option("g", o.word_u)->required();
  search_cmd->add_option("h", o.word_v)->required();
  search_cmd->add_option("--cmax", o.cmax);
  search_cmd->add_option("--window", o.window);
  search_cmd->add_option("--size-budget", o.size_budget);

  auto* zoo_cmd = app.add_subcommand("zoo", "print a built-in machine");
  zoo_cmd->add_option("key", o.machine);

  std::vector<std::string> argv = args;
  try {
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kYes;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*act_cmd) return cmd_act(o, out);
    if (*canon_cmd) return cmd_canon(o, out);
    if (*wp_cmd) return cmd_wp(o, out);
    if (*order_cmd) return cmd_order(o, out);
    if (*nucleus_cmd) return cmd_nucleus(o, out);
    if (*bounded_cmd) return cmd_bounded(o, out);
    if (*ball_cmd) return cmd_ball(o, out);
    if (*pair_cmd) return cmd_engel_pair(o, out);
    if (*exp_cmd) return cmd_engel_exponent(o, out);
    if (*wit_cmd) return cmd_engel_witness(o, out);
    if (*cert_cmd) return cmd_engel_certify(o, out);
    if (*search_cmd) return cmd_engel_search(o, out);
    if (*zoo_cmd) return cmd_zoo(o, out);
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kInconclusive;
  } catch (const ParseError& e) {
    err << "format error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "no subcommand\n";
  return kUsage;
}

}  // namespace autg
