#include "trsta/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "trsta/automaton.hpp"
#include "trsta/completion.hpp"
#include "trsta/decide.hpp"

namespace trsta::cli {

namespace {

struct Options {
  std::string trs;
  std::string trs2;
  std::string language;
  std::string automaton;
  std::string from;
  std::string to;
  std::string g = "g";
  std::string sharp = "#";
  std::size_t bound = 10000;
  bool trace = false;
  bool confluent = false;
  std::string out;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
  return value;
}

Trs load_trs(const std::string& path, const char* flag) { return parse_trs(read_file(required(path, flag))); }

TermSet load_language(const Options& o) { return parse_language(read_file(required(o.language, "--language"))); }

Term load_term(const std::string& text, const char* flag) { return parse_term(required(text, flag)); }

/// `name` or `name:arity`.
Symbol parse_symbol(const std::string& text, std::size_t default_arity, const char* flag) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) return Symbol{text, default_arity};
  const std::string name = text.substr(0, colon);
  const std::string digits = text.substr(colon + 1);
  if (name.empty() || digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(std::string("bad symbol for ") + flag + ": '" + text + "'");
  }
  return Symbol{name, static_cast<std::size_t>(std::stoul(digits))};
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Yes: return kExitYes;
    case Verdict::No: return kExitNo;
    case Verdict::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int report(const Decision& d, std::ostream& out, std::ostream& err) {
  out << verdict_name(d.verdict) << '\n';
  if (!std::holds_alternative<std::monostate>(d.witness)) out << "witness: " << d.witness_text() << '\n';
  if (!d.reason.empty()) err << "reason: " << d.reason << '\n';
  return exit_code(d.verdict);
}

int report(RelOrder r, std::ostream& out) {
  out << rel_order_name(r) << '\n';
  return r == RelOrder::Unknown ? kExitUnknown : kExitYes;
}

void write_terms(const TermSet& terms, std::ostream& out) {
  for (const auto& t : terms) out << t.str() << '\n';
}

void write_trace(const SaturationResult& s, std::ostream& out) {
  out << "% E\n";
  for (const auto& t : s.e_terms) out << "% " << t.str() << '\n';
  out << "% D\n";
  for (const auto& t : s.d_terms) out << "% " << t.str() << '\n';
  out << "% S0\n";
  for (const auto& line : s.initial.transition_lines()) out << "% " << line << '\n';
  for (std::size_t i = 1; i <= s.rounds.size(); ++i) {
    out << "% round " << i << '\n';
    for (const auto& line : s.round_lines(i)) out << "% " << line << '\n';
  }
  out << "% M = " << s.fixpoint_round() << '\n';
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Trs r = load_trs(o.trs, "--trs");
  const auto c = classify(r);
  const std::vector<std::pair<const char*, bool>> rows = {
      {"left-linear", c.left_linear}, {"linear", c.linear},           {"ground", c.ground},
      {"monadic", c.monadic},         {"right-ground", c.right_ground}, {"murg", c.murg},
      {"collapse-free", c.collapse_free}, {"gsm", c.gsm}};
  for (const auto& [name, value] : rows) {
    out << name << std::string(15 - std::string_view(name).size(), ' ') << (value ? "true" : "false") << '\n';
  }
  if (!c.gsm) {
    const auto g = is_gsm(r);
    if (g.violation) out << "witness        " << g.violation->to_string() << '\n';
    if (g.variable_lhs) out << "witness        variable left-hand side\n";
  }
  return kExitYes;
}

int cmd_descendants(const Options& o, std::ostream& out) {
  const Trs r = load_trs(o.trs, "--trs");
  const TermSet l = load_language(o);
  const SaturationResult s = saturate(r, l);
  if (o.trace) write_trace(s, out);
  out << format_bta(trim(eliminate_lambda(s.automaton)));
  return kExitYes;
}

int cmd_member(const Options& o, std::ostream& out) {
  const Term t = load_term(o.to, "--to");
  std::optional<Bta> a;
  if (!o.automaton.empty()) {
    a = parse_bta(read_file(o.automaton));
  } else {
    const Trs r = load_trs(o.trs, "--trs");
    a = descendants(r, load_language(o));
  }
  const bool yes = accepts(*a, t);
  out << (yes ? "YES" : "NO") << '\n';
  return yes ? kExitYes : kExitNo;
}

int cmd_closure(const Options& o, std::ostream& out) {
  const Trs r = load_trs(o.trs, "--trs");
  const ClosureResult c = bounded_closure(r, load_language(o), o.bound);
  write_terms(c.terms, out);
  out << (c.complete ? "% complete" : "% incomplete") << '\n';
  return c.complete ? kExitYes : kExitUnknown;
}

int dispatch(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  DecideOptions opts;
  opts.bound = o.bound;
  if (command == "classify") return cmd_classify(o, out);
  if (command == "descendants") return cmd_descendants(o, out);
  if (command == "member") return cmd_member(o, out);
  if (command == "closure") return cmd_closure(o, out);
  if (command == "reachable") {
    return report(reachable(load_trs(o.trs, "--trs"), load_term(o.from, "--from"), load_term(o.to, "--to"), opts),
                  out, err);
  }
  if (command == "joinable") {
    return report(joinable(load_trs(o.trs, "--trs"), load_term(o.from, "--from"), load_term(o.to, "--to"), opts),
                  out, err);
  }
  if (command == "convertible") {
    return report(convertible_confluent(load_trs(o.trs, "--trs"), load_term(o.from, "--from"),
                                        load_term(o.to, "--to"), o.confluent, opts),
                  out, err);
  }
  if (command == "local-confluence") return report(locally_confluent(load_trs(o.trs, "--trs"), opts), out, err);
  if (command == "include") {
    const Trs r = load_trs(o.trs, "--trs");
    const Trs s = load_trs(o.trs2, "--trs2");
    return report(relation_included(r, s, opts), out, err);
  }
  if (command == "compare") {
    return report(compare(load_trs(o.trs, "--trs"), load_trs(o.trs2, "--trs2"), opts), out);
  }
  if (command == "compare-thue") {
    return report(compare_thue(load_trs(o.trs, "--trs"), load_trs(o.trs2, "--trs2"), opts), out);
  }
  if (command == "minimal") return report(minimal(load_trs(o.trs, "--trs"), opts), out, err);
  if (command == "ground-include") {
    const Trs r = load_trs(o.trs, "--trs");
    const Trs s = load_trs(o.trs2, "--trs2");
    return report(ground_relation_included(r, s, parse_symbol(o.g, 1, "--g"), parse_symbol(o.sharp, 0, "--sharp"),
                                           opts),
                  out, err);
  }
  if (command == "ground-minimal") {
    return report(ground_minimal(load_trs(o.trs, "--trs"), parse_symbol(o.g, 1, "--g"),
                                 parse_symbol(o.sharp, 0, "--sharp"), opts),
                  out, err);
  }
  throw UsageError("unknown command '" + command + "'");
}

const std::vector<std::pair<const char*, const char*>> kCommands = {
    {"classify", "print the syntactic classes of --trs"},
    {"descendants", "automaton for R*(L) from --trs and --language"},
    {"member", "is --to in R*(L) (or in the language of --automaton)"},
    {"reachable", "--from ->*_R --to"},
    {"joinable", "do --from and --to have a common descendant"},
    {"convertible", "--from <->*_R --to for a confluent R (see --confluent)"},
    {"local-confluence", "are all critical pairs of --trs joinable"},
    {"include", "is ->*_{--trs} contained in ->*_{--trs2}"},
    {"compare", "relation of ->*_{--trs} to ->*_{--trs2}"},
    {"compare-thue", "relation of <->*_{--trs} to <->*_{--trs2}"},
    {"minimal", "is no rule of --trs simulated by the others"},
    {"ground-include", "is ->*_{--trs} contained in ->*_{--trs2} on ground terms"},
    {"ground-minimal", "left-to-right minimality on ground terms"},
    {"closure", "bounded forward closure of --language under --trs"},
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Descendant automata and decision procedures for term rewrite systems", "trsta"};
  app.require_subcommand(1, 1);
  Options o;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--trs", o.trs, "rule file");
    sub->add_option("--trs2", o.trs2, "second rule file");
    sub->add_option("--language", o.language, "ground terms, one per line");
    sub->add_option("--automaton", o.automaton, "automaton file (member)");
    sub->add_option("--from", o.from, "source term");
    sub->add_option("--to", o.to, "target term");
    sub->add_option("--g", o.g, "encoding symbol, name[:arity]");
    sub->add_option("--sharp", o.sharp, "encoding constant");
    sub->add_option("--bound", o.bound, "closure bound outside the decidable class");
    sub->add_flag("--trace", o.trace, "dump E, D and each round (descendants)");
    sub->add_flag("--confluent", o.confluent, "assert that the system is confluent");
    sub->add_option("--out", o.out, "write the result to a file");
    subs[name] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  std::ostringstream buffer;
  int code = kExitYes;
  try {
    code = dispatch(command, o, buffer, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::UnsupportedTrs ? kExitUnknown : kExitData;
  }

  if (o.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "cannot write '" << o.out << "'\n";
      return kExitData;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace trsta::cli
