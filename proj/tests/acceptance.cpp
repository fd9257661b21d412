// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: acceptance CLI_PATH [--known-failure N]...
//
// A known failure still prints FAIL but does not change the exit status.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

#include "support.hpp"
#include "trsta/completion.hpp"
#include "trsta/decide.hpp"

using namespace testing;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (notes.size() < 8) notes.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

Term tower(const char* base, std::size_t n) {
  Term t = T(base);
  for (std::size_t i = 0; i < n; ++i) t = Term::app(Symbol{"f", 1}, {t});
  return t;
}

// Criterion 1

Check worked_example_pipeline() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const Trs r = fixture_trs("ex5");
  const TermSet l = fixture_lang("ex5");
  c.expect(compute_e(r) == Ts({"#"}), "E differs");
  c.expect(compute_d(r, l) == Ts({"#", "f(#)", "g(#,#,#)", "f(f(#))", "f(g(#,#,#))", "f(f(g(#,#,#)))",
                                  "g(g(#,#,#),#,g(#,#,#))", "f(g(g(#,#,#),#,g(#,#,#)))"}),
           "D differs");
  const SaturationResult s = saturate(r, l);
  c.expect(as_set(s.initial.transition_lines()) ==
               std::set<std::string>{"# -> ⟨#⟩", "f(⟨#⟩) -> ⟨f(#)⟩", "f(⟨f(#)⟩) -> ⟨f(f(#))⟩",
                                     "f(⟨f(g(#,#,#))⟩) -> ⟨f(f(g(#,#,#)))⟩", "f(⟨g(#,#,#)⟩) -> ⟨f(g(#,#,#))⟩",
                                     "f(⟨g(g(#,#,#),#,g(#,#,#))⟩) -> ⟨f(g(g(#,#,#),#,g(#,#,#)))⟩",
                                     "g(⟨#⟩,⟨#⟩,⟨#⟩) -> ⟨g(#,#,#)⟩",
                                     "g(⟨g(#,#,#)⟩,⟨#⟩,⟨g(#,#,#)⟩) -> ⟨g(g(#,#,#),#,g(#,#,#))⟩"},
           "S0 differs");
  c.expect(s.rounds.size() == 3 && s.fixpoint_round() == 2, "M != 2");
  c.expect(as_set(s.round_lines(1)) ==
               std::set<std::string>{"⟨f(f(#))⟩ -> ⟨f(f(g(#,#,#)))⟩", "⟨f(g(#,#,#))⟩ -> ⟨g(#,#,#)⟩"},
           "round 1 differs");
  c.expect(as_set(s.round_lines(2)) ==
               std::set<std::string>{"⟨f(f(#))⟩ -> ⟨f(g(#,#,#))⟩", "⟨f(f(#))⟩ -> ⟨g(#,#,#)⟩"},
           "round 2 differs");
  c.expect(s.round_lines(3).empty(), "round 3 not empty");
  const double t = seconds_since(start);
  c.expect(t < 1.0, "took " + std::to_string(t) + " s");
  return c;
}

// Criterion 2

Check worked_example_language() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  BtaBuilder b3;
  const StateId sharp = b3.state("⟨#⟩");
  const StateId f = b3.state("⟨f(#)⟩");
  const StateId g = b3.state("⟨g(#,#,#)⟩");
  b3.add(Symbol{"#", 0}, {}, sharp);
  b3.add(Symbol{"g", 3}, {sharp, sharp, sharp}, g);
  b3.add(Symbol{"f", 1}, {sharp}, f);
  b3.add(Symbol{"f", 1}, {f}, g);
  b3.add(Symbol{"f", 1}, {g}, g);
  b3.set_final(g);
  const Bta d = descendants(fixture_trs("ex5"), fixture_lang("ex5"));
  c.expect(equivalent(d, b3.build()), "not equivalent to B3");
  TermSet expected;
  for (std::size_t n = 0; n <= 7; ++n) expected.insert(tower("g(#,#,#)", n));
  for (std::size_t n = 2; n <= 8; ++n) expected.insert(tower("#", n));
  c.expect(enumerate(d, 8) == expected, "enumeration up to height 8 differs");
  const double t = seconds_since(start);
  c.expect(t < 5.0, "took " + std::to_string(t) + " s");
  return c;
}

// Criterion 3

/// Number of terms accepted by a deterministic λ-free automaton; nullopt if infinite.
std::optional<std::size_t> count_accepted(const Bta& a) {
  const Bta useful = trim(a);
  const std::size_t n = useful.state_count();
  std::vector<std::optional<std::size_t>> count(n);
  // Kleene iteration: a state's count is final once all argument counts are.
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId q = 0; q < n; ++q) {
      if (count[q]) continue;
      std::size_t total = 0;
      bool ready = true;
      for (const auto& t : useful.transitions()) {
        if (t.target != q) continue;
        std::size_t prod = 1;
        for (StateId p : t.args) {
          if (!count[p]) {
            ready = false;
            break;
          }
          prod *= *count[p];
        }
        if (!ready) break;
        total += prod;
      }
      if (ready) {
        count[q] = total;
        changed = true;
      }
    }
  }
  std::size_t total = 0;
  for (StateId q : useful.finals()) {
    if (!count[q]) return std::nullopt;  // on a cycle
    total += *count[q];
  }
  return total;
}

Term mutate(std::mt19937& rng, const Term& t, const std::vector<Symbol>& sigma) {
  const auto ps = positions(t);
  const Position& p = ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
  return replace_at(t, p, random_ground(rng, sigma, 2));
}

/// Number of ground terms of height ≤ h, saturating at `cap`.
std::size_t universe_size(const std::vector<Symbol>& sigma, std::size_t h, std::size_t cap) {
  std::size_t n = 0;
  for (const auto& s : sigma) n += s.arity == 0;
  for (std::size_t k = 1; k <= h; ++k) {
    std::size_t next = 0;
    for (const auto& s : sigma) {
      std::size_t prod = 1;
      for (std::size_t i = 0; i < s.arity; ++i) prod = std::min(cap, prod * n);
      next = std::min(cap, next + prod);
    }
    n = next;
  }
  return n;
}

Check fundamental_automata() {
  Check c;
  std::mt19937 rng(20240601);
  const std::vector<Symbol> pool = {{"a", 0}, {"b", 0}, {"c", 0}, {"f", 1}, {"g", 2}, {"h", 3}, {"k", 1}};
  for (int round = 0; round < 100; ++round) {
    // 2..5 symbols, always at least one constant.
    std::vector<Symbol> sigma = {pool[0]};
    const std::size_t extra = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::vector<Symbol> rest(pool.begin() + 1, pool.end());
    std::shuffle(rest.begin(), rest.end(), rng);
    sigma.insert(sigma.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(extra));
    RankedAlphabet alphabet;
    for (const auto& s : sigma) alphabet.add(s);

    TermSet l;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    for (std::size_t i = 0; i < 4 * n && l.size() < n; ++i) l.insert(random_ground(rng, sigma, 4));
    std::size_t h = 0;
    for (const auto& t : l) h = std::max(h, t.height());

    const Bta a = fundamental_bta(l, alphabet);
    const std::string tag = "language #" + std::to_string(round);
    c.expect(a.is_deterministic(), tag + ": not deterministic");
    for (const auto& t : l) c.expect(accepts(a, t), tag + ": rejects " + t.str());
    // Deterministic: |L(A)| = |L| together with L ⊆ L(A) gives L(A) = L.
    const auto size = count_accepted(a);
    c.expect(size && *size == l.size(), tag + ": accepts more terms than the language");
    c.expect(enumerate(a, h) == l, tag + ": enumeration differs");
    for (int i = 0; i < 50; ++i) {
      const Term m = mutate(rng, *std::next(l.begin(), static_cast<std::ptrdiff_t>(rng() % l.size())), sigma);
      c.expect(accepts(a, m) == (l.count(m) > 0), tag + ": wrong answer on " + m.str());
    }
    // Exhaustive check where the universe is small.
    if (universe_size(sigma, h, 1000000) < 20000) {
      for (const auto& t : all_terms(sigma, h)) {
        c.expect(accepts(a, t) == (l.count(t) > 0), tag + ": wrong answer on " + t.str());
      }
    }
  }
  return c;
}

// Criteria 4 and 5

Check oracle_differential() {
  Check c;
  c.expect(oracle_fixtures().size() >= 10, "fewer than 10 fixtures");
  for (const auto& name : oracle_fixtures()) {
    const Trs r = fixture_trs(name);
    const TermSet l = fixture_lang(name);
    c.expect(is_left_linear_gsm(r), name + ": not left-linear GSM");
    const ClosureResult closure = bounded_closure(r, l, 100000);
    c.expect(closure.complete, name + ": closure incomplete");
    TermSet oracle;
    c.expect(naive_closure(r, l, 100000, oracle) && oracle == closure.terms, name + ": closures disagree");
    c.expect(equivalent(descendants(r, l), fundamental_bta(closure.terms)), name + ": languages differ");
  }
  return c;
}

Check closed_under_rewriting() {
  Check c;
  std::vector<std::string> names = oracle_fixtures();
  names.push_back("ex5");
  for (const auto& name : names) {
    const Trs r = fixture_trs(name);
    const Bta d = descendants(r, fixture_lang(name));
    for (const auto& t : enumerate(d, 6)) {
      for (const auto& s : naive_successors(r, t)) {
        c.expect(accepts(d, s), name + ": " + t.str() + " -> " + s.str() + " escapes");
      }
    }
  }
  return c;
}

// Criterion 6

Check decision_fixtures() {
  Check c;
  const Trs r = fixture_trs("ex5");
  c.expect(reachable(r, T("g(#,#,#)"), T("f(f(f(#)))")).yes(), "g(#,#,#) ->* f(f(f(#))) not found");
  c.expect(reachable(r, T("g(#,#,#)"), T("f(#)")).no(), "g(#,#,#) ->* f(#) not refuted");
  const Decision lc = locally_confluent(r);
  c.expect(lc.no(), "local confluence not refuted");
  c.expect(lc.witness_text() == "(f(f(x1)), f(f(f(g(x1,#,x1)))))", "witness " + lc.witness_text());
  c.expect(minimal(r).yes(), "not minimal");
  c.expect(compare(r, r) == RelOrder::Equal, "compare(R,R) != EQUAL");
  c.expect(compare(fixture_trs("ab"), fixture_trs("abc")) == RelOrder::Subset, "{a->b} vs {a->b,b->c} != SUBSET");
  return c;
}

// Criterion 7

Trs random_trs(std::mt19937& rng) {
  static const std::vector<Symbol> sigma = {{"a", 0}, {"b", 0}, {"f", 1}, {"g", 2}};
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  std::vector<Rule> rules;
  while (rules.size() < n) {
    Term lhs = random_term(rng, sigma, 2, 2);
    if (lhs.is_var()) continue;
    lhs = normalize_vars(lhs);
    const std::size_t vars = lhs.max_var();
    Term rhs = random_term(rng, sigma, 2, vars);
    rules.push_back({lhs, rhs});
  }
  return Trs::validate(rules);
}

Check classifier_consistency() {
  Check c;
  for (const char* name : {"murg", "dup", "chain", "diamond", "rground", "swap", "comm", "collapse", "bool",
                           "proj", "mixed", "murg_dup"}) {
    const Trs r = fixture_trs(name);
    if (!classify(r).murg) continue;
    const GsmResult g = is_gsm(r);
    c.expect(g.gsm, std::string(name) + ": murg but not GSM, " +
                        (g.violation ? g.violation->to_string() : std::string("variable lhs")));
  }
  const GsmResult lt = is_gsm(fixture_trs("lt"));
  c.expect(!lt.gsm && lt.violation && lt.violation->image.str() == "f(x1)", "LT system not rejected");
  const GsmResult fpo = is_gsm(fixture_trs("fpo"));
  c.expect(!fpo.gsm && fpo.violation && fpo.violation->image.str() == "d(x1)", "FPO system not rejected");

  std::mt19937 rng(7);
  std::size_t murg_not_gsm = 0;
  for (int i = 0; i < 1000; ++i) {
    const Trs r = random_trs(rng);
    const auto k = classify(r);
    const std::string tag = "{" + r.to_string() + "}";
    c.expect(!k.linear || k.left_linear, tag + ": linear but not left-linear");
    c.expect(!k.ground || k.right_ground, tag + ": ground but not right-ground");
    c.expect(!(k.monadic || k.right_ground) || k.murg, tag + ": monadic or right-ground but not murg");
    if (k.murg && !k.gsm) {
      ++murg_not_gsm;
      const auto v = is_gsm(r).violation;
      c.expect(false, tag + ": murg but not GSM, " + (v ? v->to_string() : std::string()));
    }
  }
  if (murg_not_gsm > 0) c.notes.push_back(std::to_string(murg_not_gsm) + " of 1000 random systems are murg but not GSM");
  return c;
}

// Criterion 8

std::string run_captured(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Check cli_determinism(const std::string& cli) {
  Check c;
  std::vector<std::string> names = oracle_fixtures();
  for (const char* extra : {"ex5", "lt", "fpo", "murg", "murg_dup", "ab", "abc"}) names.emplace_back(extra);
  std::size_t runs = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    const std::string trs = quote(fixture_path(name + ".trs"));
    const std::string trs2 = quote(fixture_path(names[(i + 1) % names.size()] + ".trs"));
    const Trs r = fixture_trs(name);
    const std::string lang_file = fixture_path(name + ".lang");
    const bool has_lang = std::ifstream(lang_file).good();
    const std::string lang = has_lang ? quote(lang_file) : quote(fixture_path("ex5.lang"));
    const std::string from = quote(has_lang ? fixture_lang(name).begin()->str() : r.rules()[0].lhs.str());
    const std::string to = quote(r.rules()[0].rhs.str());
    const std::string pair = " --trs " + trs + " --from " + from + " --to " + to + " --bound 500";
    const std::vector<std::string> commands = {
        "classify --trs " + trs,
        "descendants --trace --trs " + trs + " --language " + lang,
        "member --trs " + trs + " --language " + lang + " --to " + to,
        "reachable" + pair,
        "joinable" + pair,
        "convertible" + pair,
        "convertible --confluent" + pair,
        "local-confluence --bound 500 --trs " + trs,
        "include --bound 500 --trs " + trs + " --trs2 " + trs2,
        "compare --bound 500 --trs " + trs + " --trs2 " + trs2,
        "compare-thue --bound 500 --trs " + trs + " --trs2 " + trs2,
        "minimal --bound 500 --trs " + trs,
        "ground-include --bound 500 --g gq --trs " + trs + " --trs2 " + trs2,
        "ground-minimal --bound 500 --g gq --trs " + trs,
        "closure --bound 500 --trs " + trs + " --language " + lang,
    };
    for (const auto& cmd : commands) {
      int s1 = 0;
      int s2 = 0;
      const std::string full = quote(cli) + " " + cmd;
      const std::string a = run_captured(full, s1);
      const std::string b = run_captured(full, s2);
      ++runs;
      c.expect(s1 != -1 && a == b && s1 == s2, name + ": output differs for " + cmd);
    }
  }
  c.notes.push_back(std::to_string(runs) + " commands run twice");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance CLI_PATH [--known-failure N]...\n";
    return 64;
  }
  const std::string cli = argv[1];
  std::set<std::size_t> known;
  for (int i = 2; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) != "--known-failure") {
      std::cerr << "unknown argument " << argv[i] << '\n';
      return 64;
    }
    known.insert(std::stoul(argv[i + 1]));
  }
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"worked example: E, D, S0 and rounds", worked_example_pipeline},
      {"worked example: descendant language", worked_example_language},
      {"fundamental automata of random languages", fundamental_automata},
      {"descendants equal the brute-force closure", oracle_differential},
      {"descendant sets are closed under rewriting", closed_under_rewriting},
      {"decision fixtures", decision_fixtures},
      {"classifier consistency", classifier_consistency},
      {"CLI determinism", [&] { return cli_determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    const bool excused = !c.ok && known.count(i + 1);
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first
              << (excused ? " (known failure)" : "") << std::endl;
    for (const auto& n : c.notes) std::cout << "    " << n << '\n';
    if (!c.ok && !excused) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
