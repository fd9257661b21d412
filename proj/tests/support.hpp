#pragma once

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trsta/automaton.hpp"
#include "trsta/rewriting.hpp"

namespace testing {

using namespace trsta;

inline Term T(std::string_view text) { return parse_term(text); }

inline Trs R(std::initializer_list<const char*> rules) {
  std::string text;
  for (const char* r : rules) text += std::string(r) + "\n";
  return parse_trs(text);
}

inline TermSet Ts(std::initializer_list<const char*> terms) {
  TermSet out;
  for (const char* t : terms) out.insert(T(t));
  return out;
}

inline std::string fixture_path(const std::string& name) { return std::string(TRSTA_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Trs fixture_trs(const std::string& name) { return parse_trs(read_fixture(name + ".trs")); }
inline TermSet fixture_lang(const std::string& name) { return parse_language(read_fixture(name + ".lang")); }

/// Systems with a language, all left-linear GSM with a finite descendant set.
inline const std::vector<std::string>& oracle_fixtures() {
  static const std::vector<std::string> names = {"dup",  "chain", "diamond", "rground", "swap",  "comm",
                                                 "collapse", "bool", "proj", "shrink", "mixed"};
  return names;
}

inline Term random_ground(std::mt19937& rng, const std::vector<Symbol>& alphabet, std::size_t max_height) {
  std::vector<Symbol> leaves;
  for (const auto& s : alphabet) {
    if (s.arity == 0) leaves.push_back(s);
  }
  std::uniform_int_distribution<std::size_t> coin(0, 2);
  if (max_height == 0 || coin(rng) == 0) {
    return Term::app(leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)], {});
  }
  const Symbol& s = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
  std::vector<Term> kids;
  for (std::size_t i = 0; i < s.arity; ++i) kids.push_back(random_ground(rng, alphabet, max_height - 1));
  return Term::app(s, std::move(kids));
}

inline Term random_term(std::mt19937& rng, const std::vector<Symbol>& alphabet, std::size_t max_height,
                        std::size_t vars) {
  std::uniform_int_distribution<std::size_t> coin(0, 3);
  if (vars > 0 && (max_height == 0 || coin(rng) == 0)) {
    return Term::var(std::uniform_int_distribution<std::size_t>(1, vars)(rng));
  }
  if (max_height == 0) return random_ground(rng, alphabet, 0);
  const Symbol& s = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
  std::vector<Term> kids;
  for (std::size_t i = 0; i < s.arity; ++i) kids.push_back(random_term(rng, alphabet, max_height - 1, vars));
  return Term::app(s, std::move(kids));
}

// Independent rewriting oracle: hand-rolled matching and replacement.

inline bool naive_match(const Term& p, const Term& t, std::map<std::size_t, Term>& binding) {
  if (p.is_var()) {
    auto [it, fresh] = binding.emplace(p.var_index(), t);
    return fresh || it->second == t;
  }
  if (t.is_var() || !(p.symbol() == t.symbol())) return false;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (!naive_match(p.children()[i], t.children()[i], binding)) return false;
  }
  return true;
}

inline Term naive_instantiate(const Term& t, const std::map<std::size_t, Term>& binding) {
  if (t.is_var()) {
    auto it = binding.find(t.var_index());
    return it == binding.end() ? t : it->second;
  }
  std::vector<Term> kids;
  for (const auto& c : t.children()) kids.push_back(naive_instantiate(c, binding));
  return Term::app(t.symbol(), std::move(kids));
}

inline TermSet naive_successors(const Trs& r, const Term& t) {
  TermSet out;
  for (const auto& rule : r.rules()) {
    std::map<std::size_t, Term> binding;
    if (naive_match(rule.lhs, t, binding)) out.insert(naive_instantiate(rule.rhs, binding));
  }
  if (t.is_var()) return out;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    for (const auto& s : naive_successors(r, t.children()[i])) {
      std::vector<Term> kids(t.children().begin(), t.children().end());
      kids[i] = s;
      out.insert(Term::app(t.symbol(), std::move(kids)));
    }
  }
  return out;
}

/// Worklist closure; returns false if more than `limit` terms appear.
inline bool naive_closure(const Trs& r, const TermSet& start, std::size_t limit, TermSet& out) {
  out = start;
  std::vector<Term> work(start.begin(), start.end());
  while (!work.empty()) {
    Term t = work.back();
    work.pop_back();
    for (const auto& s : naive_successors(r, t)) {
      if (out.insert(s).second) {
        if (out.size() > limit) return false;
        work.push_back(s);
      }
    }
  }
  return true;
}

/// All ground terms over `alphabet` of height ≤ h.
inline TermSet all_terms(const std::vector<Symbol>& alphabet, std::size_t h) {
  TermSet level;
  for (const auto& s : alphabet) {
    if (s.arity == 0) level.insert(Term::app(s, {}));
  }
  for (std::size_t k = 1; k <= h; ++k) {
    const std::vector<Term> prev(level.begin(), level.end());
    TermSet next = level;
    for (const auto& s : alphabet) {
      if (s.arity == 0) continue;
      std::vector<std::size_t> idx(s.arity, 0);
      while (true) {
        std::vector<Term> kids;
        for (auto i : idx) kids.push_back(prev[i]);
        next.insert(Term::app(s, std::move(kids)));
        std::size_t j = 0;
        while (j < s.arity && ++idx[j] == prev.size()) idx[j++] = 0;
        if (j == s.arity) break;
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace testing
