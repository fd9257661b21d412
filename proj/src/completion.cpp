#include "trsta/completion.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace trsta {

namespace {

RankedAlphabet working_alphabet(const Trs& trs, const TermSet& language, const RankedAlphabet& given) {
  RankedAlphabet used = trs.signature();
  for (const auto& t : language) t.collect_symbols(used);
  if (given.empty()) {
    RankedAlphabet out = trs.alphabet();
    out.merge(used);
    return out;
  }
  for (const auto& s : used.symbols()) {
    auto a = given.arity_of(s.name);
    if (!a) throw Error(ErrorKind::UnknownSymbol, "symbol '" + s.name + "' is not in the alphabet");
    if (*a != s.arity) throw Error(ErrorKind::ArityMismatch, "symbol '" + s.name + "' has another arity");
  }
  return given;
}

// Calls `visit` with every assignment of `pool` elements to x1..x_n.
void for_each_assignment(const std::vector<Term>& pool, std::size_t n,
                         const std::function<void(const std::vector<Term>&)>& visit) {
  if (n > 0 && pool.empty()) return;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Term> values(n, pool.empty() ? Term::var(1) : pool.front());
  while (true) {
    for (std::size_t i = 0; i < n; ++i) values[i] = pool[idx[i]];
    visit(values);
    std::size_t k = 0;
    while (k < n && ++idx[k] == pool.size()) idx[k++] = 0;
    if (k == n) return;
  }
}

Substitution assignment(const std::vector<Term>& values) {
  Substitution sigma;
  for (std::size_t i = 0; i < values.size(); ++i) sigma.bind(i + 1, values[i]);
  return sigma;
}

}  // namespace

bool is_left_linear_gsm(const Trs& trs) {
  const auto c = classify(trs);
  return c.left_linear && c.gsm;
}

void require_left_linear_gsm(const Trs& trs) {
  for (const auto& rule : trs.rules()) {
    if (!rule.lhs.is_linear()) {
      throw Error(ErrorKind::UnsupportedTrs, "rule " + rule.to_string() + " is not left-linear");
    }
  }
  const auto gsm = is_gsm(trs);
  if (gsm.variable_lhs) throw Error(ErrorKind::UnsupportedTrs, "a rule has a variable lhs");
  if (!gsm.gsm) {
    throw Error(ErrorKind::UnsupportedTrs, "not generalized semi-monadic: " + gsm.violation->to_string());
  }
}

TermSet compute_e(const Trs& trs) {
  for (const auto& rule : trs.rules()) {
    if (rule.lhs.is_var() || !rule.lhs.is_linear()) {
      throw Error(ErrorKind::UnsupportedTrs, "rule " + rule.to_string() + " is not admissible");
    }
  }
  TermSet e;
  for_each_overlap(trs, [&](const Overlap& o) {
    if (o.supertree.is_var()) return true;
    for (const auto& gamma : positions(o.supertree)) {
      if (!subterm_at(o.l2_at_beta, gamma).is_var()) continue;
      Term image = apply(o.unifier, subterm_at(o.supertree, gamma));
      if (image.is_ground()) e.insert(std::move(image));
    }
    return true;
  });
  return e;
}

TermSet compute_d(const Trs& trs, const TermSet& language) {
  return compute_d(trs, language, compute_e(trs));
}

TermSet compute_d(const Trs& trs, const TermSet& language, const TermSet& e_terms) {
  TermSet base_set = language;
  base_set.insert(e_terms.begin(), e_terms.end());
  base_set = subterms(base_set);
  const std::vector<Term> base(base_set.begin(), base_set.end());

  TermSet d = subterms(language);
  for (const auto& rule : trs.rules()) {
    for (const auto& p : subterms(rule.rhs)) {
      // Only the variables of p matter; the rest of X_n would be substituted away.
      const auto vars = p.vars();
      const std::vector<std::size_t> order(vars.begin(), vars.end());
      for_each_assignment(base, order.size(), [&](const std::vector<Term>& values) {
        Substitution sigma;
        for (std::size_t i = 0; i < order.size(); ++i) sigma.bind(order[i], values[i]);
        d.insert(apply(sigma, p));
      });
    }
  }
  return d;
}

std::vector<std::string> SaturationResult::round_lines(std::size_t i) const {
  std::vector<std::string> lines;
  if (i == 0 || i > rounds.size()) return lines;
  for (const auto& l : rounds[i - 1]) lines.push_back(automaton.lambda_line(l));
  std::sort(lines.begin(), lines.end());
  return lines;
}

SaturationResult saturate(const Trs& trs, const TermSet& language, const RankedAlphabet& alphabet) {
  const RankedAlphabet sigma = working_alphabet(trs, language, alphabet);
  require_left_linear_gsm(trs);
  for (const auto& t : language) {
    if (!t.is_ground()) throw Error(ErrorKind::UnsupportedTrs, "language term " + t.str() + " is not ground");
  }

  SaturationResult result;
  result.e_terms = compute_e(trs);
  result.d_terms = compute_d(trs, language, result.e_terms);

  TermSet base_set = language;
  base_set.insert(result.e_terms.begin(), result.e_terms.end());
  base_set = subterms(base_set);
  const std::vector<Term> base(base_set.begin(), base_set.end());

  // B: the fundamental automaton of D, with the finals of L.
  TermSet b_terms = result.d_terms;
  b_terms.insert(base_set.begin(), base_set.end());
  BtaBuilder initial(sigma);
  for (const auto& p : subterms(b_terms)) {
    std::vector<StateId> args;
    for (const auto& c : p.children()) args.push_back(initial.state(term_state_name(c)));
    initial.add(p.symbol(), std::move(args), initial.state(term_state_name(p)));
  }
  for (const auto& p : language) initial.set_final(initial.state(term_state_name(p)));
  result.initial = initial.build();

  // State ids are stable across rounds: the state set never changes.
  const Bta& b = result.initial;
  auto id_of = [&](const Term& t) {
    auto q = b.find_state(term_state_name(t));
    if (!q) throw Error(ErrorKind::UnsupportedTrs, "no state for " + t.str());
    return *q;
  };

  std::set<std::pair<StateId, StateId>> lambdas;
  Bta current = b;
  while (true) {
    std::set<std::pair<StateId, StateId>> increment;
    for (const auto& rule : trs.rules()) {
      const std::size_t n = rule.lhs.max_var();
      for_each_assignment(base, n, [&](const std::vector<Term>& values) {
        std::vector<StateSet> leaves;
        leaves.reserve(n);
        for (const auto& v : values) leaves.push_back({id_of(v)});
        const StateSet reached = reachable_states(current, rule.lhs, leaves);
        if (reached.empty()) return;
        const StateId source = id_of(apply(assignment(values), rule.rhs));
        for (StateId c : reached) {
          if (c != source && !lambdas.count({source, c})) increment.emplace(source, c);
        }
      });
    }
    std::vector<LambdaTransition> round;
    for (const auto& [from, to] : increment) round.push_back({from, to});
    result.rounds.push_back(round);
    if (increment.empty()) break;
    lambdas.insert(increment.begin(), increment.end());

    BtaBuilder next(sigma);
    for (const auto& name : b.state_names()) next.state(name);
    for (StateId q : b.finals()) next.set_final(q);
    for (const auto& t : b.transitions()) next.add(t.symbol, t.args, t.target);
    for (const auto& [from, to] : lambdas) next.add_lambda(from, to);
    current = next.build();
  }
  result.automaton = current;
  return result;
}

Bta descendants(const Trs& trs, const TermSet& language, const RankedAlphabet& alphabet) {
  return trim(eliminate_lambda(saturate(trs, language, alphabet).automaton));
}

namespace {

// A trimmed λ-free automaton has a finite language iff its useful part is acyclic.
bool has_finite_language(const Bta& a) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<StateId>> succ(n);
  for (const auto& t : a.transitions()) {
    for (StateId q : t.args) succ[q].push_back(t.target);
  }
  std::vector<int> colour(n, 0);
  std::function<bool(StateId)> cyclic = [&](StateId q) {
    colour[q] = 1;
    for (StateId p : succ[q]) {
      if (colour[p] == 1) return true;
      if (colour[p] == 0 && cyclic(p)) return true;
    }
    colour[q] = 2;
    return false;
  };
  for (StateId q = 0; q < n; ++q) {
    if (colour[q] == 0 && cyclic(q)) return false;
  }
  return true;
}

}  // namespace

Bta descendants_disjoint_union(const Trs& r, const Trs& s, const TermSet& language,
                               const RankedAlphabet& alphabet) {
  const Trs both = disjoint_union(r, s);
  RankedAlphabet sigma = alphabet;
  if (sigma.empty()) {
    sigma = both.alphabet();
    for (const auto& t : language) t.collect_symbols(sigma);
  }
  if (is_left_linear_gsm(both)) return descendants(both, language, sigma);

  const auto cr = classify(r);
  const auto cs = classify(s);
  if (!(cr.linear && cr.collapse_free && cs.linear && cs.collapse_free)) {
    throw Error(ErrorKind::UnsupportedTrs, "composition needs linear collapse-free components");
  }
  const Bta first = descendants(r, language, sigma);
  if (!has_finite_language(first)) {
    throw Error(ErrorKind::UnsupportedTrs,
                "R ⊕ S is not left-linear GSM and R*(L) is infinite");
  }
  const TermSet intermediate = enumerate(first, first.state_count());
  return descendants(s, intermediate, sigma);
}

}  // namespace trsta
