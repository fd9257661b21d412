#include "trsta/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace trsta {

namespace {

Rule normalize_rule(const Rule& rule) {
  Substitution rename;
  std::size_t next = 1;
  for (std::size_t v : rule.lhs.var_occurrences()) {
    if (!rename.lookup(v)) rename.bind(v, Term::var(next++));
  }
  return Rule{apply(rename, rule.lhs), apply(rename, rule.rhs)};
}

void check_declared(const RankedAlphabet& used, const RankedAlphabet& declared) {
  for (const auto& s : used.symbols()) {
    auto a = declared.arity_of(s.name);
    if (!a) throw Error(ErrorKind::UnknownSymbol, "symbol '" + s.name + "' is not declared");
    if (*a != s.arity) {
      throw Error(ErrorKind::ArityMismatch, "symbol '" + s.name + "' declared with arity " +
                                                std::to_string(*a) + ", used with " +
                                                std::to_string(s.arity));
    }
  }
}

}  // namespace

Trs Trs::validate(std::vector<Rule> rules, RankedAlphabet alphabet) {
  Trs trs;
  for (const auto& rule : rules) {
    if (rule.lhs.is_var()) {
      throw Error(ErrorKind::VariableLhs, "rule " + rule.to_string() + " has a variable lhs");
    }
    auto lhs_vars = rule.lhs.vars();
    for (std::size_t v : rule.rhs.vars()) {
      if (!lhs_vars.count(v)) {
        throw Error(ErrorKind::FreeVariableInRhs, "rule " + rule.to_string() + ": x" +
                                                      std::to_string(v) +
                                                      " does not occur in the lhs");
      }
    }
    rule.lhs.collect_symbols(trs.signature_);
    rule.rhs.collect_symbols(trs.signature_);
    trs.rules_.push_back(normalize_rule(rule));
  }
  if (alphabet.empty()) {
    trs.alphabet_ = trs.signature_;
  } else {
    check_declared(trs.signature_, alphabet);
    trs.alphabet_ = std::move(alphabet);
  }
  return trs;
}

Trs Trs::without_rule(std::size_t index) const {
  std::vector<Rule> rest;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (i != index) rest.push_back(rules_[i]);
  }
  return validate(std::move(rest), alphabet_);
}

Trs Trs::with_alphabet(const RankedAlphabet& extra) const {
  Trs out = *this;
  out.alphabet_.merge(extra);
  return out;
}

std::string Trs::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (i) out += ", ";
    out += rules_[i].to_string();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Overlaps and the GSM condition

std::string GsmViolation::to_string() const {
  std::ostringstream os;
  os << "rules " << rule1 + 1 << "/" << rule2 + 1 << ", α=" << alpha.to_string()
     << ", β=" << beta.to_string() << ", l3=" << supertree.str() << ", γ=" << gamma.to_string()
     << ", σ(l3/γ)=" << image.str();
  return os.str();
}

void for_each_overlap(const Trs& trs, const std::function<bool(const Overlap&)>& visit) {
  const auto& rules = trs.rules();
  const Position root;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& first = rules[i];
    const std::size_t fresh = std::max(first.lhs.max_var(), first.rhs.max_var()) + 1;
    const auto alphas = positions(first.rhs);
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Term& l2 = rules[j].lhs;
      const auto betas = positions(l2);
      auto try_pair = [&](const Position& alpha, const Position& beta) {
        const Term& r1_at = subterm_at(first.rhs, alpha);
        const Term& l2_at = subterm_at(l2, beta);
        for (const auto& l3 : supertrees(l2_at, fresh)) {
          auto sigma = mgu(r1_at, l3);
          if (!sigma) continue;
          if (!visit(Overlap{i, j, alpha, beta, l2_at, l3, *sigma})) return false;
        }
        return true;
      };
      for (const auto& beta : betas) {
        if (!try_pair(root, beta)) return;
      }
      for (const auto& alpha : alphas) {
        if (alpha.is_root()) continue;
        if (!try_pair(alpha, root)) return;
      }
    }
  }
}

GsmResult is_gsm(const Trs& trs) {
  GsmResult result;
  for (const auto& rule : trs.rules()) {
    if (rule.lhs.is_var()) {
      result.variable_lhs = true;
      return result;
    }
  }
  for_each_overlap(trs, [&](const Overlap& o) {
    if (o.l2_at_beta.is_var()) return true;
    for (const auto& gamma : positions(o.supertree)) {
      if (!subterm_at(o.l2_at_beta, gamma).is_var()) continue;
      Term image = apply(o.unifier, subterm_at(o.supertree, gamma));
      if (image.is_var() || image.is_ground()) continue;
      result.violation =
          GsmViolation{o.rule1, o.rule2, o.alpha, o.beta, o.supertree, gamma, image};
      return false;
    }
    return true;
  });
  result.gsm = !result.violation.has_value();
  return result;
}

TrsClassification classify(const Trs& trs) {
  TrsClassification c;
  c.left_linear = c.linear = c.ground = c.monadic = c.right_ground = c.murg = c.collapse_free =
      true;
  for (const auto& rule : trs.rules()) {
    const bool ll = rule.lhs.is_linear();
    const bool monadic_rule = rule.lhs.height() >= 1 && rule.rhs.height() <= 1;
    const bool right_ground_rule = rule.rhs.is_ground();
    c.left_linear &= ll;
    c.linear &= ll && rule.rhs.is_linear();
    c.ground &= rule.lhs.is_ground() && right_ground_rule;
    c.monadic &= monadic_rule;
    c.right_ground &= right_ground_rule;
    c.murg &= monadic_rule || right_ground_rule;
    c.collapse_free &= !rule.lhs.is_var() && !rule.rhs.is_var();
  }
  c.gsm = is_gsm(trs).gsm;
  return c;
}

// ---------------------------------------------------------------------------
// Rewriting

TermSet successors(const Trs& trs, const Term& t) {
  TermSet out;
  for (const auto& pos : positions(t)) {
    const Term& at = subterm_at(t, pos);
    if (at.is_var()) continue;
    for (const auto& rule : trs.rules()) {
      if (auto sigma = match(rule.lhs, at)) out.insert(replace_at(t, pos, apply(*sigma, rule.rhs)));
    }
  }
  return out;
}

ClosureResult bounded_closure(const Trs& trs, const TermSet& start, std::size_t max_new) {
  ClosureResult result;
  result.terms = start;
  std::deque<Term> work(start.begin(), start.end());
  std::size_t added = 0;
  while (!work.empty()) {
    Term p = work.front();
    work.pop_front();
    for (const auto& q : successors(trs, p)) {
      if (result.terms.count(q)) continue;
      if (added == max_new) return result;
      ++added;
      result.terms.insert(q);
      work.push_back(q);
    }
  }
  result.complete = true;
  return result;
}

// ---------------------------------------------------------------------------
// Critical pairs

namespace {

// Renames variables of the three terms jointly by first occurrence.
void normalize_jointly(Term& a, Term& b, Term& c) {
  Substitution rename;
  std::size_t next = 1;
  for (const Term* t : {&a, &b, &c}) {
    for (std::size_t v : t->var_occurrences()) {
      if (!rename.lookup(v)) rename.bind(v, Term::var(next++));
    }
  }
  a = apply(rename, a);
  b = apply(rename, b);
  c = apply(rename, c);
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const Trs& trs) {
  std::vector<CriticalPair> out;
  std::set<std::pair<std::string, std::string>> seen;
  const auto& rules = trs.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& outer = rules[i];
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const std::size_t offset = std::max(outer.lhs.max_var(), outer.rhs.max_var());
      const Term inner_lhs = shift_vars(rules[j].lhs, offset);
      const Term inner_rhs = shift_vars(rules[j].rhs, offset);
      for (const auto& beta : positions(outer.lhs)) {
        const Term& at = subterm_at(outer.lhs, beta);
        if (at.is_var()) continue;
        // Root overlaps are symmetric; keep one orientation and skip the trivial self-overlap.
        if (beta.is_root() && j <= i) continue;
        auto sigma = mgu(at, inner_lhs);
        if (!sigma) continue;
        Term peak = apply(*sigma, outer.lhs);
        Term left = apply(*sigma, outer.rhs);
        Term right = replace_at(peak, beta, apply(*sigma, inner_rhs));
        normalize_jointly(left, right, peak);
        if (!seen.emplace(left.str(), right.str()).second) continue;
        out.push_back(CriticalPair{left, right, peak, i, j, beta});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combinators

Trs invert(const Trs& trs) {
  std::vector<Rule> inverted;
  for (const auto& rule : trs.rules()) {
    if (rule.rhs.is_var() || rule.lhs.vars() != rule.rhs.vars()) {
      throw Error(ErrorKind::NotInvertible, "rule " + rule.to_string() + " cannot be reversed");
    }
    inverted.push_back(Rule{rule.rhs, rule.lhs});
  }
  return Trs::validate(std::move(inverted), trs.alphabet());
}

Trs trs_union(const Trs& r, const Trs& s) {
  RankedAlphabet alphabet = r.alphabet();
  alphabet.merge(s.alphabet());
  std::vector<Rule> rules = r.rules();
  for (const auto& rule : s.rules()) {
    if (std::find(rules.begin(), rules.end(), rule) == rules.end()) rules.push_back(rule);
  }
  return Trs::validate(std::move(rules), std::move(alphabet));
}

Trs disjoint_union(const Trs& r, const Trs& s) {
  if (!r.signature().disjoint_from(s.signature())) {
    throw Error(ErrorKind::AlphabetsNotDisjoint, "sign(R) and sign(S) share a symbol");
  }
  return trs_union(r, s);
}

// ---------------------------------------------------------------------------
// File format

Trs parse_trs(std::string_view text) {
  RankedAlphabet declared;
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
  };
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (auto c = line.find('%'); c != std::string::npos) line.erase(c);
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "sig") {
      std::string entry;
      while (words >> entry) {
        auto colon = entry.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == entry.size()) {
          fail("malformed signature entry '" + entry + "'");
        }
        const std::string digits = entry.substr(colon + 1);
        if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
          fail("malformed arity in '" + entry + "'");
        }
        try {
          declared.add(Symbol{entry.substr(0, colon), std::stoul(digits)});
        } catch (const Error& e) {
          fail(e.what());
        }
      }
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos) fail("expected 'lhs -> rhs'");
    try {
      rules.push_back(Rule{parse_term(line.substr(0, arrow)), parse_term(line.substr(arrow + 2))});
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return Trs::validate(std::move(rules), std::move(declared));
}

std::string format_trs(const Trs& trs) {
  std::string out = "sig";
  for (const auto& s : trs.alphabet().symbols()) out += " " + s.name + ":" + std::to_string(s.arity);
  out += "\n";
  for (const auto& rule : trs.rules()) out += rule.to_string() + "\n";
  return out;
}

}  // namespace trsta
