#include "trsta/decide.hpp"

#include <algorithm>

#include "trsta/automaton.hpp"
#include "trsta/completion.hpp"

namespace trsta {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string_view rel_order_name(RelOrder r) {
  switch (r) {
    case RelOrder::Subset: return "SUBSET";
    case RelOrder::Superset: return "SUPERSET";
    case RelOrder::Equal: return "EQUAL";
    case RelOrder::Incomparable: return "INCOMPARABLE";
    case RelOrder::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string Decision::witness_text() const {
  if (const auto* t = std::get_if<Term>(&witness)) return t->str();
  if (const auto* cp = std::get_if<CriticalPair>(&witness)) return cp->to_string();
  if (const auto* rw = std::get_if<RuleWitness>(&witness)) {
    return "rule " + std::to_string(rw->index + 1) + ": " + rw->rule.to_string();
  }
  return {};
}

namespace {

Decision make(Verdict v, std::string reason) {
  Decision d;
  d.verdict = v;
  d.reason = std::move(reason);
  return d;
}

/// Fresh constants z1..zm whose names avoid `alphabet`.
std::vector<Symbol> fresh_constants(std::size_t m, const RankedAlphabet& alphabet) {
  std::string prefix = "z";
  auto clashes = [&] {
    for (std::size_t i = 1; i <= m; ++i) {
      if (alphabet.contains_name(prefix + std::to_string(i))) return true;
    }
    return false;
  };
  while (clashes()) prefix = "_" + prefix;
  std::vector<Symbol> z;
  for (std::size_t i = 1; i <= m; ++i) z.push_back(Symbol{prefix + std::to_string(i), 0});
  return z;
}

bool better_witness(const Term& a, const Term& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

/// R*({start}) either as an exact automaton or as a (possibly partial) closure.
class Descendants {
 public:
  Descendants(const Trs& r, const Term& start, const RankedAlphabet& alphabet, bool exact,
              std::size_t bound) {
    if (exact) {
      automaton_ = descendants(r, TermSet{start}, alphabet);
    } else {
      closure_ = bounded_closure(r, TermSet{start}, bound);
    }
  }

  bool exact() const { return automaton_.has_value(); }
  bool complete() const { return exact() || closure_.complete; }
  const Bta& automaton() const { return *automaton_; }
  const TermSet& terms() const { return closure_.terms; }

  bool contains(const Term& t) const {
    return exact() ? accepts(*automaton_, t) : closure_.terms.count(t) > 0;
  }

 private:
  std::optional<Bta> automaton_;
  ClosureResult closure_;
};

std::string fallback_reason(const Trs& r) {
  const auto c = classify(r);
  if (!c.left_linear) return "not left-linear";
  const auto g = is_gsm(r);
  return g.violation ? "not GSM (" + g.violation->to_string() + ")" : "not GSM";
}

struct Encoded {
  std::vector<Symbol> z;
  RankedAlphabet alphabet;
};

Encoded encode_alphabet(const Trs& r, std::initializer_list<const Term*> terms) {
  Encoded enc;
  enc.alphabet = r.alphabet();
  std::size_t m = 0;
  for (const Term* t : terms) {
    t->collect_symbols(enc.alphabet);
    m = std::max(m, t->max_var());
  }
  enc.z = fresh_constants(m, enc.alphabet);
  return enc;
}

Decision reach_ground(const Trs& r, const Term& from, const Term& to, const RankedAlphabet& alphabet,
                      const DecideOptions& opts) {
  if (from == to) return make(Verdict::Yes, "reflexive");
  const bool exact = is_left_linear_gsm(r);
  Descendants desc(r, from, alphabet, exact, opts.bound);
  if (desc.contains(to)) return make(Verdict::Yes, exact ? "descendant-automaton" : "bounded-closure");
  if (desc.complete()) return make(Verdict::No, exact ? "descendant-automaton" : "bounded-closure complete");
  return make(Verdict::Unknown, "bound-exhausted: " + fallback_reason(r));
}

Decision check_encoding_symbols(const Trs& r, const Symbol& g, const Symbol& sharp,
                                const RankedAlphabet& extra) {
  if (g.arity < 1) throw Error(ErrorKind::BadEncodingSymbols, "'" + g.name + "' must have arity >= 1");
  if (sharp.arity != 0) throw Error(ErrorKind::BadEncodingSymbols, "'" + sharp.name + "' must be nullary");
  if (r.signature().contains_name(g.name) || extra.contains_name(g.name)) {
    throw Error(ErrorKind::BadEncodingSymbols, "'" + g.name + "' occurs in the rules");
  }
  const Term leaf = Term::app(sharp, {});
  for (const auto& rule : r.rules()) {
    if (match(rule.lhs, leaf)) {
      throw Error(ErrorKind::BadEncodingSymbols, "'" + sharp.name + "' is reducible by " + rule.to_string());
    }
  }
  return {};
}

Decision ground_included_unchecked(const Trs& s, const Trs& r, const Symbol& g, const Symbol& sharp,
                                   const DecideOptions& opts) {
  RankedAlphabet alphabet = r.alphabet();
  try {
    alphabet.merge(s.alphabet());
    alphabet.add(g);
    alphabet.add(sharp);
  } catch (const Error& e) {
    throw Error(ErrorKind::BadEncodingSymbols, e.what());
  }
  bool unknown = false;
  std::string unknown_reason;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rule& rule = s.rules()[i];
    Decision d = reach_ground(r, to_ground_g(rule.lhs, g, sharp), to_ground_g(rule.rhs, g, sharp),
                              alphabet, opts);
    if (d.no()) {
      d.witness = RuleWitness{i, rule};
      return d;
    }
    if (d.verdict == Verdict::Unknown) {
      unknown = true;
      unknown_reason = d.reason;
    }
  }
  if (unknown) return make(Verdict::Unknown, unknown_reason);
  return make(Verdict::Yes, "every rule is simulated on its ground encoding");
}

}  // namespace

Decision reachable(const Trs& r, const Term& p, const Term& q, const DecideOptions& opts) {
  const Encoded enc = encode_alphabet(r, {&p, &q});
  RankedAlphabet alphabet = enc.alphabet;
  for (const auto& z : enc.z) alphabet.add(z);
  return reach_ground(r, to_ground_z(p, enc.z, enc.alphabet), to_ground_z(q, enc.z, enc.alphabet),
                      alphabet, opts);
}

Decision joinable(const Trs& r, const Term& p, const Term& q, const DecideOptions& opts) {
  const Encoded enc = encode_alphabet(r, {&p, &q});
  RankedAlphabet alphabet = enc.alphabet;
  for (const auto& z : enc.z) alphabet.add(z);
  const Term pz = to_ground_z(p, enc.z, enc.alphabet);
  const Term qz = to_ground_z(q, enc.z, enc.alphabet);
  if (pz == qz) {
    Decision d = make(Verdict::Yes, "reflexive");
    d.witness = p;
    return d;
  }
  const bool exact = is_left_linear_gsm(r);
  const Descendants dp(r, pz, alphabet, exact, opts.bound);
  const Descendants dq(r, qz, alphabet, exact, opts.bound);
  if (exact) {
    const Bta common = intersection(dp.automaton(), dq.automaton());
    if (auto w = shortest_accepted(common)) {
      Decision d = make(Verdict::Yes, "descendant-automaton");
      d.witness = from_ground_z(*w, enc.z);
      return d;
    }
    return make(Verdict::No, "descendant-automaton");
  }
  std::optional<Term> best;
  for (const auto& t : dp.terms()) {
    if (dq.terms().count(t) && (!best || better_witness(t, *best))) best = t;
  }
  if (best) {
    Decision d = make(Verdict::Yes, "bounded-closure");
    d.witness = from_ground_z(*best, enc.z);
    return d;
  }
  if (dp.complete() && dq.complete()) return make(Verdict::No, "bounded-closure complete");
  return make(Verdict::Unknown, "bound-exhausted: " + fallback_reason(r));
}

Decision convertible_confluent(const Trs& r, const Term& p, const Term& q, bool confluent_asserted,
                               const DecideOptions& opts) {
  Decision d = joinable(r, p, q, opts);
  if (d.no() && !confluent_asserted) {
    return make(Verdict::Unknown, "confluence-not-asserted: not joinable, ↔* undetermined");
  }
  if (confluent_asserted) d.reason += "; confluence asserted by caller";
  return d;
}

Decision locally_confluent(const Trs& r, const DecideOptions& opts) {
  bool unknown = false;
  std::string unknown_reason;
  for (const auto& cp : critical_pairs(r)) {
    Decision d = joinable(r, cp.left, cp.right, opts);
    if (d.no()) {
      Decision out = make(Verdict::No, "critical pair not joinable; " + d.reason);
      out.witness = cp;
      return out;
    }
    if (d.verdict == Verdict::Unknown) {
      unknown = true;
      unknown_reason = d.reason;
    }
  }
  if (unknown) return make(Verdict::Unknown, unknown_reason);
  return make(Verdict::Yes, "every critical pair is joinable");
}

Decision relation_included(const Trs& s, const Trs& r, const DecideOptions& opts) {
  const Trs base = r.with_alphabet(s.alphabet());
  bool unknown = false;
  std::string unknown_reason;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rule& rule = s.rules()[i];
    Decision d = reachable(base, rule.lhs, rule.rhs, opts);
    if (d.no()) {
      d.witness = RuleWitness{i, rule};
      return d;
    }
    if (d.verdict == Verdict::Unknown) {
      unknown = true;
      unknown_reason = d.reason;
    }
  }
  if (unknown) return make(Verdict::Unknown, unknown_reason);
  return make(Verdict::Yes, "every rule is simulated");
}

RelOrder compare(const Trs& r, const Trs& s, const DecideOptions& opts) {
  const Decision r_in_s = relation_included(r, s, opts);
  const Decision s_in_r = relation_included(s, r, opts);
  if (r_in_s.verdict == Verdict::Unknown || s_in_r.verdict == Verdict::Unknown) return RelOrder::Unknown;
  if (r_in_s.yes()) return s_in_r.yes() ? RelOrder::Equal : RelOrder::Subset;
  return s_in_r.yes() ? RelOrder::Superset : RelOrder::Incomparable;
}

RelOrder compare_thue(const Trs& r, const Trs& s, const DecideOptions& opts) {
  return compare(trs_union(r, invert(r)), trs_union(s, invert(s)), opts);
}

Decision minimal(const Trs& r, const DecideOptions& opts) {
  bool unknown = false;
  std::string unknown_reason;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Trs single = Trs::validate({r.rules()[i]}, r.alphabet());
    Decision d = relation_included(single, r.without_rule(i), opts);
    if (d.yes()) {
      Decision out = make(Verdict::No, "rule is simulated by the others; " + d.reason);
      out.witness = RuleWitness{i, r.rules()[i]};
      return out;
    }
    if (d.verdict == Verdict::Unknown) {
      unknown = true;
      unknown_reason = d.reason;
    }
  }
  if (unknown) return make(Verdict::Unknown, unknown_reason);
  return make(Verdict::Yes, "no rule is simulated by the others");
}

Decision ground_relation_included(const Trs& s, const Trs& r, const Symbol& g, const Symbol& sharp,
                                  const DecideOptions& opts) {
  check_encoding_symbols(r, g, sharp, s.signature());
  return ground_included_unchecked(s, r, g, sharp, opts);
}

Decision ground_minimal(const Trs& r, const Symbol& g, const Symbol& sharp, const DecideOptions& opts) {
  check_encoding_symbols(r, g, sharp, {});
  bool unknown = false;
  std::string unknown_reason;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Trs single = Trs::validate({r.rules()[i]}, r.alphabet());
    Decision d = ground_included_unchecked(single, r.without_rule(i), g, sharp, opts);
    if (d.yes()) {
      Decision out = make(Verdict::No, "rule is simulated by the others on ground terms; " + d.reason);
      out.witness = RuleWitness{i, r.rules()[i]};
      return out;
    }
    if (d.verdict == Verdict::Unknown) {
      unknown = true;
      unknown_reason = d.reason;
    }
  }
  if (unknown) return make(Verdict::Unknown, unknown_reason);
  return make(Verdict::Yes, "no rule is simulated by the others on ground terms");
}

}  // namespace trsta
