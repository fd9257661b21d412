#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trsta/term.hpp"

namespace trsta {

struct Rule {
  Term lhs;
  Term rhs;

  std::string to_string() const { return lhs.str() + " -> " + rhs.str(); }

  friend bool operator==(const Rule&, const Rule&) = default;
  friend bool operator<(const Rule& a, const Rule& b) {
    return a.lhs == b.lhs ? a.rhs < b.rhs : a.lhs < b.lhs;
  }
};

/// A validated term rewrite system.
///
/// Rules keep their input order. Variables of every rule are renumbered
/// x1..xn by first occurrence in the left-hand side, so a left-linear rule
/// has lhs in T̄(X_n).
class Trs {
 public:
  Trs() = default;

  /// Validates and normalizes `rules`. Throws VariableLhs, FreeVariableInRhs,
  /// ArityMismatch or UnknownSymbol. When `alphabet` is empty the signature
  /// is inferred; otherwise every rule symbol must be declared in it.
  static Trs validate(std::vector<Rule> rules, RankedAlphabet alphabet = {});

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  /// Declared alphabet, always a superset of signature().
  const RankedAlphabet& alphabet() const { return alphabet_; }
  /// sign(R): symbols occurring in the rules.
  const RankedAlphabet& signature() const { return signature_; }

  Trs without_rule(std::size_t index) const;
  Trs with_alphabet(const RankedAlphabet& extra) const;

  std::string to_string() const;

 private:
  std::vector<Rule> rules_;
  RankedAlphabet alphabet_;
  RankedAlphabet signature_;
};

struct TrsClassification {
  bool left_linear = false;
  bool linear = false;
  bool ground = false;
  bool monadic = false;
  bool right_ground = false;
  bool murg = false;
  bool collapse_free = false;
  bool gsm = false;
};

/// A failing instance of the generalized semi-monadic condition.
struct GsmViolation {
  std::size_t rule1 = 0;  // provides r1/α
  std::size_t rule2 = 0;  // provides l2/β
  Position alpha;
  Position beta;
  Term supertree;  // l3
  Position gamma;
  Term image;  // σ(l3/γ), neither a variable nor ground

  std::string to_string() const;
};

struct GsmResult {
  bool gsm = false;
  std::optional<GsmViolation> violation;
  /// Set when the system has a rule with a variable left-hand side.
  bool variable_lhs = false;
};

/// One overlap instance as quantified over in the GSM condition: rules
/// (l1→r1, l2→r2), positions α of r1 and β of l2 with α=λ or β=λ, a
/// supertree l3 of l2/β with variables disjoint from l1, and the mgu of
/// r1/α and l3.
struct Overlap {
  std::size_t rule1;
  std::size_t rule2;
  const Position& alpha;
  const Position& beta;
  const Term& l2_at_beta;
  const Term& supertree;
  const Substitution& unifier;
};

/// Enumerates every unifiable overlap in deterministic order (rule pairs in
/// list order, positions lexicographic, supertrees in canonical order).
/// Returning false from `visit` stops the enumeration.
void for_each_overlap(const Trs& trs, const std::function<bool(const Overlap&)>& visit);

GsmResult is_gsm(const Trs& trs);
TrsClassification classify(const Trs& trs);

/// All one-step reducts of `t`.
TermSet successors(const Trs& trs, const Term& t);

struct ClosureResult {
  TermSet terms;
  bool complete = false;
};

/// Forward closure of `start` under →_R, adding at most `max_new` terms
/// beyond `start`. `complete` means the result is exactly R*(start).
ClosureResult bounded_closure(const Trs& trs, const TermSet& start, std::size_t max_new);

struct CriticalPair {
  Term left;   // outer rule applied at the root of the peak
  Term right;  // inner rule applied at `position`
  Term peak;
  std::size_t outer_rule = 0;
  std::size_t inner_rule = 0;
  Position position;

  std::string to_string() const { return "(" + left.str() + ", " + right.str() + ")"; }
};

/// One representative per variant class.
std::vector<CriticalPair> critical_pairs(const Trs& trs);

/// Throws NotInvertible when some rule has lhs variables missing from its rhs
/// or its rhs is a variable.
Trs invert(const Trs& trs);
Trs trs_union(const Trs& r, const Trs& s);
/// Throws AlphabetsNotDisjoint when sign(R) and sign(S) share a symbol.
Trs disjoint_union(const Trs& r, const Trs& s);

/// TRS file: optional `sig name:arity ...`, then one `lhs -> rhs` per line;
/// `%` starts a comment.
Trs parse_trs(std::string_view text);
std::string format_trs(const Trs& trs);

}  // namespace trsta
