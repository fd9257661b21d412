#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "trsta/rewriting.hpp"

namespace trsta {

enum class Verdict { Yes, No, Unknown };

std::string_view verdict_name(Verdict v);

/// A rule singled out by a decision (e.g. the redundant rule of a non-minimal system).
struct RuleWitness {
  std::size_t index = 0;
  Rule rule;
};

/// Answer of a decision procedure.
///
/// Yes/No answers on left-linear GSM input come from descendant automata and
/// are exact. Other input is explored with a bounded forward closure; the
/// answer is still exact when the closure completes, and Unknown otherwise.
struct Decision {
  Verdict verdict = Verdict::Unknown;
  /// Machine-readable first token: "descendant-automaton", "bounded-closure",
  /// "bound-exhausted", "unsupported-trs", ...
  std::string reason;
  std::variant<std::monostate, Term, CriticalPair, RuleWitness> witness;

  bool yes() const { return verdict == Verdict::Yes; }
  bool no() const { return verdict == Verdict::No; }
  std::string witness_text() const;
};

enum class RelOrder { Subset, Superset, Equal, Incomparable, Unknown };

std::string_view rel_order_name(RelOrder r);

struct DecideOptions {
  /// Terms the bounded closure may add when the system is outside the decidable class.
  std::size_t bound = 10000;
};

Decision reachable(const Trs& r, const Term& p, const Term& q, const DecideOptions& opts = {});
/// The witness is a common descendant (variables decoded back from the fresh constants).
Decision joinable(const Trs& r, const Term& p, const Term& q, const DecideOptions& opts = {});
/// ↔*_R for a system the caller asserts to be confluent; equals joinability.
Decision convertible_confluent(const Trs& r, const Term& p, const Term& q, bool confluent_asserted,
                               const DecideOptions& opts = {});
Decision locally_confluent(const Trs& r, const DecideOptions& opts = {});
/// Decides →*_S ⊆ →*_R.
Decision relation_included(const Trs& s, const Trs& r, const DecideOptions& opts = {});
/// Relation of →*_R to →*_S.
RelOrder compare(const Trs& r, const Trs& s, const DecideOptions& opts = {});
/// Relation of ↔*_R to ↔*_S.
RelOrder compare_thue(const Trs& r, const Trs& s, const DecideOptions& opts = {});
Decision minimal(const Trs& r, const DecideOptions& opts = {});
/// Decides →*_S ⊆ →*_R on ground terms via the encoding x_i ↦ g^i(sharp).
/// Throws BadEncodingSymbols if g occurs in sign(R), is nullary, or sharp is
/// reducible or not nullary.
Decision ground_relation_included(const Trs& s, const Trs& r, const Symbol& g, const Symbol& sharp,
                                  const DecideOptions& opts = {});
/// Throws BadEncodingSymbols if g occurs on a left-hand side of R or sharp is reducible.
Decision ground_minimal(const Trs& r, const Symbol& g, const Symbol& sharp, const DecideOptions& opts = {});

}  // namespace trsta
