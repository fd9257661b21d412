#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trsta/term.hpp"

namespace trsta {

using StateId = std::uint32_t;
/// Sorted, duplicate-free list of states.
using StateSet = std::vector<StateId>;

/// δ(q1,…,qn) → q
struct Transition {
  Symbol symbol;
  std::vector<StateId> args;
  StateId target = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// q → q'
struct LambdaTransition {
  StateId from = 0;
  StateId to = 0;

  friend bool operator==(const LambdaTransition&, const LambdaTransition&) = default;
};

/// Canonical state name of the fundamental-automaton state for `t`: "⟨t⟩".
std::string term_state_name(const Term& t);

/// Bottom-up tree automaton (Σ, states, transitions including λ-rules, finals).
///
/// Immutable value built through BtaBuilder. States are numbered in
/// lexicographic order of their names and transitions are sorted and
/// deduplicated, so two automata with the same content compare equal and
/// serialize identically. The reflexive-transitive λ-closure is computed at
/// build time.
class Bta {
 public:
  Bta() = default;

  const RankedAlphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return names_.size(); }
  const std::string& state_name(StateId q) const { return names_[q]; }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<StateId> find_state(std::string_view name) const;

  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<LambdaTransition>& lambdas() const { return lambdas_; }
  /// Indices into transitions() whose symbol is `name`.
  std::span<const std::size_t> transitions_of(std::string_view name) const;

  const StateSet& finals() const { return finals_; }
  bool is_final(StateId q) const { return is_final_[q]; }

  /// States reachable from `q` through λ-rules, `q` included.
  const StateSet& lambda_closure(StateId q) const { return closure_[q]; }
  bool has_lambdas() const { return !lambdas_.empty(); }
  /// No λ-rules and no two transitions with the same left-hand side.
  bool is_deterministic() const;

  /// Lines of the serialized transition list, sorted.
  std::vector<std::string> transition_lines() const;
  std::string transition_line(const Transition& t) const;
  std::string lambda_line(const LambdaTransition& l) const;

  friend bool operator==(const Bta& a, const Bta& b) {
    return a.alphabet_ == b.alphabet_ && a.names_ == b.names_ &&
           a.transitions_ == b.transitions_ && a.lambdas_ == b.lambdas_ && a.finals_ == b.finals_;
  }

 private:
  friend class BtaBuilder;

  RankedAlphabet alphabet_;
  std::vector<std::string> names_;
  std::map<std::string, StateId, std::less<>> index_;
  std::vector<Transition> transitions_;
  std::vector<LambdaTransition> lambdas_;
  StateSet finals_;
  std::vector<bool> is_final_;
  std::vector<StateSet> closure_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_symbol_;
};

class BtaBuilder {
 public:
  BtaBuilder() = default;
  explicit BtaBuilder(RankedAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

  /// Returns the id of the state called `name`, declaring it if needed.
  StateId state(const std::string& name);
  /// Symbols not yet in the alphabet are added.
  void add(const Symbol& symbol, std::vector<StateId> args, StateId target);
  /// Trivial λ-rules q → q are dropped.
  void add_lambda(StateId from, StateId to);
  void set_final(StateId q);
  void extend_alphabet(const RankedAlphabet& extra) { alphabet_.merge(extra); }

  const std::string& name_of(StateId q) const { return names_[q]; }

  Bta build() const;

 private:
  RankedAlphabet alphabet_;
  std::vector<std::string> names_;
  std::map<std::string, StateId, std::less<>> index_;
  std::vector<Transition> transitions_;
  std::vector<LambdaTransition> lambdas_;
  std::vector<StateId> finals_;
};

/// States q with t →* q. Variable x_i at a leaf stands for the states
/// `var_states[i-1]` (a state-leaved term l[q1,…,qn]); every node is closed
/// under λ-rules. Throws ForeignSymbol for symbols outside the alphabet.
StateSet reachable_states(const Bta& a, const Term& t, std::span<const StateSet> var_states = {});
bool accepts(const Bta& a, const Term& t);

/// Deterministic automaton with states ⟨p⟩ for p ∈ sub(L) recognizing exactly L.
Bta fundamental_bta(const TermSet& language, const RankedAlphabet& alphabet = {});

Bta eliminate_lambda(const Bta& a);
/// Keeps only states that are both accessible and co-accessible.
Bta trim(const Bta& a);
/// Same automaton over a larger alphabet.
Bta with_alphabet(const Bta& a, const RankedAlphabet& extra);

/// Product automaton; throws AlphabetMismatch when a symbol name carries
/// different arities in the two alphabets.
Bta intersection(const Bta& a, const Bta& b);
bool is_empty(const Bta& a);

/// Subset construction over accessible subsets (no sink state).
Bta determinize(const Bta& a);
/// Deterministic and complete over its alphabet; missing moves go to "⊥".
Bta complete(const Bta& a);
Bta complement(const Bta& a);
bool equivalent(const Bta& a, const Bta& b);

/// Every accepted ground term of height at most `max_height`.
TermSet enumerate(const Bta& a, std::size_t max_height);
/// Smallest accepted term (by size, then canonical order), if any.
std::optional<Term> shortest_accepted(const Bta& a);

/// `states …` / `final …` / one transition per line, all sorted.
std::string format_bta(const Bta& a);
/// Parses the format above; `%` comments and an optional `sig` line are allowed.
Bta parse_bta(std::string_view text);

}  // namespace trsta
