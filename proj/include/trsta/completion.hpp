#pragma once

#include <cstddef>
#include <vector>

#include "trsta/automaton.hpp"
#include "trsta/rewriting.hpp"

namespace trsta {

/// Outcome of the descendant saturation for a left-linear GSM system.
struct SaturationResult {
  /// C = (Σ, states of B, S_M, {⟨p⟩ : p ∈ L}), λ-rules included.
  Bta automaton;
  /// S_0: the transitions of the fundamental automaton of D.
  Bta initial;
  /// S_i − S_{i−1} for i = 1..M+1; the last entry is empty.
  std::vector<std::vector<LambdaTransition>> rounds;
  TermSet e_terms;
  TermSet d_terms;

  /// Least M with S_M = S_{M+1}.
  std::size_t fixpoint_round() const { return rounds.empty() ? 0 : rounds.size() - 1; }
  /// Increment lines of round `i` (1-based), sorted, in automaton-file syntax.
  std::vector<std::string> round_lines(std::size_t i) const;
};

/// Throws UnsupportedTrs unless the system is left-linear and GSM.
void require_left_linear_gsm(const Trs& trs);
bool is_left_linear_gsm(const Trs& trs);

/// Ground instances σ(l3/γ) produced by unifying rule overlaps at cut variables.
TermSet compute_e(const Trs& trs);
/// sub(L) ∪ { p[e1,…,en] : p a subterm of a rhs, e_i ∈ sub(L ∪ E) }.
TermSet compute_d(const Trs& trs, const TermSet& language);
TermSet compute_d(const Trs& trs, const TermSet& language, const TermSet& e_terms);

/// Runs the saturation S_0 ⊆ S_1 ⊆ … to its fixpoint. `alphabet` must contain
/// sign(R) and the symbols of `language`; it defaults to R's alphabet
/// extended by the language's symbols.
SaturationResult saturate(const Trs& trs, const TermSet& language, const RankedAlphabet& alphabet = {});

/// Trimmed λ-free automaton recognizing R*_Σ(L).
Bta descendants(const Trs& trs, const TermSet& language, const RankedAlphabet& alphabet = {});

/// Automaton for (R ⊕ S)*(L) = S*(R*(L)) over `alphabet`. Saturates R ⊕ S
/// directly when that system is left-linear GSM; otherwise, when R*(L) is
/// finite, saturates S from it. Throws UnsupportedTrs if neither applies.
Bta descendants_disjoint_union(const Trs& r, const Trs& s, const TermSet& language,
                               const RankedAlphabet& alphabet = {});

}  // namespace trsta
