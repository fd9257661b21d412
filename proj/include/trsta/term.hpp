#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trsta/error.hpp"

namespace trsta {

/// A function symbol with a fixed rank.
struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend bool operator<(const Symbol& a, const Symbol& b) {
    return a.name != b.name ? a.name < b.name : a.arity < b.arity;
  }
};

/// Finite set of symbols; a name carries exactly one arity.
class RankedAlphabet {
 public:
  RankedAlphabet() = default;
  RankedAlphabet(std::initializer_list<Symbol> symbols);

  /// Adds `s`; throws ArityMismatch if the name is already present with another arity.
  void add(const Symbol& s);
  void merge(const RankedAlphabet& other);

  bool contains(const Symbol& s) const;
  bool contains_name(std::string_view name) const;
  std::optional<std::size_t> arity_of(std::string_view name) const;

  std::vector<Symbol> symbols() const;
  std::vector<Symbol> symbols_of_arity(std::size_t arity) const;
  std::size_t size() const { return arities_.size(); }
  bool empty() const { return arities_.empty(); }

  /// True when the two alphabets share no symbol name.
  bool disjoint_from(const RankedAlphabet& other) const;

  friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

 private:
  std::map<std::string, std::size_t, std::less<>> arities_;
};

/// Child-index path from the root; indices are 1-based, the empty path is the root.
struct Position {
  std::vector<std::size_t> path;

  bool is_root() const { return path.empty(); }
  std::size_t length() const { return path.size(); }
  Position child(std::size_t index) const;
  Position concat(const Position& suffix) const;

  /// "λ" for the root, otherwise indices joined by '.'.
  std::string to_string() const;

  friend bool operator==(const Position&, const Position&) = default;
  friend bool operator<(const Position& a, const Position& b) { return a.path < b.path; }
};

/// Immutable ranked term over a signature plus variables x1, x2, ...
///
/// Nodes are shared; copies are cheap. Equality is structural and the total
/// order is lexicographic on the canonical rendering, so std::set<Term>
/// iterates deterministically.
class Term {
 public:
  static Term var(std::size_t index);
  static Term app(Symbol symbol, std::vector<Term> children);
  static Term constant(std::string name);

  bool is_var() const { return node_->is_var; }
  std::size_t var_index() const { return node_->var_index; }
  const Symbol& symbol() const { return node_->symbol; }
  std::span<const Term> children() const { return node_->children; }
  std::size_t arity() const { return node_->children.size(); }

  /// Canonical rendering, e.g. "f(g(x1,#,#))".
  const std::string& str() const { return node_->text; }
  /// Constants and variables have height 0.
  std::size_t height() const { return node_->height; }
  std::size_t size() const { return node_->size; }
  bool is_ground() const { return node_->max_var == 0; }
  /// Largest variable index occurring in the term, 0 when ground.
  std::size_t max_var() const { return node_->max_var; }

  bool is_linear() const;
  std::set<std::size_t> vars() const;
  /// Variable indices in left-to-right order of occurrence, repeats included.
  std::vector<std::size_t> var_occurrences() const;
  void collect_symbols(RankedAlphabet& into) const;

  friend bool operator==(const Term& a, const Term& b) {
    return a.node_ == b.node_ || a.node_->text == b.node_->text;
  }
  friend bool operator<(const Term& a, const Term& b) { return a.node_->text < b.node_->text; }

 private:
  struct Node {
    bool is_var = false;
    std::size_t var_index = 0;
    Symbol symbol;
    std::vector<Term> children;
    std::string text;
    std::size_t height = 0;
    std::size_t size = 1;
    std::size_t max_var = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using TermSet = std::set<Term>;

/// Finite map from variable index to term.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::size_t, Term>> bindings)
      : bindings_(bindings) {}

  void bind(std::size_t var, Term t) { bindings_.insert_or_assign(var, std::move(t)); }
  const Term* lookup(std::size_t var) const;
  const std::map<std::size_t, Term>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::size_t, Term> bindings_;
};

std::vector<Position> positions(const Term& t);
/// Throws InvalidPosition when `pos` does not address a node of `t`.
const Term& subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& replacement);
bool is_valid_position(const Term& t, const Position& pos);

Term apply(const Substitution& sigma, const Term& t);

/// σ with apply(σ, pattern) == subject, honouring repeated pattern variables.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

/// Idempotent most general unifier (syntactic, with occurs check).
std::optional<Substitution> mgu(const Term& s, const Term& t);

/// One representative per renaming class of linear generalizations of `v`:
/// every position antichain covering the variable positions of `v`, each cut
/// replaced by a distinct fresh variable numbered from `fresh_from`
/// left to right.
TermSet supertrees(const Term& v, std::size_t fresh_from);

/// All subterms of `t` (including `t`).
TermSet subterms(const Term& t);
TermSet subterms(const TermSet& terms);

/// Renames variables to x_{offset+1}, x_{offset+2}, ... in order of first occurrence.
Term normalize_vars(const Term& t, std::size_t offset = 0);
/// Adds `offset` to every variable index.
Term shift_vars(const Term& t, std::size_t offset);

/// Replaces x_i by the constant z[i-1]. Throws AlphabetClash if a z symbol
/// occurs in `base`, BadEncodingSymbols if `z` is too short or not nullary.
Term to_ground_z(const Term& t, std::span<const Symbol> z, const RankedAlphabet& base);
/// Inverse of to_ground_z: the constant z[i-1] becomes x_i.
Term from_ground_z(const Term& t, std::span<const Symbol> z);

/// Replaces x_i by the left spine g^i(#) (extra children of g filled with `sharp`).
/// Throws BadEncodingSymbols unless arity(g) >= 1 and arity(sharp) == 0.
Term to_ground_g(const Term& t, const Symbol& g, const Symbol& sharp);

// Text syntax: `name`, `name(t1,...,tn)`, `x<digits>` for variables.

/// Parses one term; arities are taken from the text (constants have arity 0).
Term parse_term(std::string_view text);
/// Parses one term and checks every symbol against `alphabet`.
Term parse_term(std::string_view text, const RankedAlphabet& alphabet);
/// One ground term per line; blank lines and `%` comments are skipped.
TermSet parse_language(std::string_view text);

}  // namespace trsta
