#include "trsta/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

namespace trsta {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPosition: return "invalid-position";
    case ErrorKind::AlphabetClash: return "alphabet-clash";
    case ErrorKind::BadEncodingSymbols: return "bad-encoding-symbols";
    case ErrorKind::VariableLhs: return "variable-lhs";
    case ErrorKind::FreeVariableInRhs: return "free-variable-in-rhs";
    case ErrorKind::ArityMismatch: return "arity-mismatch";
    case ErrorKind::UnknownSymbol: return "unknown-symbol";
    case ErrorKind::NotInvertible: return "not-invertible";
    case ErrorKind::AlphabetsNotDisjoint: return "alphabets-not-disjoint";
    case ErrorKind::ForeignSymbol: return "foreign-symbol";
    case ErrorKind::AlphabetMismatch: return "alphabet-mismatch";
    case ErrorKind::UnsupportedTrs: return "unsupported-trs";
    case ErrorKind::Parse: return "parse-error";
  }
  return "error";
}

// ---------------------------------------------------------------------------
// RankedAlphabet

RankedAlphabet::RankedAlphabet(std::initializer_list<Symbol> symbols) {
  for (const auto& s : symbols) add(s);
}

void RankedAlphabet::add(const Symbol& s) {
  auto [it, inserted] = arities_.emplace(s.name, s.arity);
  if (!inserted && it->second != s.arity) {
    throw Error(ErrorKind::ArityMismatch, "symbol '" + s.name + "' used with arities " +
                                              std::to_string(it->second) + " and " +
                                              std::to_string(s.arity));
  }
}

void RankedAlphabet::merge(const RankedAlphabet& other) {
  for (const auto& [name, arity] : other.arities_) add(Symbol{name, arity});
}

bool RankedAlphabet::contains(const Symbol& s) const {
  auto it = arities_.find(s.name);
  return it != arities_.end() && it->second == s.arity;
}

bool RankedAlphabet::contains_name(std::string_view name) const {
  return arities_.find(name) != arities_.end();
}

std::optional<std::size_t> RankedAlphabet::arity_of(std::string_view name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

std::vector<Symbol> RankedAlphabet::symbols() const {
  std::vector<Symbol> out;
  out.reserve(arities_.size());
  for (const auto& [name, arity] : arities_) out.push_back(Symbol{name, arity});
  return out;
}

std::vector<Symbol> RankedAlphabet::symbols_of_arity(std::size_t arity) const {
  std::vector<Symbol> out;
  for (const auto& [name, a] : arities_) {
    if (a == arity) out.push_back(Symbol{name, a});
  }
  return out;
}

bool RankedAlphabet::disjoint_from(const RankedAlphabet& other) const {
  for (const auto& [name, arity] : arities_) {
    if (other.contains_name(name)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Position

Position Position::child(std::size_t index) const {
  Position p = *this;
  p.path.push_back(index);
  return p;
}

Position Position::concat(const Position& suffix) const {
  Position p = *this;
  p.path.insert(p.path.end(), suffix.path.begin(), suffix.path.end());
  return p;
}

std::string Position::to_string() const {
  if (path.empty()) return "λ";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Term

Term Term::var(std::size_t index) {
  if (index == 0) throw Error(ErrorKind::Parse, "variable indices start at 1");
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->var_index = index;
  n->text = "x" + std::to_string(index);
  n->max_var = index;
  return Term(std::move(n));
}

Term Term::app(Symbol symbol, std::vector<Term> children) {
  if (children.size() != symbol.arity) {
    throw Error(ErrorKind::ArityMismatch, "symbol '" + symbol.name + "' has arity " +
                                              std::to_string(symbol.arity) + " but got " +
                                              std::to_string(children.size()) + " arguments");
  }
  auto n = std::make_shared<Node>();
  n->text = symbol.name;
  if (!children.empty()) {
    n->text += '(';
    std::size_t h = 0;
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) n->text += ',';
      n->text += children[i].str();
      h = std::max(h, children[i].height());
      n->size += children[i].size();
      n->max_var = std::max(n->max_var, children[i].max_var());
    }
    n->text += ')';
    n->height = h + 1;
  }
  n->symbol = std::move(symbol);
  n->children = std::move(children);
  return Term(std::move(n));
}

Term Term::constant(std::string name) { return app(Symbol{std::move(name), 0}, {}); }

bool Term::is_linear() const {
  auto occ = var_occurrences();
  std::sort(occ.begin(), occ.end());
  return std::adjacent_find(occ.begin(), occ.end()) == occ.end();
}

std::set<std::size_t> Term::vars() const {
  auto occ = var_occurrences();
  return {occ.begin(), occ.end()};
}

std::vector<std::size_t> Term::var_occurrences() const {
  std::vector<std::size_t> out;
  if (is_ground()) return out;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_var()) {
      out.push_back(t.var_index());
      return;
    }
    for (const auto& c : t.children()) {
      if (!c.is_ground()) walk(c);
    }
  };
  walk(*this);
  return out;
}

void Term::collect_symbols(RankedAlphabet& into) const {
  if (is_var()) return;
  into.add(symbol());
  for (const auto& c : children()) c.collect_symbols(into);
}

// ---------------------------------------------------------------------------
// Substitution

const Term* Substitution::lookup(std::size_t var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += "x" + std::to_string(v) + "↦" + t.str();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Positions and replacement

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  std::function<void(const Term&, Position&)> walk = [&](const Term& u, Position& at) {
    out.push_back(at);
    for (std::size_t i = 0; i < u.arity(); ++i) {
      at.path.push_back(i + 1);
      walk(u.children()[i], at);
      at.path.pop_back();
    }
  };
  Position root;
  walk(t, root);
  return out;
}

bool is_valid_position(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (std::size_t step : pos.path) {
    if (step == 0 || step > cur->arity()) return false;
    cur = &cur->children()[step - 1];
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (std::size_t step : pos.path) {
    if (step == 0 || step > cur->arity()) {
      throw Error(ErrorKind::InvalidPosition,
                  "position " + pos.to_string() + " is not in " + t.str());
    }
    cur = &cur->children()[step - 1];
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& pos, std::size_t depth, const Term& r) {
  if (depth == pos.path.size()) return r;
  std::size_t step = pos.path[depth];
  if (step == 0 || step > t.arity()) {
    throw Error(ErrorKind::InvalidPosition, "position " + pos.to_string() + " is not valid");
  }
  std::vector<Term> kids(t.children().begin(), t.children().end());
  kids[step - 1] = replace_from(kids[step - 1], pos, depth + 1, r);
  return Term::app(t.symbol(), std::move(kids));
}

}  // namespace

Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  return replace_from(t, pos, 0, replacement);
}

// ---------------------------------------------------------------------------
// Substitution application, matching, unification

Term apply(const Substitution& sigma, const Term& t) {
  if (t.is_ground() || sigma.empty()) return t;
  if (t.is_var()) {
    const Term* bound = sigma.lookup(t.var_index());
    return bound ? *bound : t;
  }
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(apply(sigma, c));
  return Term::app(t.symbol(), std::move(kids));
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_var()) {
    if (const Term* bound = sigma.lookup(pattern.var_index())) return *bound == subject;
    sigma.bind(pattern.var_index(), subject);
    return true;
  }
  if (subject.is_var() || pattern.symbol() != subject.symbol()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.children()[i], subject.children()[i], sigma)) return false;
  }
  return true;
}

bool occurs(std::size_t var, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_var()) return t.var_index() == var;
  for (const auto& c : t.children()) {
    if (occurs(var, c)) return true;
  }
  return false;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

std::optional<Substitution> mgu(const Term& s, const Term& t) {
  // Bindings are kept fully resolved, so the result is idempotent.
  std::map<std::size_t, Term> bound;
  std::vector<std::pair<Term, Term>> work{{s, t}};
  auto resolve = [&](const Term& u) {
    Substitution cur;
    for (const auto& [v, b] : bound) cur.bind(v, b);
    return apply(cur, u);
  };
  auto bind = [&](std::size_t v, const Term& value) {
    Substitution single{{v, value}};
    for (auto& [w, b] : bound) b = apply(single, b);
    bound.insert_or_assign(v, value);
  };
  while (!work.empty()) {
    auto [a0, b0] = work.back();
    work.pop_back();
    Term a = resolve(a0);
    Term b = resolve(b0);
    if (a == b) continue;
    if (b.is_var()) {
      if (occurs(b.var_index(), a)) return std::nullopt;
      bind(b.var_index(), a);
    } else if (a.is_var()) {
      if (occurs(a.var_index(), b)) return std::nullopt;
      bind(a.var_index(), b);
    } else {
      if (a.symbol() != b.symbol()) return std::nullopt;
      // Push in reverse so children are processed left to right.
      for (std::size_t i = a.arity(); i-- > 0;) work.emplace_back(a.children()[i], b.children()[i]);
    }
  }
  Substitution out;
  for (const auto& [v, b] : bound) out.bind(v, b);
  return out;
}

// ---------------------------------------------------------------------------
// Supertrees

namespace {

// Shapes use x1 as a placeholder for every cut; numbering happens afterwards.
std::vector<Term> supertree_shapes(const Term& v) {
  std::vector<Term> out{Term::var(1)};
  if (v.is_var()) return out;
  std::vector<std::vector<Term>> options;
  options.reserve(v.arity());
  for (const auto& c : v.children()) options.push_back(supertree_shapes(c));
  std::vector<std::size_t> idx(v.arity(), 0);
  while (true) {
    std::vector<Term> kids;
    kids.reserve(v.arity());
    for (std::size_t i = 0; i < v.arity(); ++i) kids.push_back(options[i][idx[i]]);
    out.push_back(Term::app(v.symbol(), std::move(kids)));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

Term number_cuts(const Term& t, std::size_t& next) {
  if (t.is_var()) return Term::var(next++);
  if (t.is_ground()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(number_cuts(c, next));
  return Term::app(t.symbol(), std::move(kids));
}

}  // namespace

TermSet supertrees(const Term& v, std::size_t fresh_from) {
  if (fresh_from == 0) fresh_from = 1;
  TermSet out;
  for (const auto& shape : supertree_shapes(v)) {
    std::size_t next = fresh_from;
    out.insert(number_cuts(shape, next));
  }
  return out;
}

TermSet subterms(const Term& t) {
  TermSet out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (!out.insert(u).second) return;
    for (const auto& c : u.children()) walk(c);
  };
  walk(t);
  return out;
}

TermSet subterms(const TermSet& terms) {
  TermSet out;
  for (const auto& t : terms) out.merge(subterms(t));
  return out;
}

Term normalize_vars(const Term& t, std::size_t offset) {
  Substitution rename;
  std::size_t next = offset + 1;
  for (std::size_t v : t.var_occurrences()) {
    if (!rename.lookup(v)) rename.bind(v, Term::var(next++));
  }
  return apply(rename, t);
}

Term shift_vars(const Term& t, std::size_t offset) {
  if (offset == 0 || t.is_ground()) return t;
  Substitution rename;
  for (std::size_t v : t.vars()) rename.bind(v, Term::var(v + offset));
  return apply(rename, t);
}

// ---------------------------------------------------------------------------
// Ground encodings

Term to_ground_z(const Term& t, std::span<const Symbol> z, const RankedAlphabet& base) {
  for (const auto& s : z) {
    if (s.arity != 0) throw Error(ErrorKind::BadEncodingSymbols, "'" + s.name + "' is not nullary");
    if (base.contains_name(s.name)) {
      throw Error(ErrorKind::AlphabetClash, "'" + s.name + "' already occurs in the alphabet");
    }
  }
  if (t.max_var() > z.size()) {
    throw Error(ErrorKind::BadEncodingSymbols, "need at least " + std::to_string(t.max_var()) +
                                                   " fresh constants, got " +
                                                   std::to_string(z.size()));
  }
  Substitution sigma;
  for (std::size_t v : t.vars()) sigma.bind(v, Term::app(z[v - 1], {}));
  return apply(sigma, t);
}

Term from_ground_z(const Term& t, std::span<const Symbol> z) {
  if (t.is_var()) return t;
  if (t.arity() == 0) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (t.symbol() == z[i]) return Term::var(i + 1);
    }
    return t;
  }
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(from_ground_z(c, z));
  return Term::app(t.symbol(), std::move(kids));
}

Term to_ground_g(const Term& t, const Symbol& g, const Symbol& sharp) {
  if (g.arity < 1 || sharp.arity != 0) {
    throw Error(ErrorKind::BadEncodingSymbols,
                "need arity(" + g.name + ") >= 1 and arity(" + sharp.name + ") == 0");
  }
  const Term leaf = Term::app(sharp, {});
  Substitution sigma;
  for (std::size_t v : t.vars()) {
    Term spine = leaf;
    for (std::size_t k = 0; k < v; ++k) {
      std::vector<Term> kids(g.arity, leaf);
      kids[0] = spine;
      spine = Term::app(g, std::move(kids));
    }
    sigma.bind(v, spine);
  }
  return apply(sigma, t);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',';
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_all() {
    Term t = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(text_) + "'");
  }

  std::string name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) {
      if (text_.compare(pos_, 2, "->") == 0) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a symbol or variable");
    return std::string(text_.substr(start, pos_ - start));
  }

  static std::optional<std::size_t> variable_index(const std::string& n) {
    if (n.size() < 2 || n[0] != 'x') return std::nullopt;
    if (!std::all_of(n.begin() + 1, n.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return std::nullopt;
    }
    return std::stoul(n.substr(1));
  }

  Term parse() {
    std::string n = name();
    skip_ws();
    bool has_args = pos_ < text_.size() && text_[pos_] == '(';
    if (auto v = variable_index(n)) {
      if (has_args) fail("variable '" + n + "' cannot take arguments");
      if (*v == 0) fail("variable indices start at 1");
      return Term::var(*v);
    }
    std::vector<Term> kids;
    if (has_args) {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          kids.push_back(parse());
          skip_ws();
          if (pos_ >= text_.size()) fail("unterminated argument list");
          if (text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    const std::size_t arity = kids.size();
    return Term::app(Symbol{std::move(n), arity}, std::move(kids));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  Term t = TermParser(text).parse_all();
  RankedAlphabet used;
  t.collect_symbols(used);
  return t;
}

Term parse_term(std::string_view text, const RankedAlphabet& alphabet) {
  Term t = parse_term(text);
  RankedAlphabet used;
  t.collect_symbols(used);
  for (const auto& s : used.symbols()) {
    auto a = alphabet.arity_of(s.name);
    if (!a) throw Error(ErrorKind::UnknownSymbol, "symbol '" + s.name + "' is not declared");
    if (*a != s.arity) {
      throw Error(ErrorKind::ArityMismatch, "symbol '" + s.name + "' declared with arity " +
                                                std::to_string(*a) + ", used with " +
                                                std::to_string(s.arity));
    }
  }
  return t;
}

TermSet parse_language(std::string_view text) {
  TermSet out;
  RankedAlphabet seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto c = line.find('%'); c != std::string_view::npos) line = line.substr(0, c);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Term t = parse_term(line);
    if (!t.is_ground()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": term " + t.str() +
                                        " is not ground");
    }
    t.collect_symbols(seen);
    out.insert(t);
  }
  return out;
}

}  // namespace trsta
