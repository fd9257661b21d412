#include "trsta/automaton.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace trsta {

namespace {

void insert_sorted(StateSet& set, StateId q) {
  auto it = std::lower_bound(set.begin(), set.end(), q);
  if (it == set.end() || *it != q) set.insert(it, q);
}

bool contains(const StateSet& set, StateId q) { return std::binary_search(set.begin(), set.end(), q); }

std::string join_names(const Bta& a, const StateSet& states, const char* open, const char* close) {
  std::string out = open;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += ',';
    out += a.state_name(states[i]);
  }
  return out + close;
}

RankedAlphabet merged_alphabet(const RankedAlphabet& a, const RankedAlphabet& b) {
  RankedAlphabet out = a;
  try {
    out.merge(b);
  } catch (const Error& e) {
    throw Error(ErrorKind::AlphabetMismatch, e.what());
  }
  return out;
}

// Calls `visit` for every tuple in [0,n)^arity; stops early when it returns false.
void for_each_tuple(std::size_t n, std::size_t arity,
                    const std::function<bool(const std::vector<StateId>&)>& visit) {
  std::vector<StateId> tuple(arity, 0);
  if (arity > 0 && n == 0) return;
  while (true) {
    if (!visit(tuple)) return;
    std::size_t k = 0;
    while (k < arity && ++tuple[k] == n) tuple[k++] = 0;
    if (k == arity) return;
  }
}

}  // namespace

std::string term_state_name(const Term& t) { return "⟨" + t.str() + "⟩"; }

// ---------------------------------------------------------------------------
// Bta

std::optional<StateId> Bta::find_state(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> Bta::transitions_of(std::string_view name) const {
  auto it = by_symbol_.find(name);
  if (it == by_symbol_.end()) return {};
  return it->second;
}

bool Bta::is_deterministic() const {
  if (!lambdas_.empty()) return false;
  for (std::size_t i = 1; i < transitions_.size(); ++i) {
    const auto& p = transitions_[i - 1];
    const auto& t = transitions_[i];
    if (p.symbol == t.symbol && p.args == t.args) return false;
  }
  return true;
}

std::string Bta::transition_line(const Transition& t) const {
  std::string out = t.symbol.name;
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      out += names_[t.args[i]];
    }
    out += ')';
  }
  return out + " -> " + names_[t.target];
}

std::string Bta::lambda_line(const LambdaTransition& l) const {
  return names_[l.from] + " -> " + names_[l.to];
}

std::vector<std::string> Bta::transition_lines() const {
  std::vector<std::string> lines;
  lines.reserve(transitions_.size() + lambdas_.size());
  for (const auto& t : transitions_) lines.push_back(transition_line(t));
  for (const auto& l : lambdas_) lines.push_back(lambda_line(l));
  std::sort(lines.begin(), lines.end());
  return lines;
}

// ---------------------------------------------------------------------------
// BtaBuilder

StateId BtaBuilder::state(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<StateId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

void BtaBuilder::add(const Symbol& symbol, std::vector<StateId> args, StateId target) {
  if (args.size() != symbol.arity) {
    throw Error(ErrorKind::ArityMismatch, "transition for '" + symbol.name + "' has " +
                                              std::to_string(args.size()) + " arguments");
  }
  alphabet_.add(symbol);
  transitions_.push_back(Transition{symbol, std::move(args), target});
}

void BtaBuilder::add_lambda(StateId from, StateId to) {
  if (from != to) lambdas_.push_back(LambdaTransition{from, to});
}

void BtaBuilder::set_final(StateId q) { finals_.push_back(q); }

Bta BtaBuilder::build() const {
  Bta a;
  a.alphabet_ = alphabet_;
  std::vector<StateId> order(names_.size());
  for (StateId i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](StateId x, StateId y) { return names_[x] < names_[y]; });
  std::vector<StateId> remap(names_.size());
  for (StateId pos = 0; pos < order.size(); ++pos) {
    remap[order[pos]] = pos;
    a.names_.push_back(names_[order[pos]]);
    a.index_.emplace(names_[order[pos]], pos);
  }

  for (const auto& t : transitions_) {
    Transition r{t.symbol, {}, remap[t.target]};
    for (StateId q : t.args) r.args.push_back(remap[q]);
    a.transitions_.push_back(std::move(r));
  }
  auto key = [](const Transition& t) { return std::tie(t.symbol, t.args, t.target); };
  std::sort(a.transitions_.begin(), a.transitions_.end(),
            [&](const Transition& x, const Transition& y) { return key(x) < key(y); });
  a.transitions_.erase(std::unique(a.transitions_.begin(), a.transitions_.end()),
                       a.transitions_.end());

  for (const auto& l : lambdas_) a.lambdas_.push_back({remap[l.from], remap[l.to]});
  std::sort(a.lambdas_.begin(), a.lambdas_.end(), [](const auto& x, const auto& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  a.lambdas_.erase(std::unique(a.lambdas_.begin(), a.lambdas_.end()), a.lambdas_.end());

  a.is_final_.assign(a.names_.size(), false);
  for (StateId q : finals_) {
    a.is_final_[remap[q]] = true;
  }
  for (StateId q = 0; q < a.names_.size(); ++q) {
    if (a.is_final_[q]) a.finals_.push_back(q);
  }

  for (std::size_t i = 0; i < a.transitions_.size(); ++i) {
    a.by_symbol_[a.transitions_[i].symbol.name].push_back(i);
  }

  std::vector<std::vector<StateId>> succ(a.names_.size());
  for (const auto& l : a.lambdas_) succ[l.from].push_back(l.to);
  a.closure_.resize(a.names_.size());
  for (StateId q = 0; q < a.names_.size(); ++q) {
    std::vector<bool> seen(a.names_.size(), false);
    std::vector<StateId> stack{q};
    seen[q] = true;
    while (!stack.empty()) {
      StateId p = stack.back();
      stack.pop_back();
      a.closure_[q].push_back(p);
      for (StateId n : succ[p]) {
        if (!seen[n]) {
          seen[n] = true;
          stack.push_back(n);
        }
      }
    }
    std::sort(a.closure_[q].begin(), a.closure_[q].end());
  }
  return a;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

StateSet close_under_lambda(const Bta& a, const StateSet& states) {
  if (!a.has_lambdas()) return states;
  StateSet out;
  for (StateId q : states) {
    for (StateId p : a.lambda_closure(q)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StateSet evaluate(const Bta& a, const Term& t, std::span<const StateSet> var_states) {
  if (t.is_var()) {
    const std::size_t i = t.var_index();
    if (i == 0 || i > var_states.size()) return {};
    StateSet given = var_states[i - 1];
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    return close_under_lambda(a, given);
  }
  if (!a.alphabet().contains(t.symbol())) {
    throw Error(ErrorKind::ForeignSymbol, "symbol '" + t.symbol().name + "/" +
                                              std::to_string(t.symbol().arity) +
                                              "' is not in the automaton's alphabet");
  }
  std::vector<StateSet> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) {
    kids.push_back(evaluate(a, c, var_states));
    if (kids.back().empty()) return {};
  }
  StateSet out;
  for (std::size_t idx : a.transitions_of(t.symbol().name)) {
    const Transition& tr = a.transitions()[idx];
    if (tr.args.size() != kids.size()) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < kids.size(); ++i) ok = contains(kids[i], tr.args[i]);
    if (ok) insert_sorted(out, tr.target);
  }
  return close_under_lambda(a, out);
}

}  // namespace

StateSet reachable_states(const Bta& a, const Term& t, std::span<const StateSet> var_states) {
  return evaluate(a, t, var_states);
}

bool accepts(const Bta& a, const Term& t) {
  for (StateId q : evaluate(a, t, {})) {
    if (a.is_final(q)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Constructions

Bta fundamental_bta(const TermSet& language, const RankedAlphabet& alphabet) {
  BtaBuilder b(alphabet);
  for (const auto& p : subterms(language)) {
    if (!p.is_ground()) throw Error(ErrorKind::Parse, "language term " + p.str() + " is not ground");
    std::vector<StateId> args;
    for (const auto& c : p.children()) args.push_back(b.state(term_state_name(c)));
    b.add(p.symbol(), std::move(args), b.state(term_state_name(p)));
  }
  for (const auto& p : language) b.set_final(b.state(term_state_name(p)));
  return b.build();
}

namespace {

// Copies the declared states of `a` into a fresh builder (ids coincide).
BtaBuilder builder_with_states(const Bta& a) {
  BtaBuilder b(a.alphabet());
  for (const auto& n : a.state_names()) b.state(n);
  for (StateId q : a.finals()) b.set_final(q);
  return b;
}

}  // namespace

Bta eliminate_lambda(const Bta& a) {
  if (!a.has_lambdas()) return a;
  BtaBuilder b = builder_with_states(a);
  for (const auto& t : a.transitions()) {
    for (StateId q : a.lambda_closure(t.target)) b.add(t.symbol, t.args, q);
  }
  return b.build();
}

namespace {

std::vector<bool> accessible_states(const Bta& a) {
  std::vector<bool> acc(a.state_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : a.transitions()) {
      if (acc[t.target]) continue;
      if (!std::all_of(t.args.begin(), t.args.end(), [&](StateId q) { return acc[q]; })) continue;
      for (StateId q : a.lambda_closure(t.target)) {
        if (!acc[q]) {
          acc[q] = true;
          changed = true;
        }
      }
    }
  }
  return acc;
}

}  // namespace

Bta trim(const Bta& a) {
  const auto acc = accessible_states(a);
  std::vector<bool> co(a.state_count(), false);
  for (StateId q : a.finals()) co[q] = acc[q];
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& l : a.lambdas()) {
      if (co[l.to] && acc[l.from] && !co[l.from]) co[l.from] = changed = true;
    }
    for (const auto& t : a.transitions()) {
      if (!co[t.target]) continue;
      if (!std::all_of(t.args.begin(), t.args.end(), [&](StateId q) { return acc[q]; })) continue;
      for (StateId q : t.args) {
        if (!co[q]) co[q] = changed = true;
      }
    }
  }
  auto keep = [&](StateId q) { return acc[q] && co[q]; };
  BtaBuilder b(a.alphabet());
  std::vector<StateId> id(a.state_count(), 0);
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (keep(q)) id[q] = b.state(a.state_name(q));
  }
  for (StateId q : a.finals()) {
    if (keep(q)) b.set_final(id[q]);
  }
  for (const auto& t : a.transitions()) {
    if (!keep(t.target)) continue;
    if (!std::all_of(t.args.begin(), t.args.end(), keep)) continue;
    std::vector<StateId> args;
    for (StateId q : t.args) args.push_back(id[q]);
    b.add(t.symbol, std::move(args), id[t.target]);
  }
  for (const auto& l : a.lambdas()) {
    if (keep(l.from) && keep(l.to)) b.add_lambda(id[l.from], id[l.to]);
  }
  return b.build();
}

Bta with_alphabet(const Bta& a, const RankedAlphabet& extra) {
  BtaBuilder b = builder_with_states(a);
  b.extend_alphabet(extra);
  for (const auto& t : a.transitions()) b.add(t.symbol, t.args, t.target);
  for (const auto& l : a.lambdas()) b.add_lambda(l.from, l.to);
  return b.build();
}

bool is_empty(const Bta& a) {
  const auto acc = accessible_states(a);
  return std::none_of(a.finals().begin(), a.finals().end(), [&](StateId q) { return acc[q]; });
}

Bta intersection(const Bta& a0, const Bta& b0) {
  const RankedAlphabet alphabet = merged_alphabet(a0.alphabet(), b0.alphabet());
  const Bta a = eliminate_lambda(a0);
  const Bta b = eliminate_lambda(b0);
  BtaBuilder out(alphabet);
  std::map<std::pair<StateId, StateId>, StateId> pairs;
  auto pair_state = [&](StateId p, StateId q) {
    auto [it, inserted] = pairs.emplace(std::make_pair(p, q), 0);
    if (inserted) {
      it->second = out.state("[" + a.state_name(p) + "," + b.state_name(q) + "]");
      if (a.is_final(p) && b.is_final(q)) out.set_final(it->second);
    }
    return std::make_pair(it->second, inserted);
  };
  std::set<std::pair<std::size_t, std::size_t>> fired;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < a.transitions().size(); ++i) {
      const Transition& ta = a.transitions()[i];
      for (std::size_t j : b.transitions_of(ta.symbol.name)) {
        const Transition& tb = b.transitions()[j];
        if (tb.symbol != ta.symbol || fired.count({i, j})) continue;
        std::vector<StateId> args;
        bool ok = true;
        for (std::size_t k = 0; ok && k < ta.args.size(); ++k) {
          auto it = pairs.find({ta.args[k], tb.args[k]});
          ok = it != pairs.end();
          if (ok) args.push_back(it->second);
        }
        if (!ok) continue;
        fired.insert({i, j});
        auto [target, fresh] = pair_state(ta.target, tb.target);
        out.add(ta.symbol, std::move(args), target);
        changed = true;
        (void)fresh;
      }
    }
  }
  return out.build();
}

Bta determinize(const Bta& a0) {
  const Bta a = eliminate_lambda(a0);
  const std::size_t n = a.state_count();
  BtaBuilder out(a.alphabet());
  std::vector<StateSet> subsets;
  std::vector<std::vector<bool>> member;
  std::map<StateSet, StateId> ids;
  auto subset_state = [&](const StateSet& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    const StateId id = out.state(join_names(a, s, "{", "}"));
    ids.emplace(s, id);
    subsets.push_back(s);
    std::vector<bool> bits(n, false);
    for (StateId q : s) bits[q] = true;
    member.push_back(std::move(bits));
    if (std::any_of(s.begin(), s.end(), [&](StateId q) { return a.is_final(q); })) out.set_final(id);
    return id;
  };
  // Builder ids and subset indices coincide because subsets are only created here.
  std::size_t done = 0;
  bool first_pass = true;
  while (first_pass || done < subsets.size()) {
    const std::size_t upto = subsets.size();
    for (const auto& sym : a.alphabet().symbols()) {
      const auto trans = a.transitions_of(sym.name);
      if (trans.empty()) continue;
      if (sym.arity == 0) {
        if (!first_pass) continue;
        StateSet target;
        for (std::size_t idx : trans) insert_sorted(target, a.transitions()[idx].target);
        out.add(sym, {}, subset_state(target));
        continue;
      }
      for_each_tuple(upto, sym.arity, [&](const std::vector<StateId>& tuple) {
        // Only tuples touching a subset discovered in the previous pass are new.
        if (std::all_of(tuple.begin(), tuple.end(), [&](StateId s) { return s < done; })) return true;
        StateSet target;
        for (std::size_t idx : trans) {
          const Transition& t = a.transitions()[idx];
          bool ok = true;
          for (std::size_t k = 0; ok && k < tuple.size(); ++k) ok = member[tuple[k]][t.args[k]];
          if (ok) insert_sorted(target, t.target);
        }
        if (!target.empty()) out.add(sym, tuple, subset_state(target));
        return true;
      });
    }
    done = upto;
    first_pass = false;
  }
  return out.build();
}

Bta complete(const Bta& a0) {
  const Bta a = a0.is_deterministic() ? a0 : determinize(a0);
  BtaBuilder out = builder_with_states(a);
  for (const auto& t : a.transitions()) out.add(t.symbol, t.args, t.target);
  std::set<std::pair<std::string, std::vector<StateId>>> defined;
  for (const auto& t : a.transitions()) defined.emplace(t.symbol.name, t.args);
  const std::size_t n = a.state_count();
  std::optional<StateId> sink;
  auto sink_id = [&] {
    if (!sink) sink = out.state("⊥");
    return *sink;
  };
  // First pass finds whether a sink is needed at all; the sink then takes part in tuples.
  for (const auto& sym : a.alphabet().symbols()) {
    for_each_tuple(n, sym.arity, [&](const std::vector<StateId>& tuple) {
      if (!defined.count({sym.name, tuple})) {
        sink_id();
        return false;
      }
      return true;
    });
    if (sink) break;
  }
  if (!sink) return a;
  const std::size_t m = n + 1;
  for (const auto& sym : a.alphabet().symbols()) {
    for_each_tuple(m, sym.arity, [&](const std::vector<StateId>& tuple) {
      if (!defined.count({sym.name, tuple})) out.add(sym, tuple, *sink);
      return true;
    });
  }
  return out.build();
}

Bta complement(const Bta& a) {
  const Bta c = complete(a);
  BtaBuilder out(c.alphabet());
  for (const auto& name : c.state_names()) out.state(name);
  for (StateId q = 0; q < c.state_count(); ++q) {
    if (!c.is_final(q)) out.set_final(q);
  }
  for (const auto& t : c.transitions()) out.add(t.symbol, t.args, t.target);
  return out.build();
}

bool equivalent(const Bta& a, const Bta& b) {
  const RankedAlphabet alphabet = merged_alphabet(a.alphabet(), b.alphabet());
  const Bta ea = with_alphabet(a, alphabet);
  const Bta eb = with_alphabet(b, alphabet);
  return is_empty(intersection(ea, complement(eb))) && is_empty(intersection(eb, complement(ea)));
}

// ---------------------------------------------------------------------------
// Enumeration

TermSet enumerate(const Bta& a0, std::size_t max_height) {
  const Bta a = trim(eliminate_lambda(a0));
  std::vector<TermSet> reach(a.state_count());
  for (std::size_t h = 0; h <= max_height; ++h) {
    std::vector<TermSet> next = reach;
    for (const auto& t : a.transitions()) {
      if (t.args.empty()) {
        next[t.target].insert(Term::app(t.symbol, {}));
        continue;
      }
      if (h == 0) continue;
      std::vector<std::vector<Term>> pools;
      bool ok = true;
      for (StateId q : t.args) {
        pools.emplace_back(reach[q].begin(), reach[q].end());
        ok = ok && !pools.back().empty();
      }
      if (!ok) continue;
      std::vector<std::size_t> idx(pools.size(), 0);
      while (true) {
        std::vector<Term> kids;
        kids.reserve(pools.size());
        for (std::size_t k = 0; k < pools.size(); ++k) kids.push_back(pools[k][idx[k]]);
        next[t.target].insert(Term::app(t.symbol, std::move(kids)));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
    reach = std::move(next);
  }
  TermSet out;
  for (StateId q : a.finals()) out.insert(reach[q].begin(), reach[q].end());
  return out;
}

std::optional<Term> shortest_accepted(const Bta& a0) {
  const Bta a = eliminate_lambda(a0);
  std::vector<std::optional<Term>> best(a.state_count());
  auto better = [](const Term& x, const Term& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : a.transitions()) {
      std::vector<Term> kids;
      bool ok = true;
      for (StateId q : t.args) {
        if (!best[q]) {
          ok = false;
          break;
        }
        kids.push_back(*best[q]);
      }
      if (!ok) continue;
      Term candidate = Term::app(t.symbol, std::move(kids));
      if (!best[t.target] || better(candidate, *best[t.target])) {
        best[t.target] = candidate;
        changed = true;
      }
    }
  }
  std::optional<Term> out;
  for (StateId q : a.finals()) {
    if (best[q] && (!out || better(*best[q], *out))) out = best[q];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

std::string format_bta(const Bta& a) {
  std::string out = "states";
  for (const auto& n : a.state_names()) out += " " + n;
  out += "\nfinal";
  for (StateId q : a.finals()) out += " " + a.state_name(q);
  out += "\n";
  for (const auto& line : a.transition_lines()) out += line + "\n";
  return out;
}

namespace {

const std::string kOpenAngle = "⟨";
const std::string kCloseAngle = "⟩";

std::string trim_ws(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Splits on `sep` occurrences outside (), [], {} and ⟨⟩.
std::vector<std::string> split_top_level(std::string_view s, std::string_view sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size();) {
    if (s.compare(i, kOpenAngle.size(), kOpenAngle) == 0) {
      ++depth;
      i += kOpenAngle.size();
      continue;
    }
    if (s.compare(i, kCloseAngle.size(), kCloseAngle) == 0) {
      --depth;
      i += kCloseAngle.size();
      continue;
    }
    const char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth == 0 && s.compare(i, sep.size(), sep) == 0) {
      parts.emplace_back(s.substr(start, i - start));
      i += sep.size();
      start = i;
      continue;
    }
    ++i;
  }
  parts.emplace_back(s.substr(start));
  return parts;
}

}  // namespace

Bta parse_bta(std::string_view text) {
  BtaBuilder b;
  std::set<std::string> declared;
  std::vector<std::string> finals;
  std::size_t line_no = 0;
  std::size_t start = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "automaton line " + std::to_string(line_no) + ": " + what);
  };
  struct Pending {
    std::string lhs, rhs;
    std::size_t line;
  };
  std::vector<Pending> pending;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (auto c = line.find('%'); c != std::string::npos) line.erase(c);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    if (head == "states" || head == "final" || head == "sig") {
      std::string w;
      while (words >> w) {
        if (head == "states") {
          declared.insert(w);
          b.state(w);
        } else if (head == "final") {
          finals.push_back(w);
        } else {
          auto colon = w.rfind(':');
          if (colon == std::string::npos || colon == 0) fail("malformed signature entry '" + w + "'");
          try {
            b.extend_alphabet(RankedAlphabet{Symbol{w.substr(0, colon), std::stoul(w.substr(colon + 1))}});
          } catch (const std::exception& e) {
            fail(e.what());
          }
        }
      }
      continue;
    }
    auto sides = split_top_level(line, "->");
    if (sides.size() != 2) fail("expected 'lhs -> state'");
    pending.push_back({trim_ws(sides[0]), trim_ws(sides[1]), line_no});
  }
  for (const auto& f : finals) b.set_final(b.state(f));
  for (const auto& p : pending) {
    line_no = p.line;
    if (p.rhs.empty()) fail("missing target state");
    const StateId target = b.state(p.rhs);
    if (declared.count(p.lhs)) {
      b.add_lambda(b.state(p.lhs), target);
      continue;
    }
    const auto open = p.lhs.find('(');
    std::string name = trim_ws(p.lhs.substr(0, open));
    if (name.empty()) fail("missing symbol");
    std::vector<StateId> args;
    if (open != std::string::npos) {
      if (p.lhs.back() != ')') fail("unterminated argument list");
      const std::string inner = p.lhs.substr(open + 1, p.lhs.size() - open - 2);
      if (!trim_ws(inner).empty()) {
        for (const auto& arg : split_top_level(inner, ",")) {
          const std::string s = trim_ws(arg);
          if (s.empty()) fail("empty argument");
          args.push_back(b.state(s));
        }
      }
    }
    try {
      const std::size_t arity = args.size();
      b.add(Symbol{name, arity}, std::move(args), target);
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return b.build();
}

}  // namespace trsta
