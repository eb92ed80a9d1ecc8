#include "chancodes/automaton.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "chancodes/error.hpp"

namespace chancodes {

namespace {

using StateSet = std::vector<StateId>;

std::uint64_t add_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("word count exceeds 64 bits");
  return r;
}

void check_word(const Alphabet& alphabet, const Word& word) {
  for (Symbol s : word)
    if (s >= alphabet.size()) throw InvalidArgument("word contains a symbol outside the alphabet");
}

void check_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw InvalidArgument("alphabet mismatch");
}

StateSet epsilon_closure(const Nfa& a, StateSet set) {
  std::vector<char> seen(a.num_states(), 0);
  std::vector<StateId> stack;
  for (StateId s : set) {
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  }
  set.clear();
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    set.push_back(s);
    for (const Arc& arc : a.arcs(s)) {
      if (arc.label == kEpsilon && !seen[arc.target]) {
        seen[arc.target] = 1;
        stack.push_back(arc.target);
      }
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

StateSet step(const Nfa& a, const StateSet& set, Symbol symbol) {
  StateSet next;
  for (StateId s : set)
    for (const Arc& arc : a.arcs(s))
      if (arc.label == symbol) next.push_back(arc.target);
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return epsilon_closure(a, std::move(next));
}

bool any_final(const Nfa& a, const StateSet& set) {
  return std::any_of(set.begin(), set.end(), [&](StateId s) { return a.is_final(s); });
}

/// Reverse topological order of the states reachable from `d.initial()`;
/// nullopt when a reachable cycle exists.
std::optional<std::vector<StateId>> reverse_topological(const Dfa& d) {
  std::vector<StateId> order;
  if (d.initial() == kNoState) return order;
  const std::size_t k = d.alphabet().size();
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<char> mark(d.num_states(), 0);
  std::vector<std::pair<StateId, Symbol>> stack{{d.initial(), 0}};
  mark[d.initial()] = 1;
  while (!stack.empty()) {
    auto& [s, sym] = stack.back();
    if (sym == k) {
      mark[s] = 2;
      order.push_back(s);
      stack.pop_back();
      continue;
    }
    StateId t = d.next(s, sym++);
    if (t == kNoState) continue;
    if (mark[t] == 1) return std::nullopt;
    if (mark[t] == 0) {
      mark[t] = 1;
      stack.emplace_back(t, 0);
    }
  }
  return order;
}

}  // namespace

// Nfa -----------------------------------------------------------------------

Nfa::Nfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

StateId Nfa::add_state(bool initial, bool final) {
  arcs_.emplace_back();
  initial_.push_back(initial);
  final_.push_back(final);
  return static_cast<StateId>(arcs_.size() - 1);
}

void Nfa::check_state(StateId s) const {
  if (s >= arcs_.size()) throw InvalidArgument("state " + std::to_string(s) + " does not exist");
}

void Nfa::add_arc(StateId from, Symbol label, StateId to) {
  check_state(from);
  check_state(to);
  if (label != kEpsilon && label >= alphabet_.size())
    throw InvalidArgument("arc label outside the alphabet");
  arcs_[from].push_back({label, to});
}

void Nfa::set_initial(StateId s, bool value) {
  check_state(s);
  initial_[s] = value;
}

void Nfa::set_final(StateId s, bool value) {
  check_state(s);
  final_[s] = value;
}

std::size_t Nfa::num_arcs() const {
  std::size_t n = 0;
  for (const auto& v : arcs_) n += v.size();
  return n;
}

std::vector<StateId> Nfa::initial_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < initial_.size(); ++s)
    if (initial_[s]) out.push_back(s);
  return out;
}

std::vector<StateId> Nfa::final_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < final_.size(); ++s)
    if (final_[s]) out.push_back(s);
  return out;
}

bool Nfa::has_epsilon() const {
  for (const auto& v : arcs_)
    for (const Arc& arc : v)
      if (arc.label == kEpsilon) return true;
  return false;
}

std::size_t Nfa::size() const {
  std::size_t n = num_states();
  for (const auto& v : arcs_)
    for (const Arc& arc : v) n += arc.label == kEpsilon ? 1 : 2;
  return n;
}

// Dfa -----------------------------------------------------------------------

Dfa::Dfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

StateId Dfa::add_state(bool final) {
  final_.push_back(final);
  delta_.resize(delta_.size() + alphabet_.size(), kNoState);
  return static_cast<StateId>(final_.size() - 1);
}

void Dfa::set_initial(StateId s) {
  if (s >= num_states()) throw InvalidArgument("initial state does not exist");
  initial_ = s;
}

void Dfa::set_final(StateId s, bool value) {
  if (s >= num_states()) throw InvalidArgument("final state does not exist");
  final_[s] = value;
}

void Dfa::set_transition(StateId from, Symbol symbol, StateId to) {
  if (from >= num_states() || to >= num_states())
    throw InvalidArgument("transition endpoint does not exist");
  if (symbol >= alphabet_.size()) throw InvalidArgument("transition symbol outside the alphabet");
  delta_[static_cast<std::size_t>(from) * alphabet_.size() + symbol] = to;
}

void Dfa::clear_transition(StateId from, Symbol symbol) {
  delta_.at(static_cast<std::size_t>(from) * alphabet_.size() + symbol) = kNoState;
}

std::size_t Dfa::num_arcs() const {
  return static_cast<std::size_t>(
      std::count_if(delta_.begin(), delta_.end(), [](StateId t) { return t != kNoState; }));
}

std::size_t Dfa::size() const { return num_states() + 2 * num_arcs(); }

bool Dfa::accepts(const Word& word) const {
  check_word(alphabet_, word);
  StateId s = initial_;
  for (Symbol sym : word) {
    if (s == kNoState) return false;
    s = next(s, sym);
  }
  return s != kNoState && is_final(s);
}

Nfa Dfa::to_nfa() const {
  Nfa a(alphabet_);
  for (StateId s = 0; s < num_states(); ++s) a.add_state(s == initial_, is_final(s));
  for (StateId s = 0; s < num_states(); ++s)
    for (Symbol sym = 0; sym < alphabet_.size(); ++sym)
      if (StateId t = next(s, sym); t != kNoState) a.add_arc(s, sym, t);
  return a;
}

// Trellis -------------------------------------------------------------------

Trellis::Trellis(Alphabet alphabet, std::size_t length) : dfa_(std::move(alphabet)), length_(length) {
  StateId init = dfa_.add_state(false);
  dfa_.set_initial(init);
  final_ = dfa_.add_state(true);
  in_degree_ = {0, 0};
  paths_ = {0, 1};
}

Trellis Trellis::from_dfa(const Dfa& dfa, std::optional<std::size_t> length) {
  Dfa d = trim(dfa);
  if (d.initial() == kNoState) {
    if (!length) throw InvalidArgument("cannot infer the block length of an empty code");
    return Trellis(dfa.alphabet(), *length);
  }
  auto order = reverse_topological(d);
  if (!order) throw InvalidArgument("trellis automaton contains a cycle");
  const std::size_t k = d.alphabet().size();

  // Every state of a trimmed uniform-length automaton has a unique depth.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> depth(d.num_states(), kUnset);
  depth[d.initial()] = 0;
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    StateId s = *it;
    for (Symbol sym = 0; sym < k; ++sym) {
      StateId t = d.next(s, sym);
      if (t == kNoState) continue;
      if (depth[t] == kUnset) {
        depth[t] = depth[s] + 1;
      } else if (depth[t] != depth[s] + 1) {
        throw InvalidArgument("trellis accepts words of different lengths");
      }
    }
  }
  std::optional<std::size_t> final_depth = length;
  StateId merged = kNoState;
  for (StateId s = 0; s < d.num_states(); ++s) {
    if (!d.is_final(s)) continue;
    if (!final_depth) final_depth = depth[s];
    if (depth[s] != *final_depth)
      throw InvalidArgument("trellis accepts words of length " + std::to_string(depth[s]) +
                            ", expected " + std::to_string(*final_depth));
    if (merged == kNoState) merged = s;
  }

  // Rebuild with all final states merged into one; the original order of the
  // remaining states is kept.
  Trellis t;
  t.length_ = *final_depth;
  t.dfa_ = Dfa(d.alphabet());
  std::vector<StateId> map(d.num_states(), kNoState);
  for (StateId s = 0; s < d.num_states(); ++s) {
    if (d.is_final(s) && s != merged) continue;
    map[s] = t.dfa_.add_state(s == merged);
  }
  for (StateId s = 0; s < d.num_states(); ++s)
    if (d.is_final(s)) map[s] = map[merged];
  t.dfa_.set_initial(map[d.initial()]);
  t.final_ = map[merged];
  t.in_degree_.assign(t.dfa_.num_states(), 0);
  t.paths_.assign(t.dfa_.num_states(), 0);
  for (StateId s = 0; s < d.num_states(); ++s) {
    if (d.is_final(s) && s != merged) continue;
    for (Symbol sym = 0; sym < k; ++sym) {
      StateId nxt = d.next(s, sym);
      if (nxt == kNoState) continue;
      t.dfa_.set_transition(map[s], sym, map[nxt]);
      ++t.in_degree_[map[nxt]];
    }
  }
  for (StateId s : *order) {
    StateId ms = map[s];
    if (ms == t.final_) {
      t.paths_[ms] = 1;
      continue;
    }
    std::uint64_t n = 0;
    for (Symbol sym = 0; sym < k; ++sym)
      if (StateId nxt = t.dfa_.next(ms, sym); nxt != kNoState) n = add_checked(n, t.paths_[nxt]);
    t.paths_[ms] = n;
  }
  return t;
}

bool Trellis::contains(const Word& word) const {
  return word.size() == length_ && dfa_.accepts(word);
}

StateId Trellis::clone_state(StateId s) {
  StateId c = dfa_.add_state(false);
  in_degree_.push_back(0);
  paths_.push_back(paths_[s]);
  for (Symbol sym = 0; sym < alphabet().size(); ++sym) {
    StateId t = dfa_.next(s, sym);
    if (t == kNoState) continue;
    dfa_.set_transition(c, sym, t);
    ++in_degree_[t];
  }
  return c;
}

bool Trellis::add_word(const Word& word) {
  if (word.size() != length_)
    throw InvalidArgument("word of length " + std::to_string(word.size()) +
                          " added to a trellis of length " + std::to_string(length_));
  check_word(alphabet(), word);
  if (contains(word)) return false;

  if (length_ == 0) {
    // The only block code of length 0 besides the empty one is {epsilon}.
    dfa_ = Dfa(alphabet());
    final_ = dfa_.add_state(true);
    dfa_.set_initial(final_);
    in_degree_ = {0};
    paths_ = {1};
    return true;
  }

  // Follow the existing prefix.  A confluence state is cloned before it is
  // entered so that the branch below only adds `word`.
  StateId s = dfa_.initial();
  std::vector<StateId> spine{s};
  std::size_t i = 0;
  for (; i + 1 < length_; ++i) {
    StateId t = dfa_.next(s, word[i]);
    if (t == kNoState) break;
    if (in_degree_[t] > 1) {
      StateId c = clone_state(t);
      dfa_.set_transition(s, word[i], c);
      --in_degree_[t];
      in_degree_[c] = 1;
      t = c;
    }
    s = t;
    spine.push_back(s);
  }
  for (; i + 1 < length_; ++i) {
    StateId t = dfa_.add_state(false);
    in_degree_.push_back(1);
    paths_.push_back(0);
    dfa_.set_transition(s, word[i], t);
    s = t;
    spine.push_back(s);
  }
  dfa_.set_transition(s, word[length_ - 1], final_);
  ++in_degree_[final_];
  for (StateId p : spine) paths_[p] = add_checked(paths_[p], 1);
  return true;
}

Word Trellis::sample(Rng& rng) const {
  if (empty()) throw EmptyLanguageError("cannot sample from an empty code");
  Word word;
  word.reserve(length_);
  StateId s = dfa_.initial();
  while (word.size() < length_) {
    std::uint64_t r = uniform_below(rng, paths_[s]);
    for (Symbol sym = 0; sym < alphabet().size(); ++sym) {
      StateId t = dfa_.next(s, sym);
      if (t == kNoState) continue;
      if (r < paths_[t]) {
        word.push_back(sym);
        s = t;
        break;
      }
      r -= paths_[t];
    }
  }
  return word;
}

std::vector<Word> Trellis::words() const {
  std::vector<Word> out;
  if (empty()) return out;
  Word prefix;
  std::vector<std::pair<StateId, Symbol>> stack{{dfa_.initial(), 0}};
  if (length_ == 0) return {Word{}};
  while (!stack.empty()) {
    auto& [s, sym] = stack.back();
    if (sym == alphabet().size()) {
      stack.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      continue;
    }
    Symbol cur = sym++;
    StateId t = dfa_.next(s, cur);
    if (t == kNoState || paths_[t] == 0) continue;
    prefix.push_back(cur);
    if (prefix.size() == length_) {
      out.push_back(prefix);
      prefix.pop_back();
      continue;
    }
    stack.emplace_back(t, 0);
  }
  return out;
}

// Algebra -------------------------------------------------------------------

Nfa trim(const Nfa& a) {
  const std::size_t n = a.num_states();
  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::vector<std::vector<StateId>> reverse(n);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s) {
    for (const Arc& arc : a.arcs(s)) reverse[arc.target].push_back(s);
    if (a.is_initial(s)) {
      fwd[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc& arc : a.arcs(s))
      if (!fwd[arc.target]) {
        fwd[arc.target] = 1;
        stack.push_back(arc.target);
      }
  }
  for (StateId s = 0; s < n; ++s)
    if (a.is_final(s) && fwd[s]) {
      bwd[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s])
      if (fwd[p] && !bwd[p]) {
        bwd[p] = 1;
        stack.push_back(p);
      }
  }
  Nfa out(a.alphabet());
  std::vector<StateId> map(n, kNoState);
  for (StateId s = 0; s < n; ++s)
    if (bwd[s]) map[s] = out.add_state(a.is_initial(s), a.is_final(s));
  for (StateId s = 0; s < n; ++s) {
    if (map[s] == kNoState) continue;
    for (const Arc& arc : a.arcs(s))
      if (map[arc.target] != kNoState) out.add_arc(map[s], arc.label, map[arc.target]);
  }
  return out;
}

Dfa trim(const Dfa& d) {
  Nfa t = trim(d.to_nfa());
  Dfa out(d.alphabet());
  for (StateId s = 0; s < t.num_states(); ++s) out.add_state(t.is_final(s));
  for (StateId s = 0; s < t.num_states(); ++s) {
    if (t.is_initial(s)) out.set_initial(s);
    for (const Arc& arc : t.arcs(s)) out.set_transition(s, arc.label, arc.target);
  }
  return out;
}

bool accepts(const Nfa& a, const Word& word) {
  check_word(a.alphabet(), word);
  StateSet cur = epsilon_closure(a, a.initial_states());
  for (Symbol sym : word) {
    if (cur.empty()) return false;
    cur = step(a, cur, sym);
  }
  return any_final(a, cur);
}

Nfa remove_epsilon(const Nfa& a) {
  if (!a.has_epsilon()) return a;
  Nfa out(a.alphabet());
  for (StateId s = 0; s < a.num_states(); ++s) out.add_state(a.is_initial(s), false);
  for (StateId s = 0; s < a.num_states(); ++s) {
    StateSet closure = epsilon_closure(a, {s});
    std::set<std::pair<Symbol, StateId>> arcs;
    for (StateId c : closure) {
      if (a.is_final(c)) out.set_final(s);
      for (const Arc& arc : a.arcs(c))
        if (arc.label != kEpsilon) arcs.emplace(arc.label, arc.target);
    }
    for (const auto& [label, target] : arcs) out.add_arc(s, label, target);
  }
  return trim(out);
}

Dfa determinize(const Nfa& a) {
  Dfa out(a.alphabet());
  StateSet start = epsilon_closure(a, a.initial_states());
  if (start.empty()) return out;
  std::map<StateSet, StateId> index;
  std::vector<StateSet> pending;
  auto intern = [&](StateSet set) {
    auto [it, inserted] = index.try_emplace(std::move(set), 0);
    if (inserted) {
      it->second = out.add_state(any_final(a, it->first));
      pending.push_back(it->first);
    }
    return it->second;
  };
  out.set_initial(intern(std::move(start)));
  for (std::size_t i = 0; i < pending.size(); ++i) {
    StateSet cur = pending[i];
    StateId from = index.at(cur);
    for (Symbol sym = 0; sym < a.alphabet().size(); ++sym) {
      StateSet nxt = step(a, cur, sym);
      if (nxt.empty()) continue;
      StateId to = intern(std::move(nxt));
      out.set_transition(from, sym, to);
    }
  }
  return out;
}

Dfa complement(const Dfa& d, std::optional<std::size_t> length) {
  const std::size_t k = d.alphabet().size();
  Dfa full(d.alphabet());
  for (StateId s = 0; s < d.num_states(); ++s) full.add_state(!d.is_final(s));
  StateId sink = full.add_state(true);
  for (Symbol sym = 0; sym < k; ++sym) full.set_transition(sink, sym, sink);
  for (StateId s = 0; s < d.num_states(); ++s)
    for (Symbol sym = 0; sym < k; ++sym) {
      StateId t = d.next(s, sym);
      full.set_transition(s, sym, t == kNoState ? sink : t);
    }
  full.set_initial(d.initial() == kNoState ? sink : d.initial());
  if (!length) return full;
  return intersect(full, universe_trellis(d.alphabet(), *length).dfa());
}

Dfa intersect(const Dfa& a, const Dfa& b) {
  check_same_alphabet(a.alphabet(), b.alphabet());
  Dfa out(a.alphabet());
  if (a.initial() == kNoState || b.initial() == kNoState) return out;
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pending;
  auto intern = [&](StateId p, StateId q) {
    auto key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, inserted] = index.try_emplace(key, 0);
    if (inserted) {
      it->second = out.add_state(a.is_final(p) && b.is_final(q));
      pending.emplace_back(p, q);
    }
    return it->second;
  };
  out.set_initial(intern(a.initial(), b.initial()));
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [p, q] = pending[i];
    StateId from = static_cast<StateId>(i);
    for (Symbol sym = 0; sym < a.alphabet().size(); ++sym) {
      StateId p2 = a.next(p, sym), q2 = b.next(q, sym);
      if (p2 == kNoState || q2 == kNoState) continue;
      out.set_transition(from, sym, intern(p2, q2));
    }
  }
  return trim(out);
}

Nfa intersect(const Nfa& a, const Nfa& b) {
  check_same_alphabet(a.alphabet(), b.alphabet());
  Nfa x = remove_epsilon(a), y = remove_epsilon(b);
  Nfa out(a.alphabet());
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pending;
  auto intern = [&](StateId p, StateId q, bool initial) {
    auto key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, inserted] = index.try_emplace(key, 0);
    if (inserted) {
      it->second = out.add_state(initial, x.is_final(p) && y.is_final(q));
      pending.emplace_back(p, q);
    }
    return it->second;
  };
  for (StateId p : x.initial_states())
    for (StateId q : y.initial_states()) intern(p, q, true);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [p, q] = pending[i];
    for (const Arc& ap : x.arcs(p))
      for (const Arc& aq : y.arcs(q))
        if (ap.label == aq.label)
          out.add_arc(static_cast<StateId>(i), ap.label, intern(ap.target, aq.target, false));
  }
  return trim(out);
}

Nfa union_of(const Nfa& a, const Nfa& b) {
  check_same_alphabet(a.alphabet(), b.alphabet());
  Nfa out(a.alphabet());
  for (const Nfa* part : {&a, &b}) {
    const auto offset = static_cast<StateId>(out.num_states());
    for (StateId s = 0; s < part->num_states(); ++s)
      out.add_state(part->is_initial(s), part->is_final(s));
    for (StateId s = 0; s < part->num_states(); ++s)
      for (const Arc& arc : part->arcs(s)) out.add_arc(s + offset, arc.label, arc.target + offset);
  }
  return out;
}

Nfa word_automaton(const Alphabet& alphabet, const Word& word) {
  check_word(alphabet, word);
  Nfa a(alphabet);
  StateId s = a.add_state(true, word.empty());
  for (std::size_t i = 0; i < word.size(); ++i) {
    StateId t = a.add_state(false, i + 1 == word.size());
    a.add_arc(s, word[i], t);
    s = t;
  }
  return a;
}

Trellis universe_trellis(const Alphabet& alphabet, std::size_t length) {
  Dfa d(alphabet);
  StateId s = d.add_state(length == 0);
  d.set_initial(s);
  for (std::size_t i = 0; i < length; ++i) {
    StateId t = d.add_state(i + 1 == length);
    for (Symbol sym = 0; sym < alphabet.size(); ++sym) d.set_transition(s, sym, t);
    s = t;
  }
  return Trellis::from_dfa(d, length);
}

Trellis trellis_from_words(const Alphabet& alphabet, const std::vector<Word>& words,
                           std::optional<std::size_t> length) {
  if (!length) {
    if (words.empty()) throw InvalidArgument("cannot infer the block length of an empty code");
    length = words.front().size();
  }
  for (const Word& w : words)
    if (w.size() != *length) throw InvalidArgument("code words have different lengths");
  Trellis t(alphabet, *length);
  for (const Word& w : words) t.add_word(w);
  return t;
}

Trellis suffix_trellis(const Alphabet& alphabet, std::size_t length, const Word& suffix) {
  if (suffix.size() > length) throw InvalidArgument("suffix longer than the block length");
  check_word(alphabet, suffix);
  Dfa d(alphabet);
  StateId s = d.add_state(length == 0);
  d.set_initial(s);
  const std::size_t free = length - suffix.size();
  for (std::size_t i = 0; i < length; ++i) {
    StateId t = d.add_state(i + 1 == length);
    if (i < free) {
      for (Symbol sym = 0; sym < alphabet.size(); ++sym) d.set_transition(s, sym, t);
    } else {
      d.set_transition(s, suffix[i - free], t);
    }
    s = t;
  }
  return Trellis::from_dfa(d, length);
}

bool is_empty(const Nfa& a) { return trim(a).num_states() == 0; }

bool is_acyclic(const Dfa& d) { return reverse_topological(trim(d)).has_value(); }

std::optional<Word> shortest_word(const Nfa& a) {
  StateSet start = epsilon_closure(a, a.initial_states());
  if (start.empty()) return std::nullopt;
  std::map<StateSet, std::pair<std::size_t, Symbol>> parent;  // set -> (queue index of parent, symbol)
  std::vector<StateSet> queue{start};
  parent.emplace(start, std::make_pair(static_cast<std::size_t>(-1), kEpsilon));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    if (any_final(a, queue[i])) {
      Word w;
      std::size_t j = i;
      while (true) {
        auto [p, sym] = parent.at(queue[j]);
        if (p == static_cast<std::size_t>(-1)) break;
        w.push_back(sym);
        j = p;
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol sym = 0; sym < a.alphabet().size(); ++sym) {
      StateSet nxt = step(a, queue[i], sym);
      if (nxt.empty() || parent.count(nxt)) continue;
      parent.emplace(nxt, std::make_pair(i, sym));
      queue.push_back(std::move(nxt));
    }
  }
  return std::nullopt;
}

std::vector<Word> enumerate_words(const Nfa& a, std::size_t max_length) {
  std::vector<Word> out;
  Word prefix;
  auto visit = [&](auto&& self, const StateSet& set) -> void {
    if (any_final(a, set)) out.push_back(prefix);
    if (prefix.size() == max_length) return;
    for (Symbol sym = 0; sym < a.alphabet().size(); ++sym) {
      StateSet nxt = step(a, set, sym);
      if (nxt.empty()) continue;
      prefix.push_back(sym);
      self(self, nxt);
      prefix.pop_back();
    }
  };
  StateSet start = epsilon_closure(a, a.initial_states());
  if (!start.empty()) visit(visit, start);
  std::sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

UniformSampler::UniformSampler(Dfa dfa) : dfa_(trim(dfa)) {
  auto order = reverse_topological(dfa_);
  if (!order) throw InvalidArgument("cannot count or sample a cyclic language");
  paths_.assign(dfa_.num_states(), 0);
  for (StateId s : *order) {
    std::uint64_t n = dfa_.is_final(s) ? 1 : 0;
    for (Symbol sym = 0; sym < dfa_.alphabet().size(); ++sym)
      if (StateId t = dfa_.next(s, sym); t != kNoState) n = add_checked(n, paths_[t]);
    paths_[s] = n;
  }
}

Word UniformSampler::operator()(Rng& rng) const {
  if (count() == 0) throw EmptyLanguageError("cannot sample from an empty language");
  Word word;
  StateId s = dfa_.initial();
  while (true) {
    std::uint64_t r = uniform_below(rng, paths_[s]);
    if (dfa_.is_final(s)) {
      if (r == 0) return word;
      --r;
    }
    for (Symbol sym = 0; sym < dfa_.alphabet().size(); ++sym) {
      StateId t = dfa_.next(s, sym);
      if (t == kNoState) continue;
      if (r < paths_[t]) {
        word.push_back(sym);
        s = t;
        break;
      }
      r -= paths_[t];
    }
  }
}

std::uint64_t count_words(const Dfa& d) { return UniformSampler(d).count(); }

Word sample_uniform(const Dfa& d, Rng& rng) { return UniformSampler(d)(rng); }

}  // namespace chancodes
