#include "chancodes/transducer.hpp"

#include <algorithm>
#include <unordered_map>

#include "chancodes/error.hpp"

namespace chancodes {

namespace {

Word as_word(Symbol s) { return s == kEpsilon ? Word{} : Word{s}; }
Symbol as_symbol(const Word& w) { return w.empty() ? kEpsilon : w.front(); }

void check_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw InvalidArgument("alphabet mismatch");
}

/// Standard-form arcs of one state, bucketed by input (bucket 0 is epsilon,
/// bucket s + 1 is symbol s).
struct IndexedArc {
  Symbol output;
  StateId target;
};
using InputIndex = std::vector<std::vector<std::vector<IndexedArc>>>;

InputIndex index_by_input(const Transducer& t) {
  const std::size_t k = t.alphabet().size();
  InputIndex index(t.num_states(), std::vector<std::vector<IndexedArc>>(k + 1));
  for (StateId s = 0; s < t.num_states(); ++s)
    for (const auto& arc : t.arcs(s)) {
      Symbol in = as_symbol(arc.input);
      index[s][in == kEpsilon ? 0 : in + 1].push_back({as_symbol(arc.output), arc.target});
    }
  return index;
}

/// Dense pair -> product-state map.
class PairIndex {
 public:
  PairIndex(std::size_t left, std::size_t right) : right_(right), ids_(left * right, kNoState) {}
  StateId& operator()(StateId p, StateId q) { return ids_[static_cast<std::size_t>(p) * right_ + q]; }

 private:
  std::size_t right_;
  std::vector<StateId> ids_;
};

}  // namespace

Transducer::Transducer(Alphabet alphabet, std::string name)
    : alphabet_(std::move(alphabet)), name_(std::move(name)) {}

StateId Transducer::add_state(bool initial, bool final) {
  arcs_.emplace_back();
  initial_.push_back(initial);
  final_.push_back(final);
  return static_cast<StateId>(arcs_.size() - 1);
}

void Transducer::check_state(StateId s) const {
  if (s >= arcs_.size()) throw InvalidArgument("state " + std::to_string(s) + " does not exist");
}

void Transducer::add_arc(StateId from, Word input, Word output, StateId to) {
  check_state(from);
  check_state(to);
  for (const Word* w : {&input, &output})
    for (Symbol s : *w)
      if (s >= alphabet_.size()) throw InvalidArgument("transducer label outside the alphabet");
  arcs_[from].push_back({std::move(input), std::move(output), to});
}

void Transducer::add_arc(StateId from, Symbol input, Symbol output, StateId to) {
  add_arc(from, as_word(input), as_word(output), to);
}

void Transducer::set_initial(StateId s, bool value) {
  check_state(s);
  initial_[s] = value;
}

void Transducer::set_final(StateId s, bool value) {
  check_state(s);
  final_[s] = value;
}

std::size_t Transducer::num_arcs() const {
  std::size_t n = 0;
  for (const auto& v : arcs_) n += v.size();
  return n;
}

std::vector<StateId> Transducer::initial_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < initial_.size(); ++s)
    if (initial_[s]) out.push_back(s);
  return out;
}

std::vector<StateId> Transducer::final_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < final_.size(); ++s)
    if (final_[s]) out.push_back(s);
  return out;
}

bool Transducer::is_standard() const {
  for (const auto& v : arcs_)
    for (const auto& arc : v)
      if (arc.input.size() > 1 || arc.output.size() > 1) return false;
  return true;
}

bool Transducer::has_epsilon_input() const {
  for (const auto& v : arcs_)
    for (const auto& arc : v)
      if (arc.input.empty()) return true;
  return false;
}

std::size_t Transducer::size() const {
  std::size_t n = num_states();
  for (const auto& v : arcs_)
    for (const auto& arc : v) n += 1 + arc.input.size() + arc.output.size();
  return n;
}

Transducer standard_form(const Transducer& t) {
  if (t.is_standard()) return t;
  Transducer out(t.alphabet(), t.name());
  out.set_provenance(t.provenance());
  for (StateId s = 0; s < t.num_states(); ++s) out.add_state(t.is_initial(s), t.is_final(s));
  for (StateId s = 0; s < t.num_states(); ++s) {
    for (const auto& arc : t.arcs(s)) {
      const std::size_t steps = std::max<std::size_t>({arc.input.size(), arc.output.size(), 1});
      StateId from = s;
      for (std::size_t i = 0; i < steps; ++i) {
        StateId to = i + 1 == steps ? arc.target : out.add_state();
        Symbol in = i < arc.input.size() ? arc.input[i] : kEpsilon;
        Symbol o = i < arc.output.size() ? arc.output[i] : kEpsilon;
        out.add_arc(from, in, o, to);
        from = to;
      }
    }
  }
  return out;
}

Transducer trim(const Transducer& t) {
  std::vector<char> fwd(t.num_states(), 0), bwd(t.num_states(), 0);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> reverse(t.num_states());
  for (StateId s = 0; s < t.num_states(); ++s) {
    for (const auto& arc : t.arcs(s)) reverse[arc.target].push_back(s);
    if (t.is_initial(s)) {
      fwd[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const auto& arc : t.arcs(s))
      if (!fwd[arc.target]) {
        fwd[arc.target] = 1;
        stack.push_back(arc.target);
      }
  }
  for (StateId s = 0; s < t.num_states(); ++s)
    if (t.is_final(s) && fwd[s]) {
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
  Transducer out(t.alphabet(), t.name());
  std::vector<StateId> map(t.num_states(), kNoState);
  for (StateId s = 0; s < t.num_states(); ++s)
    if (bwd[s]) map[s] = out.add_state(t.is_initial(s), t.is_final(s));
  for (StateId s = 0; s < t.num_states(); ++s) {
    if (map[s] == kNoState) continue;
    for (const auto& arc : t.arcs(s))
      if (map[arc.target] != kNoState) out.add_arc(map[s], arc.input, arc.output, map[arc.target]);
  }
  return out;
}

Transducer inverse(const Transducer& t) {
  Transducer out(t.alphabet(), t.name().empty() ? std::string{} : "inverse(" + t.name() + ")");
  out.set_provenance(t.provenance());
  for (StateId s = 0; s < t.num_states(); ++s) out.add_state(t.is_initial(s), t.is_final(s));
  for (StateId s = 0; s < t.num_states(); ++s)
    for (const auto& arc : t.arcs(s)) out.add_arc(s, arc.output, arc.input, arc.target);
  return out;
}

Transducer union_of(const Transducer& t, const Transducer& s) {
  check_same_alphabet(t.alphabet(), s.alphabet());
  std::string name;
  if (!t.name().empty() || !s.name().empty()) name = t.name() + " | " + s.name();
  Transducer out(t.alphabet(), name);
  std::vector<ProvenanceSegment> provenance;
  int operand = 0;
  for (const Transducer* part : {&t, &s}) {
    const auto offset = static_cast<StateId>(out.num_states());
    if (part->provenance().empty()) {
      std::string label = part->name().empty() ? "operand" + std::to_string(operand) : part->name();
      provenance.push_back({label, offset, static_cast<StateId>(part->num_states())});
    } else {
      for (const auto& seg : part->provenance())
        provenance.push_back({seg.name, seg.offset + offset, seg.count});
    }
    ++operand;
    for (StateId q = 0; q < part->num_states(); ++q)
      out.add_state(part->is_initial(q), part->is_final(q));
    for (StateId q = 0; q < part->num_states(); ++q)
      for (const auto& arc : part->arcs(q))
        out.add_arc(q + offset, arc.input, arc.output, arc.target + offset);
  }
  out.set_provenance(std::move(provenance));
  return out;
}

Transducer compose(const Transducer& second, const Transducer& first) {
  check_same_alphabet(second.alphabet(), first.alphabet());
  const Transducer a = standard_form(first);
  const Transducer b = standard_form(second);
  const InputIndex b_in = index_by_input(b);

  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = b.name() + " o " + a.name();
  Transducer out(a.alphabet(), name);
  PairIndex ids(a.num_states(), b.num_states());
  std::vector<std::pair<StateId, StateId>> pending;
  auto intern = [&](StateId p, StateId q) {
    StateId& id = ids(p, q);
    if (id == kNoState) {
      id = out.add_state(a.is_initial(p) && b.is_initial(q), a.is_final(p) && b.is_final(q));
      pending.emplace_back(p, q);
    }
    return id;
  };
  for (StateId p : a.initial_states())
    for (StateId q : b.initial_states()) intern(p, q);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto [p, q] = pending[i];
    const auto from = static_cast<StateId>(i);
    for (const auto& arc : a.arcs(p)) {
      Symbol mid = as_symbol(arc.output);
      if (mid == kEpsilon) {
        out.add_arc(from, arc.input, Word{}, intern(arc.target, q));
        continue;
      }
      for (const auto& barc : b_in[q][mid + 1])
        out.add_arc(from, arc.input, as_word(barc.output), intern(arc.target, barc.target));
    }
    for (const auto& barc : b_in[q][0]) out.add_arc(from, Word{}, as_word(barc.output), intern(p, barc.target));
  }
  return trim(out);
}

Transducer identity_transducer(const Alphabet& alphabet) {
  Transducer t(alphabet, "id");
  StateId s = t.add_state(true, true);
  for (Symbol a = 0; a < alphabet.size(); ++a) t.add_arc(s, a, a, s);
  return t;
}

Nfa product(const Nfa& a, const Transducer& t) {
  check_same_alphabet(a.alphabet(), t.alphabet());
  const Nfa src = remove_epsilon(a);
  const Transducer std_t = standard_form(t);
  const InputIndex t_in = index_by_input(std_t);

  Nfa out(a.alphabet());
  PairIndex ids(src.num_states(), std_t.num_states());
  std::vector<std::pair<StateId, StateId>> pending;
  auto intern = [&](StateId p, StateId q) {
    StateId& id = ids(p, q);
    if (id == kNoState) {
      id = out.add_state(src.is_initial(p) && std_t.is_initial(q), src.is_final(p) && std_t.is_final(q));
      pending.emplace_back(p, q);
    }
    return id;
  };
  for (StateId p : src.initial_states())
    for (StateId q : std_t.initial_states()) intern(p, q);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto [p, q] = pending[i];
    const auto from = static_cast<StateId>(i);
    // Epsilon-input arcs pair with an implicit self-loop (p, eps, p).
    for (const auto& arc : t_in[q][0]) out.add_arc(from, arc.output, intern(p, arc.target));
    for (const Arc& arc : src.arcs(p))
      for (const auto& tarc : t_in[q][arc.label + 1])
        out.add_arc(from, tarc.output, intern(arc.target, tarc.target));
  }
  return trim(out);
}

Nfa image(const Transducer& t, const Word& x) { return product(word_automaton(t.alphabet(), x), t); }

std::optional<Word> input_preservation_counterexample(const Transducer& t, std::size_t max_length) {
  for (const Word& x : all_words_up_to(t.alphabet(), max_length)) {
    Nfa img = image(t, x);
    if (img.num_states() == 0) continue;  // outside the domain
    if (!accepts(img, x)) return x;
  }
  return std::nullopt;
}

bool is_input_preserving(const Transducer& t, std::size_t max_length) {
  return !input_preservation_counterexample(t, max_length).has_value();
}

}  // namespace chancodes
