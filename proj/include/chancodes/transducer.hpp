#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chancodes/alphabet.hpp"
#include "chancodes/automaton.hpp"

namespace chancodes {

/// Transition (source implied) with word labels; an empty word is epsilon.
struct TransducerArc {
  Word input;
  Word output;
  StateId target;

  bool operator==(const TransducerArc&) const = default;
};

/// Block of states that came from one operand of a union, so witnesses can
/// be traced back to the channel that produced them.
struct ProvenanceSegment {
  std::string name;
  StateId offset;
  StateId count;

  bool operator==(const ProvenanceSegment&) const = default;
};

/// Finite transducer over a single alphabet, realizing a rational relation.
class Transducer {
 public:
  explicit Transducer(Alphabet alphabet = {}, std::string name = {});

  StateId add_state(bool initial = false, bool final = false);
  void add_arc(StateId from, Word input, Word output, StateId to);
  /// Single-symbol form; pass kEpsilon for an empty side.
  void add_arc(StateId from, Symbol input, Symbol output, StateId to);
  void set_initial(StateId s, bool value = true);
  void set_final(StateId s, bool value = true);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t num_states() const { return arcs_.size(); }
  std::size_t num_arcs() const;
  std::span<const TransducerArc> arcs(StateId s) const { return arcs_.at(s); }
  bool is_initial(StateId s) const { return initial_.at(s) != 0; }
  bool is_final(StateId s) const { return final_.at(s) != 0; }
  std::vector<StateId> initial_states() const;
  std::vector<StateId> final_states() const;

  /// Every label has length at most one.
  bool is_standard() const;
  bool has_epsilon_input() const;

  /// States plus, for every arc, one plus the lengths of both labels.
  std::size_t size() const;

  const std::vector<ProvenanceSegment>& provenance() const { return provenance_; }
  void set_provenance(std::vector<ProvenanceSegment> p) { provenance_ = std::move(p); }

  bool operator==(const Transducer& other) const {
    return alphabet_ == other.alphabet_ && arcs_ == other.arcs_ && initial_ == other.initial_ &&
           final_ == other.final_;
  }

 private:
  void check_state(StateId s) const;

  Alphabet alphabet_;
  std::string name_;
  std::vector<std::vector<TransducerArc>> arcs_;
  std::vector<char> initial_;
  std::vector<char> final_;
  std::vector<ProvenanceSegment> provenance_;
};

/// Splits long labels through fresh chain states.  Already-standard inputs
/// are returned unchanged.
Transducer standard_form(const Transducer& t);

/// Removes states not on an initial-to-final path.
Transducer trim(const Transducer& t);

/// Swaps input and output on every arc.
Transducer inverse(const Transducer& t);

/// Disjoint union: (t | s)(x) = t(x) ∪ s(x).  The second operand's states are
/// offset by t.num_states(), recorded in provenance().
Transducer union_of(const Transducer& t, const Transducer& s);

/// Relational composition, `second` applied after `first`:
/// z in compose(second, first)(x) iff z in second(y) for some y in first(x).
Transducer compose(const Transducer& second, const Transducer& first);

/// Identity relation on all words.
Transducer identity_transducer(const Alphabet& alphabet);

/// Automaton accepting t(L(a)), trimmed.
Nfa product(const Nfa& a, const Transducer& t);

/// Automaton accepting t(x).
Nfa image(const Transducer& t, const Word& x);

/// First word x (shortest, then lexicographic) of length at most
/// `max_length` with t(x) non-empty and x not in t(x).
std::optional<Word> input_preservation_counterexample(const Transducer& t, std::size_t max_length);
bool is_input_preserving(const Transducer& t, std::size_t max_length);

}  // namespace chancodes
