#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "chancodes/alphabet.hpp"
#include "chancodes/random.hpp"

namespace chancodes {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

struct Arc {
  Symbol label;  // kEpsilon for the empty word
  StateId target;

  bool operator==(const Arc&) const = default;
};

/// Nondeterministic automaton with optional epsilon arcs.  States are dense
/// integers in creation order.
class Nfa {
 public:
  explicit Nfa(Alphabet alphabet = {});

  StateId add_state(bool initial = false, bool final = false);
  void add_arc(StateId from, Symbol label, StateId to);
  void set_initial(StateId s, bool value = true);
  void set_final(StateId s, bool value = true);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return arcs_.size(); }
  std::size_t num_arcs() const;
  std::span<const Arc> arcs(StateId s) const { return arcs_.at(s); }
  bool is_initial(StateId s) const { return initial_.at(s) != 0; }
  bool is_final(StateId s) const { return final_.at(s) != 0; }
  std::vector<StateId> initial_states() const;
  std::vector<StateId> final_states() const;
  bool has_epsilon() const;

  /// States plus, for every arc, one plus its label length.
  std::size_t size() const;

  bool operator==(const Nfa&) const = default;

 private:
  void check_state(StateId s) const;

  Alphabet alphabet_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<char> initial_;
  std::vector<char> final_;
};

/// Deterministic, epsilon-free automaton with a partial transition table.
/// A Dfa with no initial state accepts the empty language.
class Dfa {
 public:
  explicit Dfa(Alphabet alphabet = {});

  StateId add_state(bool final = false);
  void set_initial(StateId s);
  void set_final(StateId s, bool value = true);
  void set_transition(StateId from, Symbol symbol, StateId to);
  void clear_transition(StateId from, Symbol symbol);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return final_.size(); }
  StateId initial() const { return initial_; }
  bool is_final(StateId s) const { return final_.at(s) != 0; }
  StateId next(StateId s, Symbol symbol) const {
    return delta_[static_cast<std::size_t>(s) * alphabet_.size() + symbol];
  }
  std::size_t num_arcs() const;
  std::size_t size() const;

  bool accepts(const Word& word) const;
  Nfa to_nfa() const;

  bool operator==(const Dfa&) const = default;

 private:
  Alphabet alphabet_;
  StateId initial_ = kNoState;
  std::vector<char> final_;
  std::vector<StateId> delta_;
};

/// Deterministic automaton accepting a block code: one initial state, one
/// final state, acyclic, every accepted word of length `length()`.
/// Path counts to the final state are maintained so the code can be counted
/// and sampled without recomputation.
class Trellis {
 public:
  /// The empty code of block length `length`.
  Trellis(Alphabet alphabet, std::size_t length);

  /// Validates `dfa` (after trimming and merging final states).  An empty
  /// language requires `length`.
  static Trellis from_dfa(const Dfa& dfa, std::optional<std::size_t> length = {});

  const Alphabet& alphabet() const { return dfa_.alphabet(); }
  std::size_t length() const { return length_; }
  const Dfa& dfa() const { return dfa_; }
  StateId initial() const { return dfa_.initial(); }
  StateId final_state() const { return final_; }

  bool contains(const Word& word) const;
  std::uint64_t count() const { return paths_[dfa_.initial()]; }
  bool empty() const { return count() == 0; }

  /// Adds `word` to the code.  Returns false (and leaves the trellis alone)
  /// if it is already a codeword.  Throws InvalidArgument on a wrong length.
  bool add_word(const Word& word);

  /// Uniformly random codeword; throws EmptyLanguageError on the empty code.
  Word sample(Rng& rng) const;

  /// All codewords in lexicographic order.
  std::vector<Word> words() const;

 private:
  Trellis() = default;
  StateId clone_state(StateId s);

  Dfa dfa_;
  std::size_t length_ = 0;
  StateId final_ = kNoState;
  std::vector<std::uint32_t> in_degree_;
  std::vector<std::uint64_t> paths_;
};

// Automaton algebra ---------------------------------------------------------

/// Removes states that are not on some initial-to-final path.
Nfa trim(const Nfa& a);
Dfa trim(const Dfa& d);

/// Subset simulation with epsilon closure.  Throws InvalidArgument for a
/// symbol outside the alphabet.
bool accepts(const Nfa& a, const Word& word);

Nfa remove_epsilon(const Nfa& a);
Dfa determinize(const Nfa& a);

/// Complement with respect to all words, or to words of exactly `length`.
Dfa complement(const Dfa& d, std::optional<std::size_t> length = {});
Dfa intersect(const Dfa& a, const Dfa& b);
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa union_of(const Nfa& a, const Nfa& b);

Nfa word_automaton(const Alphabet& alphabet, const Word& word);

Trellis universe_trellis(const Alphabet& alphabet, std::size_t length);

/// Prefix-tree trellis for a set of equal-length words.  `length` is needed
/// only when `words` is empty.
Trellis trellis_from_words(const Alphabet& alphabet, const std::vector<Word>& words,
                           std::optional<std::size_t> length = {});

/// Trellis for {w in alphabet^length : w ends with suffix}.
Trellis suffix_trellis(const Alphabet& alphabet, std::size_t length, const Word& suffix);

bool is_empty(const Nfa& a);
bool is_acyclic(const Dfa& d);

/// Lexicographically least among the shortest accepted words.
std::optional<Word> shortest_word(const Nfa& a);

/// Accepted words of length at most `max_length`, in (length, lex) order.
std::vector<Word> enumerate_words(const Nfa& a, std::size_t max_length);

/// Number of accepted words of an automaton whose trim part is acyclic.
/// Throws InvalidArgument for a cyclic language and Error on overflow.
std::uint64_t count_words(const Dfa& d);

/// Exact uniform sampling over the language of an acyclic Dfa.  Path counts
/// are computed once at construction.
class UniformSampler {
 public:
  explicit UniformSampler(Dfa dfa);

  std::uint64_t count() const { return dfa_.initial() == kNoState ? 0 : paths_[dfa_.initial()]; }
  const Dfa& dfa() const { return dfa_; }

  /// Throws EmptyLanguageError when the language is empty.
  Word operator()(Rng& rng) const;

 private:
  Dfa dfa_;
  std::vector<std::uint64_t> paths_;
};

Word sample_uniform(const Dfa& d, Rng& rng);

}  // namespace chancodes
