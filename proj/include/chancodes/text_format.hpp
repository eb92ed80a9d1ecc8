#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chancodes/automaton.hpp"
#include "chancodes/transducer.hpp"

namespace chancodes {

// Line-oriented formats compatible with FAdo:
//
//   @Transducer <final states> * <initial states>
//   <src> <input symbol> <output symbol> <dst>        (one per line)
//
//   @NFA <final states> * <initial states>     or   @DFA <finals> * <initial>
//   <src> <symbol> <dst>
//
// `@epsilon` stands for the empty word.  Blank lines and lines starting with
// '#' are ignored.  State names that are non-negative integers keep their
// numeric order; other names follow in order of first appearance.  Without
// an explicit alphabet, the symbols used in the file, sorted, form the
// alphabet.  Serialization writes dense integer state ids, so
// parse(serialize(parse(s))) == parse(s).

inline constexpr std::string_view kEpsilonToken = "@epsilon";

Transducer parse_transducer(std::string_view text, const std::optional<Alphabet>& alphabet = {});
/// Serializes the standard form of `t`.
std::string serialize_transducer(const Transducer& t);

struct ParsedAutomaton {
  Nfa nfa;
  bool deterministic_header = false;  // "@DFA"
};

ParsedAutomaton parse_automaton(std::string_view text, const std::optional<Alphabet>& alphabet = {});
/// Throws ParseError when the text is not a deterministic "@DFA".
Dfa parse_dfa(std::string_view text, const std::optional<Alphabet>& alphabet = {});
std::string serialize_automaton(const Nfa& a);
std::string serialize_automaton(const Dfa& d);

/// One codeword per line.
std::vector<Word> parse_code(std::string_view text, const Alphabet& alphabet);
std::string serialize_code(const std::vector<Word>& words, const Alphabet& alphabet);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace chancodes
