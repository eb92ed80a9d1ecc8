#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace chancodes {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Label value reserved for the empty word on automaton arcs.
inline constexpr Symbol kEpsilon = std::numeric_limits<Symbol>::max();

/// Ordered set of opaque symbol tokens.  A symbol is its index in the order.
class Alphabet {
 public:
  /// Binary alphabet {0,1}.
  Alphabet();
  explicit Alphabet(std::vector<std::string> tokens);
  Alphabet(std::initializer_list<std::string> tokens);

  /// Every character of `chars` becomes one symbol, e.g. "01" or "abc".
  static Alphabet from_chars(std::string_view chars);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool contains(std::string_view token) const;
  /// Throws InvalidArgument for an unknown token.
  Symbol symbol(std::string_view token) const;

  /// True when every token is one character, so words print without separators.
  bool compact() const { return compact_; }

  /// Compact alphabets parse character by character, others by whitespace.
  Word parse_word(std::string_view text) const;
  std::string format(const Word& word) const;

  bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  bool compact_ = true;
};

/// All words of length `length`, in lexicographic order.
std::vector<Word> all_words(const Alphabet& alphabet, std::size_t length);

/// All words of length at most `max_length`, shortest first.
std::vector<Word> all_words_up_to(const Alphabet& alphabet, std::size_t max_length);

}  // namespace chancodes
