#include "chancodes/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "chancodes/error.hpp"

namespace chancodes {

Alphabet::Alphabet() : Alphabet({"0", "1"}) {}

Alphabet::Alphabet(std::initializer_list<std::string> tokens)
    : Alphabet(std::vector<std::string>(tokens)) {}

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw InvalidArgument("alphabet must not be empty");
  std::set<std::string> seen;
  for (const auto& t : tokens_) {
    if (t.empty()) throw InvalidArgument("alphabet symbols must be non-empty");
    if (t == "@epsilon") throw InvalidArgument("'@epsilon' is reserved");
    if (std::any_of(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }))
      throw InvalidArgument("alphabet symbol '" + t + "' contains whitespace");
    if (!seen.insert(t).second) throw InvalidArgument("duplicate alphabet symbol '" + t + "'");
    if (t.size() != 1) compact_ = false;
  }
}

Alphabet Alphabet::from_chars(std::string_view chars) {
  std::vector<std::string> tokens;
  for (char c : chars) tokens.emplace_back(1, c);
  return Alphabet(std::move(tokens));
}

bool Alphabet::contains(std::string_view token) const {
  return std::find(tokens_.begin(), tokens_.end(), token) != tokens_.end();
}

Symbol Alphabet::symbol(std::string_view token) const {
  auto it = std::find(tokens_.begin(), tokens_.end(), token);
  if (it == tokens_.end())
    throw InvalidArgument("symbol '" + std::string(token) + "' is not in the alphabet");
  return static_cast<Symbol>(it - tokens_.begin());
}

Word Alphabet::parse_word(std::string_view text) const {
  Word word;
  if (compact_) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      word.push_back(symbol(std::string_view(&c, 1)));
    }
    return word;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) word.push_back(symbol(text.substr(i, j - i)));
    i = j;
  }
  return word;
}

std::string Alphabet::format(const Word& word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact_ && i > 0) out += ' ';
    out += token(word[i]);
  }
  return out;
}

std::vector<Word> all_words(const Alphabet& alphabet, std::size_t length) {
  std::vector<Word> out;
  Word w(length, 0);
  const auto k = static_cast<Symbol>(alphabet.size());
  while (true) {
    out.push_back(w);
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++w[i] < k) break;
      w[i] = 0;
      if (i == 0) return out;
    }
    if (length == 0) return out;
  }
}

std::vector<Word> all_words_up_to(const Alphabet& alphabet, std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t n = 0; n <= max_length; ++n) {
    auto layer = all_words(alphabet, n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace chancodes
