#pragma once

// Brute-force reference implementations.  Nothing here goes through the
// product, determinization, or detection code under test.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "chancodes/alphabet.hpp"
#include "chancodes/automaton.hpp"
#include "chancodes/random.hpp"
#include "chancodes/transducer.hpp"

namespace oracle {

using chancodes::Word;
using WordSet = std::set<Word>;

/// Outputs of all accepting paths of `t` that read exactly `x`, keeping only
/// outputs of length at most `max_output`.
WordSet path_image(const chancodes::Transducer& t, const Word& x, std::size_t max_output);

/// Words of length at most `max_length` accepted by `a`, found by walking
/// all paths.
WordSet nfa_language(const chancodes::Nfa& a, std::size_t max_length);

/// Binary-string helpers.
Word bits(const std::string& s);
std::string str(const Word& w);
std::vector<std::string> binary_words(std::size_t length);
std::vector<std::string> binary_words_up_to(std::size_t max_length);

// Closed-form channel relations on binary strings; `y in sigma(x)`.
bool hamming_within(const std::string& x, const std::string& y, std::size_t k);
std::size_t indel_distance(const std::string& x, const std::string& y);
bool del1_relation(const std::string& x, const std::string& y);
bool segd_relation(const std::string& x, const std::string& y, std::size_t b);
bool overlap_relation(const std::string& x, const std::string& y);
/// At most two non-overlapping events, left to right: delete a symbol,
/// insert a symbol, or swap an adjacent 01/10 pair.
bool bsid_relation(const std::string& x, const std::string& y);

using Relation = std::function<bool(const std::string&, const std::string&)>;

/// No u != v in the code with v in sigma(u).
bool detecting(const std::vector<std::string>& code, const Relation& sigma);
/// Images of distinct codewords are disjoint; outputs searched up to
/// `max_output`.
bool correcting(const std::vector<std::string>& code, const Relation& sigma, std::size_t max_output);

/// Random small transducer in standard form.
chancodes::Transducer random_transducer(chancodes::Rng& rng, std::size_t states, std::size_t arcs,
                                        double epsilon_rate);
/// Random code of `size` distinct binary words (size capped at 2^length).
std::vector<std::string> random_code(chancodes::Rng& rng, std::size_t length, std::size_t size);

std::vector<std::string> hamming74();

}  // namespace oracle
