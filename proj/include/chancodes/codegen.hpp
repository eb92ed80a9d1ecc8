#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chancodes/automaton.hpp"
#include "chancodes/channels.hpp"
#include "chancodes/random.hpp"

namespace chancodes {

inline constexpr double kDefaultMaximality = 0.95;
inline constexpr double kDefaultFailure = 0.05;
inline constexpr std::uint64_t kMaxTrials = 1'000'000'000;

/// n = 1 + floor(1 / (4 eps (1 - f)^2)), evaluated exactly on the shortest
/// decimal representations of f and eps.  Requires 0 <= f < 1, 0 < eps <= 1
/// and n <= kMaxTrials.
std::uint64_t trial_bound(double f, double epsilon);

struct NextWordResult {
  std::optional<Word> word;  // nullopt means NONE
  std::uint64_t trials = 0;  // samples drawn
  bool empty_universe = false;
};

/// One randomized attempt to extend a sigma-detecting code: draws up to
/// trial_bound(f, epsilon) words from `universe` (all words of the block
/// length when null) and returns the first that is neither a codeword nor in
/// (sigma | sigma^-1)(code).  `symmetric` is sigma | sigma^-1.
NextWordResult next_word(const Transducer& symmetric, const Trellis& code, std::uint64_t trials, Rng& rng,
                         const UniformSampler& universe);
NextWordResult next_word(const Channel& sigma, const Trellis& code, double f, double epsilon, Rng& rng,
                         const UniformSampler* universe = nullptr);

struct GenOptions {
  std::size_t target = 100;  // N, words to add
  std::size_t length = 8;
  double f = kDefaultMaximality;
  double epsilon = kDefaultFailure;
  std::uint64_t seed = 0;
  std::optional<Trellis> initial;  // starting code, must be sigma-detecting
  std::optional<Dfa> universe;     // sampling universe, subset of alphabet^length
  std::string universe_name = "all";
};

struct GenReport {
  std::string channel;
  std::size_t length = 0;
  std::size_t target = 0;
  double f = 0;
  double epsilon = 0;
  std::uint64_t trials = 0;  // n
  std::uint64_t seed = 0;
  std::string rng{kRngName};
  std::string universe;
  std::size_t initial_size = 0;

  Trellis trellis{Alphabet{}, 0};
  std::vector<Word> initial_words;
  std::vector<Word> words;  // added, in order
  std::vector<std::uint64_t> trials_per_word;
  bool exhausted = false;  // stopped on NONE before reaching the target
  double seconds = 0;

  std::size_t size() const { return initial_size + words.size(); }

  /// Header, codewords (initial code then added words), summary.  Wall time
  /// is included only when `timing` is set so reports stay reproducible.
  std::string to_text(bool timing = false) const;
  std::string to_json(bool timing = false) const;
};

/// Repeatedly extends the code with next_word until `target` words have
/// been added or a NONE is returned.  Throws NotDetectingError if the
/// initial code is not sigma-detecting.
GenReport make_code(const Channel& sigma, const Alphabet& alphabet, const GenOptions& options);

/// Words of length `length` with no proper non-empty prefix equal to a
/// suffix.  Built by enumeration, so limited to |alphabet|^length <= 2^22.
Trellis overlap_free_trellis(const Alphabet& alphabet, std::size_t length);
bool is_overlap_free(const Word& w);

}  // namespace chancodes
