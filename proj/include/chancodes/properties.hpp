#pragma once

#include <cstdint>
#include <string>

#include "chancodes/automaton.hpp"
#include "chancodes/channels.hpp"
#include "chancodes/error.hpp"
#include "chancodes/transducer.hpp"

namespace chancodes {

/// Outcome of a property check.
///  - DetectionViolation: u != v codewords with v in sigma(u).
///  - CorrectionViolation: u != v codewords and z in sigma(u) ∩ sigma(v).
///  - Addable: u is a word of the universe, not in the code, whose addition
///    keeps the code detecting.
struct Witness {
  enum class Kind { None, DetectionViolation, CorrectionViolation, Addable };

  Kind kind = Kind::None;
  Word u, v, z;

  bool none() const { return kind == Kind::None; }

  /// NONE | DETECT-VIOLATION u v | CORRECT-VIOLATION u v via z | ADDABLE u
  std::string render(const Alphabet& alphabet) const;
};

/// A property that presupposes a detecting code was given one that is not.
class NotDetectingError : public Error {
 public:
  NotDetectingError(const std::string& message, Witness witness) : Error(message), witness_(std::move(witness)) {}
  const Witness& witness() const { return witness_; }

 private:
  Witness witness_;
};

/// Non-negative fraction in lowest terms.
struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  std::string str() const { return std::to_string(numerator) + "/" + std::to_string(denominator); }
  bool operator==(const Fraction&) const = default;
};

/// Decides sigma-detection of the code of `t`.  Runs over the product of the
/// trellis (input side), the channel, and the trellis again (output side),
/// tracking the unmatched suffix between the two sides.
Witness detection_witness(const Trellis& t, const Transducer& sigma);
Witness detection_witness(const Trellis& t, const Channel& sigma);

/// sigma-correction, decided as (sigma^-1 o sigma)-detection.
Witness correction_witness(const Trellis& t, const Transducer& sigma);
Witness correction_witness(const Trellis& t, const Channel& sigma);

/// Automaton for the words excluded from extending the code:
/// (sigma | sigma^-1)(C) ∪ C.
Nfa excluded_words(const Trellis& t, const Transducer& sigma);

/// Exact search for the lexicographically least word of `universe` that can
/// be added to the code.  `universe` must only accept words of the code's
/// block length.  Exponential in the worst case.
Witness maximality_witness(const Trellis& t, const Transducer& sigma, const Dfa& universe);
Witness maximality_witness(const Trellis& t, const Channel& sigma, const Dfa& universe);
Witness maximality_witness(const Trellis& t, const Channel& sigma);

/// Fraction of words of the block length that cannot be added to the code.
/// Throws NotDetectingError when the code is not sigma-detecting.
Fraction maximality_index(const Trellis& t, const Transducer& sigma);
Fraction maximality_index(const Trellis& t, const Channel& sigma);

}  // namespace chancodes
