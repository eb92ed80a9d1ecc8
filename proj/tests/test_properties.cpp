#include "doctest.h"
#include "oracles.hpp"

#include "chancodes/channels.hpp"
#include "chancodes/properties.hpp"

using namespace chancodes;
using oracle::bits;
using oracle::str;

namespace {

Trellis trellis_of(const std::vector<std::string>& words, std::size_t length) {
  std::vector<Word> ws;
  for (const auto& w : words) ws.push_back(bits(w));
  return trellis_from_words(Alphabet{}, ws, length);
}

std::vector<std::string> systematic_del1_code() {
  std::vector<std::string> out;
  for (const auto& u : oracle::binary_words(6)) out.push_back(u + "01");
  return out;
}

/// v in t(u), by path enumeration.
bool in_image(const Transducer& t, const Word& u, const Word& v) {
  return oracle::path_image(t, u, v.size()).count(v) != 0;
}

void check_detection_witness(const Witness& w, const std::vector<std::string>& code, const Transducer& t) {
  REQUIRE(w.kind == Witness::Kind::DetectionViolation);
  const std::string u = str(w.u), v = str(w.v);
  CHECK(u != v);
  CHECK(std::find(code.begin(), code.end(), u) != code.end());
  CHECK(std::find(code.begin(), code.end(), v) != code.end());
  CHECK(in_image(t, w.u, w.v));
}

}  // namespace

TEST_CASE("detection examples") {
  const std::vector<std::string> nonsolid = {"0100", "1001"};
  const Witness w = detection_witness(trellis_of(nonsolid, 4), make_overlap());
  check_detection_witness(w, nonsolid, make_overlap().transducer());
  CHECK(w.render(Alphabet{}).rfind("DETECT-VIOLATION ", 0) == 0);

  CHECK(detection_witness(trellis_of(oracle::hamming74(), 7), make_sub(2)).none());
  CHECK(detection_witness(trellis_of({"00", "11"}, 2), make_id(1)).none());
  CHECK(detection_witness(trellis_of(systematic_del1_code(), 8), make_del1_insend()).none());
  CHECK(detection_witness(Trellis(Alphabet{}, 5), make_sub(1)).none());
  CHECK(Witness{}.render(Alphabet{}) == "NONE");
}

TEST_CASE("correction examples") {
  CHECK(correction_witness(trellis_of(oracle::hamming74(), 7), make_sub(1)).none());
  const Witness w = correction_witness(trellis_of({"000", "011"}, 3), make_sub(1));
  REQUIRE(w.kind == Witness::Kind::CorrectionViolation);
  CHECK((str(w.z) == "010" || str(w.z) == "001"));
  CHECK(std::set<std::string>{str(w.u), str(w.v)} == std::set<std::string>{"000", "011"});
  CHECK(w.render(Alphabet{}).find(" via ") != std::string::npos);
  CHECK(correction_witness(trellis_of({"000", "111"}, 3), make_sub(1)).none());
}

TEST_CASE("maximality examples") {
  const Trellis sys = trellis_of(systematic_del1_code(), 8);
  CHECK(maximality_witness(sys, make_del1_insend()).none());
  CHECK(maximality_index(sys, make_del1_insend()) == Fraction{1, 1});

  const Witness any = maximality_witness(Trellis(Alphabet{}, 3), make_sub(2));
  REQUIRE(any.kind == Witness::Kind::Addable);
  CHECK(str(any.u) == "000");

  const Witness w = maximality_witness(trellis_of({"0000"}, 4), make_sub(2));
  REQUIRE(w.kind == Witness::Kind::Addable);
  CHECK(str(w.u) == "0111");
  CHECK(w.render(Alphabet{}) == "ADDABLE 0111");

  CHECK(maximality_index(trellis_of({"0000"}, 4), make_sub(1)) == Fraction{5, 16});
  CHECK(maximality_index(trellis_of({"0000"}, 4), make_sub(1)).str() == "5/16");
  CHECK(maximality_index(trellis_of(oracle::hamming74(), 7), make_sub(1)) == Fraction{1, 1});

  try {
    maximality_index(trellis_of({"0000", "0001"}, 4), make_sub(1));
    FAIL("expected NotDetectingError");
  } catch (const NotDetectingError& e) {
    CHECK(e.witness().kind == Witness::Kind::DetectionViolation);
  }

  // Restricted universe: only words ending in 1.
  const Trellis ends1 = suffix_trellis(Alphabet{}, 4, bits("1"));
  const Witness r = maximality_witness(trellis_of({"0000"}, 4), make_sub(2), ends1.dfa());
  REQUIRE(r.kind == Witness::Kind::Addable);
  CHECK(str(r.u) == "0111");
}

TEST_CASE("detection agrees with brute force on random codes and transducers [property]") {
  Rng rng(99);
  for (int round = 0; round < 400; ++round) {
    const Transducer t = oracle::random_transducer(rng, 1 + uniform_below(rng, 4), uniform_below(rng, 10), 0.3);
    const std::size_t length = 1 + uniform_below(rng, 4);
    const auto code = oracle::random_code(rng, length, uniform_below(rng, 6));
    bool brute = true;
    for (const auto& u : code)
      for (const auto& v : code)
        if (u != v && in_image(t, bits(u), bits(v))) brute = false;
    const Witness w = detection_witness(trellis_of(code, length), t);
    INFO("round ", round);
    CHECK(w.none() == brute);
    if (!w.none()) check_detection_witness(w, code, t);
  }
}

TEST_CASE("symmetry of detection and index bounds [property]") {
  // sigma-detecting iff sigma^-1-detecting iff (sigma | sigma^-1)-detecting.
  Rng rng(5);
  const std::vector<Channel> zoo = {make_sub(1), make_sub(2), make_id(1), make_del1_insend(), make_ins1_delend(),
                                    make_bsid(), make_overlap()};
  for (int round = 0; round < 120; ++round) {
    const Channel& c = zoo[uniform_below(rng, zoo.size())];
    const std::size_t length = 2 + uniform_below(rng, 4);
    const Trellis t = trellis_of(oracle::random_code(rng, length, 1 + uniform_below(rng, 4)), length);
    const bool d = detection_witness(t, c).none();
    CHECK(detection_witness(t, inverse(c.transducer())).none() == d);
    CHECK(detection_witness(t, c.symmetric()).none() == d);
    if (d) {
      const Fraction f = maximality_index(t, c);
      CHECK(f.numerator <= f.denominator);
      CHECK(f.numerator > 0);
      CHECK((f == Fraction{1, 1}) == maximality_witness(t, c).none());
    }
  }
}
