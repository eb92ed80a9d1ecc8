#include "doctest.h"
#include "oracles.hpp"

#include "chancodes/channels.hpp"
#include "chancodes/error.hpp"
#include "chancodes/transducer.hpp"

using namespace chancodes;
using oracle::bits;
using oracle::str;

namespace {

std::set<std::string> strings(const oracle::WordSet& ws) {
  std::set<std::string> out;
  for (const Word& w : ws) out.insert(str(w));
  return out;
}

std::set<std::string> image_of(const Transducer& t, const std::string& x, std::size_t max_output) {
  return strings(oracle::nfa_language(image(t, bits(x)), max_output));
}

std::set<std::string> oracle_image(const Transducer& t, const std::string& x, std::size_t max_output) {
  return strings(oracle::path_image(t, bits(x), max_output));
}

/// Relations agree on all inputs up to `n`, outputs up to `n + 2`.
bool same_relation(const Transducer& a, const Transducer& b, std::size_t n) {
  for (const auto& x : oracle::binary_words_up_to(n))
    if (oracle_image(a, x, n + 2) != oracle_image(b, x, n + 2)) return false;
  return true;
}

}  // namespace

TEST_CASE("standard form splits long labels") {
  Transducer t;
  StateId p = t.add_state(true), q = t.add_state(false, true);
  t.add_arc(p, bits("01"), bits("1"), q);
  t.add_arc(p, Word{}, Word{}, q);
  Transducer s = standard_form(t);
  CHECK(s.is_standard());
  CHECK_FALSE(t.is_standard());
  CHECK(same_relation(t, s, 3));

  Transducer sub2 = make_sub(2).transducer();
  CHECK(standard_form(sub2) == sub2);

  bool kept_epsilon = false;
  for (StateId st = 0; st < s.num_states(); ++st)
    for (const auto& arc : s.arcs(st)) kept_epsilon = kept_epsilon || (arc.input.empty() && arc.output.empty());
  CHECK(kept_epsilon);
}

TEST_CASE("inverse") {
  const Transducer del1 = make_del1_insend().transducer();
  CHECK(same_relation(inverse(del1), make_ins1_delend().transducer(), 5));
  CHECK(inverse(inverse(del1)) == del1);
  const Transducer sub2 = make_sub(2).transducer();
  CHECK(same_relation(inverse(sub2), sub2, 5));
}

TEST_CASE("union") {
  const Transducer u = union_of(make_del1_insend().transducer(), make_ins1_delend().transducer());
  // Both operands preserve length.
  CHECK(image_of(u, "0", 3) == std::set<std::string>{"0", "1"});
  for (const auto& x : oracle::binary_words_up_to(4)) {
    auto expected = oracle_image(make_del1_insend().transducer(), x, 6);
    auto ins = oracle_image(make_ins1_delend().transducer(), x, 6);
    expected.insert(ins.begin(), ins.end());
    CHECK(image_of(u, x, 6) == expected);
  }
  // With length-changing operands the union picks up shorter and longer words.
  auto indel = image_of(union_of(make_id(1).transducer(), make_sub(1).transducer()), "0", 3);
  for (const char* w : {"0", "", "00", "01", "10", "1"}) CHECK(indel.count(w) == 1);
  CHECK(u.provenance().size() == 2);
  CHECK(u.provenance()[1].offset == 3);

  const Transducer sub2 = make_sub(2).transducer();
  CHECK(same_relation(union_of(sub2, sub2), sub2, 4));
  CHECK(same_relation(union_of(sub2, inverse(sub2)), sub2, 5));
  CHECK_THROWS_AS(union_of(sub2, make_sub(1, Alphabet{"a", "b", "c"}).transducer()), InvalidArgument);
}

TEST_CASE("compose") {
  const Transducer sub1 = make_sub(1).transducer();
  CHECK(image_of(compose(inverse(sub1), sub1), "00", 4) == std::set<std::string>{"00", "01", "10", "11"});
  const Transducer del1 = make_del1_insend().transducer();
  CHECK(same_relation(compose(identity_transducer(Alphabet{}), del1), del1, 4));
  CHECK(same_relation(compose(del1, identity_transducer(Alphabet{})), del1, 4));

  const Transducer segd4 = make_segd(4).transducer();
  const Transducer both = compose(inverse(segd4), segd4);
  for (const auto& x : oracle::binary_words(4)) {
    // z in both(x) iff x and z share a segd4 output.
    std::set<std::string> expected;
    for (const auto& z : oracle::binary_words(4)) {
      for (const auto& y : oracle::binary_words_up_to(4))
        if (oracle::segd_relation(x, y, 4) && oracle::segd_relation(z, y, 4)) {
          expected.insert(z);
          break;
        }
    }
    std::set<std::string> got;
    for (const auto& z : image_of(both, x, 4))
      if (z.size() == 4) got.insert(z);
    CHECK(got == expected);
  }
}

TEST_CASE("image examples") {
  const Transducer id1 = make_id(1).transducer();
  auto img = image_of(id1, "00", 4);
  auto img11 = image_of(id1, "11", 4);
  img.insert(img11.begin(), img11.end());
  CHECK(img == std::set<std::string>{"00", "0", "000", "100", "010", "001", "11", "1", "011", "101", "110", "111"});
  CHECK(image_of(make_sub(2).transducer(), "00000", 5).count("00101") == 1);
}

TEST_CASE("product with identity and with a trellis") {
  Trellis t = trellis_from_words(Alphabet{}, {bits("00"), bits("11")});
  CHECK(strings(oracle::nfa_language(product(t.dfa().to_nfa(), make_id(1).transducer()), 4)) ==
        std::set<std::string>{"00", "0", "000", "100", "010", "001", "11", "1", "011", "101", "110", "111"});
  CHECK(strings(oracle::nfa_language(product(t.dfa().to_nfa(), identity_transducer(Alphabet{})), 4)) ==
        std::set<std::string>{"00", "11"});
  CHECK_THROWS_AS(product(t.dfa().to_nfa(), make_sub(1, Alphabet{"a", "b", "c"}).transducer()), InvalidArgument);
}

TEST_CASE("product over the Hamming code never hits another codeword") {
  std::vector<Word> words;
  for (const auto& w : oracle::hamming74()) words.push_back(bits(w));
  const Transducer sub2 = make_sub(2).transducer();
  const Transducer sym = union_of(sub2, inverse(sub2));
  for (const Word& w : words) {
    const Nfa img = product(word_automaton(Alphabet{}, w), sym);
    for (const Word& v : words) CHECK(accepts(img, v) == (v == w));
  }
}

TEST_CASE("input preservation") {
  for (const char* name : {"sub:2", "id:2", "del1", "ins1", "bsid2", "segd:4", "ov"})
    CHECK(is_input_preserving(channel_by_name(name).transducer(), 6));
  Transducer flip;
  StateId s = flip.add_state(true, true);
  flip.add_arc(s, 0, 1, s);
  auto x = input_preservation_counterexample(flip, 3);
  REQUIRE(x);
  CHECK(str(*x) == "0");
  Transducer none;
  none.add_state(true, false);
  CHECK(is_input_preserving(none, 5));
}

TEST_CASE("product, inverse and compose agree with path enumeration [property]") {
  Rng rng(77);
  for (int round = 0; round < 150; ++round) {
    Transducer a = oracle::random_transducer(rng, 1 + uniform_below(rng, 4), uniform_below(rng, 9), 0.3);
    Transducer b = oracle::random_transducer(rng, 1 + uniform_below(rng, 4), uniform_below(rng, 9), 0.3);
    const std::size_t n = 4, out = 6;
    const Transducer ia = inverse(a), ab = compose(b, a);
    const auto inputs = oracle::binary_words_up_to(n);
    for (const auto& x : inputs) {
      // Outputs of bounded length only: the product may be infinite.
      auto expected = oracle_image(a, x, out);
      CHECK(image_of(a, x, out) == expected);

      std::set<std::string> via;
      for (const auto& y : oracle_image(a, x, out + 2))
        for (const auto& z : oracle_image(b, y, out)) via.insert(z);
      std::set<std::string> composed;
      for (const auto& z : oracle_image(ab, x, out)) composed.insert(z);
      for (const auto& z : via) CHECK(composed.count(z) == 1);
      // Without epsilon inputs every intermediate word is short enough for
      // the oracle to see.
      if (!a.has_epsilon_input()) CHECK(composed == via);

      for (const auto& y : inputs)
        CHECK(oracle_image(a, x, n).count(y) == oracle_image(ia, y, n).count(x));
    }
    // Union over a random code equals the product over its trellis.
    std::vector<Word> code;
    for (const auto& w : oracle::random_code(rng, 3, uniform_below(rng, 5))) code.push_back(bits(w));
    const Trellis t = trellis_from_words(Alphabet{}, code, 3);
    std::set<std::string> expected;
    for (const Word& w : code)
      for (const auto& y : oracle_image(a, str(w), out)) expected.insert(y);
    CHECK(strings(oracle::nfa_language(product(t.dfa().to_nfa(), a), out)) == expected);
  }
}
