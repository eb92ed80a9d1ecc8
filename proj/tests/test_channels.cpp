#include "doctest.h"
#include "oracles.hpp"

#include "chancodes/channels.hpp"
#include "chancodes/error.hpp"

using namespace chancodes;
using oracle::bits;
using oracle::str;

namespace {

std::set<std::string> image_strings(const Channel& c, const std::string& x, std::size_t max_output) {
  std::set<std::string> out;
  for (const Word& w : oracle::nfa_language(image(c.transducer(), bits(x)), max_output)) out.insert(str(w));
  return out;
}

/// Checks the channel's relation against a closed-form relation for inputs up
/// to `n` and outputs up to `n + slack`.
void check_relation(const Channel& c, const oracle::Relation& rel, std::size_t n, std::size_t slack) {
  const auto outputs = oracle::binary_words_up_to(n + slack);
  for (const auto& x : oracle::binary_words_up_to(n)) {
    auto got = image_strings(c, x, n + slack);
    std::set<std::string> expected;
    for (const auto& y : outputs)
      if (rel(x, y)) expected.insert(y);
    INFO(c.name(), " x=", x);
    CHECK(got == expected);
  }
}

}  // namespace

TEST_CASE("sub") {
  check_relation(make_sub(2), [](auto& x, auto& y) { return oracle::hamming_within(x, y, 2); }, 5, 0);
  check_relation(make_sub(1), [](auto& x, auto& y) { return oracle::hamming_within(x, y, 1); }, 5, 0);
  check_relation(make_sub(0), [](auto& x, auto& y) { return x == y; }, 5, 1);
  CHECK(image_strings(make_sub(2), "00000", 5).count("00101") == 1);
  CHECK(image_strings(make_sub(1), "000", 3).size() == 4);
  CHECK_THROWS_AS(make_sub(-1), InvalidArgument);
}

TEST_CASE("id") {
  check_relation(make_id(1), [](auto& x, auto& y) { return oracle::indel_distance(x, y) <= 1; }, 5, 1);
  check_relation(make_id(2), [](auto& x, auto& y) { return oracle::indel_distance(x, y) <= 2; }, 4, 2);
  check_relation(make_id(0), [](auto& x, auto& y) { return x == y; }, 5, 1);
  std::set<std::string> short_words;
  for (const auto& w : oracle::binary_words_up_to(2)) short_words.insert(w);
  CHECK(image_strings(make_id(2), "", 4) == short_words);
}

TEST_CASE("del1 and ins1") {
  check_relation(make_del1_insend(), oracle::del1_relation, 5, 1);
  check_relation(make_ins1_delend(), [](auto& x, auto& y) { return oracle::del1_relation(y, x); }, 5, 1);
  CHECK(image_strings(make_del1_insend(), "01", 3) == std::set<std::string>{"00", "01", "10", "11"});
  for (const auto& x : oracle::binary_words(5))
    for (const auto& y : image_strings(make_del1_insend(), x, 7)) CHECK(y.size() == 5);
}

TEST_CASE("bsid2") {
  const Channel c = make_bsid();
  CHECK(c.transducer().num_states() == 7);
  check_relation(c, oracle::bsid_relation, 5, 2);
  auto img = image_strings(c, "10", 4);
  for (const char* w : {"10", "01", "0", "1", "010", "100", "101", "110"}) CHECK(img.count(w) == 1);
  CHECK_THROWS_AS(make_bsid(Alphabet{"a", "b", "c"}), InvalidArgument);
}

TEST_CASE("segd") {
  check_relation(make_segd(2), [](auto& x, auto& y) { return oracle::segd_relation(x, y, 2); }, 6, 0);
  check_relation(make_segd(3), [](auto& x, auto& y) { return oracle::segd_relation(x, y, 3); }, 6, 0);
  check_relation(make_segd(4), [](auto& x, auto& y) { return oracle::segd_relation(x, y, 4); }, 8, 0);
  auto img = image_strings(make_segd(2), "0101", 4);
  for (const char* w : {"101", "010", "11"}) CHECK(img.count(w) == 1);
  for (const auto& x : oracle::binary_words(4)) CHECK(image_strings(make_segd(4), x, 4).count(x) == 1);
  for (const auto& x : oracle::binary_words(5)) CHECK(image_strings(make_segd(4), x, 6).empty());
  CHECK(make_segd(4).transducer().num_states() == 9);
  CHECK_THROWS_AS(make_segd(1), InvalidArgument);
}

TEST_CASE("overlap") {
  check_relation(make_overlap(), oracle::overlap_relation, 5, 2);
  CHECK(image_strings(make_overlap(), "1001", 4).count("0100") == 1);
  CHECK(image_strings(make_overlap(), "0", 2) == std::set<std::string>{"0", "00", "01"});
}

TEST_CASE("registry and combination") {
  CHECK(channel_by_name("sub:3").params().at("k") == 3);
  CHECK(channel_by_name("segd:4").name() == "segd:4");
  CHECK_THROWS_AS(channel_by_name("sub:x"), InvalidArgument);
  CHECK_THROWS_AS(channel_by_name("nope"), InvalidArgument);
  CHECK(channel_names().size() == 7);

  const Channel both = combine({make_sub(2), make_del1_insend()});
  CHECK(both.name() == "sub:2|del1");
  for (const auto& x : oracle::binary_words_up_to(4)) {
    auto expected = image_strings(make_sub(2), x, 5);
    auto d = image_strings(make_del1_insend(), x, 5);
    expected.insert(d.begin(), d.end());
    CHECK(image_strings(both, x, 5) == expected);
  }

  Transducer flip;
  StateId s = flip.add_state(true, true);
  flip.add_arc(s, 0, 1, s);
  CHECK_THROWS_AS(Channel(flip, "flip"), InvalidArgument);
}

TEST_CASE("channels over a larger alphabet") {
  const Alphabet abc{"a", "b", "c"};
  const Channel s = make_sub(1, abc);
  CHECK(oracle::path_image(s.transducer(), Word{0, 1}, 2).size() == 5);
  CHECK(is_input_preserving(make_id(2, abc).transducer(), 4));
  CHECK(is_input_preserving(make_segd(3, abc).transducer(), 6));
}
