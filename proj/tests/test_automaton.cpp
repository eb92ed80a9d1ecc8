#include <map>

#include "doctest.h"
#include "oracles.hpp"

#include "chancodes/automaton.hpp"
#include "chancodes/error.hpp"

using namespace chancodes;
using oracle::bits;
using oracle::str;

namespace {

std::set<std::string> language(const Nfa& a, std::size_t max_length) {
  std::set<std::string> out;
  for (const Word& w : oracle::nfa_language(a, max_length)) out.insert(str(w));
  return out;
}

std::set<std::string> code_set(const Trellis& t) {
  std::set<std::string> out;
  for (const Word& w : t.words()) out.insert(str(w));
  return out;
}

Trellis trellis_of(const std::vector<std::string>& words, std::size_t length) {
  std::vector<Word> ws;
  for (const auto& w : words) ws.push_back(bits(w));
  return trellis_from_words(Alphabet{}, ws, length);
}

Nfa random_nfa(Rng& rng, std::size_t states, std::size_t arcs, double epsilon_rate) {
  Nfa a;
  for (std::size_t i = 0; i < states; ++i) a.add_state(i == 0 || uniform_unit(rng) < 0.15, uniform_unit(rng) < 0.4);
  for (std::size_t i = 0; i < arcs; ++i) {
    Symbol label = uniform_unit(rng) < epsilon_rate ? kEpsilon : static_cast<Symbol>(uniform_below(rng, 2));
    a.add_arc(static_cast<StateId>(uniform_below(rng, states)), label, static_cast<StateId>(uniform_below(rng, states)));
  }
  return a;
}

}  // namespace

TEST_CASE("trim removes unreachable and dead components") {
  Nfa a;
  StateId s = a.add_state(true), f = a.add_state(false, true);
  StateId island = a.add_state(false, true), dead = a.add_state();
  a.add_arc(s, 0, f);
  a.add_arc(island, 1, island);
  a.add_arc(s, 1, dead);
  Nfa t = trim(a);
  CHECK(t.num_states() == 2);
  CHECK(language(t, 4) == language(a, 4));

  Trellis code = trellis_of({"00", "11"}, 2);
  Dfa d = code.dfa();
  StateId dangling = d.add_state();
  d.set_transition(dangling, 1, dangling);
  CHECK(trim(d).num_states() == code.dfa().num_states());
  CHECK(language(trim(d).to_nfa(), 3) == std::set<std::string>{"00", "11"});
}

TEST_CASE("accepts") {
  CHECK(universe_trellis(Alphabet{}, 3).contains(bits("010")));
  CHECK_FALSE(accepts(trellis_of({"0100", "1001"}, 4).dfa().to_nfa(), bits("0000")));

  Nfa eps;
  StateId a = eps.add_state(true), b = eps.add_state(false, true);
  eps.add_arc(a, kEpsilon, b);
  eps.add_arc(b, kEpsilon, a);
  CHECK(accepts(eps, Word{}));
  CHECK_FALSE(accepts(eps, bits("0")));
  CHECK_THROWS_AS(accepts(eps, Word{7}), InvalidArgument);
}

TEST_CASE("complement, intersect, determinize examples") {
  Trellis one = trellis_of({"000"}, 3);
  Dfa c = complement(one.dfa(), 3);
  CHECK(count_words(c) == 7);
  CHECK_FALSE(c.accepts(bits("000")));

  Trellis pair = trellis_of({"010", "111"}, 3);
  CHECK(code_set(Trellis::from_dfa(intersect(universe_trellis(Alphabet{}, 3).dfa(), pair.dfa()))) ==
        std::set<std::string>{"010", "111"});

  Nfa two;
  StateId i0 = two.add_state(true), i1 = two.add_state(true), f = two.add_state(false, true);
  two.add_arc(i0, 0, f);
  two.add_arc(i1, 1, f);
  Dfa d = determinize(two);
  CHECK(d.initial() != kNoState);
  CHECK(language(d.to_nfa(), 3) == std::set<std::string>{"0", "1"});
}

TEST_CASE("universe trellis") {
  Trellis u2 = universe_trellis(Alphabet{}, 2);
  CHECK(u2.count() == 4);
  CHECK(u2.dfa().num_states() == 3);
  CHECK(universe_trellis(Alphabet{}, 8).count() == 256);
  Trellis abc = universe_trellis(Alphabet{"a", "b", "c"}, 1);
  CHECK(abc.count() == 3);
  Trellis eps = universe_trellis(Alphabet{}, 0);
  CHECK(eps.count() == 1);
  CHECK(eps.contains(Word{}));
}

TEST_CASE("trellis from words") {
  Trellis t = trellis_of({"00", "11"}, 2);
  CHECK(t.count() == 2);
  CHECK(code_set(t) == std::set<std::string>{"00", "11"});
  CHECK(code_set(trellis_of({"0100", "1001"}, 4)) == std::set<std::string>{"0100", "1001"});
  CHECK(trellis_of(oracle::hamming74(), 7).count() == 16);
  CHECK_THROWS_AS(trellis_from_words(Alphabet{}, {bits("00"), bits("1")}), InvalidArgument);
  Trellis empty = trellis_from_words(Alphabet{}, {}, 5);
  CHECK(empty.empty());
  CHECK(empty.length() == 5);
}

TEST_CASE("add_word") {
  Trellis t = trellis_of({"00"}, 2);
  CHECK(t.add_word(bits("01")));
  CHECK(code_set(t) == std::set<std::string>{"00", "01"});
  CHECK_FALSE(t.add_word(bits("01")));
  CHECK_THROWS_AS(t.add_word(bits("011")), InvalidArgument);

  Trellis e(Alphabet{}, 2);
  e.add_word(bits("11"));
  e.add_word(bits("10"));
  CHECK(code_set(e) == std::set<std::string>{"10", "11"});
}

TEST_CASE("add_word keeps unrelated words out of shared trellises [property]") {
  // Minimal trellises share suffix states; adding a word must not drag in
  // other words through a shared state.
  Rng rng(11);
  for (int round = 0; round < 300; ++round) {
    const std::size_t length = 1 + uniform_below(rng, 6);
    auto words = oracle::random_code(rng, length, uniform_below(rng, 12));
    Trellis t = Trellis::from_dfa(trellis_of(words, length).dfa(), length);
    std::set<std::string> expected(words.begin(), words.end());
    for (int k = 0; k < 5; ++k) {
      std::string w = oracle::binary_words(length)[uniform_below(rng, std::size_t{1} << length)];
      CHECK(t.add_word(bits(w)) == expected.insert(w).second);
      REQUIRE(code_set(t) == expected);
      CHECK(t.count() == expected.size());
    }
    // Re-validated as a trellis with the same language.
    CHECK(code_set(Trellis::from_dfa(t.dfa(), length)) == expected);
  }
}

TEST_CASE("automaton algebra agrees with path enumeration [property]") {
  Rng rng(3);
  for (int round = 0; round < 200; ++round) {
    Nfa a = random_nfa(rng, 1 + uniform_below(rng, 5), uniform_below(rng, 10), 0.25);
    Nfa b = random_nfa(rng, 1 + uniform_below(rng, 5), uniform_below(rng, 10), 0.25);
    const std::size_t n = 5;
    const auto la = language(a, n), lb = language(b, n);
    CHECK(language(trim(a), n) == la);
    CHECK(language(remove_epsilon(a), n) == la);
    Dfa da = determinize(a), db = determinize(b);
    CHECK(language(da.to_nfa(), n) == la);

    std::set<std::string> inter, uni = la, comp;
    for (const auto& w : la)
      if (lb.count(w)) inter.insert(w);
    uni.insert(lb.begin(), lb.end());
    for (const auto& w : oracle::binary_words_up_to(n))
      if (!la.count(w)) comp.insert(w);
    CHECK(language(intersect(da, db).to_nfa(), n) == inter);
    CHECK(language(intersect(a, b), n) == inter);
    CHECK(language(union_of(a, b), n) == uni);
    CHECK(language(complement(da).to_nfa(), n) == comp);
    CHECK(is_empty(a) == la.empty());

    auto shortest = shortest_word(a);
    CHECK(shortest.has_value() == !la.empty());
    if (shortest) {
      // Among words of minimal length, the least.
      std::string best;
      bool found = false;
      for (const auto& w : la)
        if (!found || w.size() < best.size() || (w.size() == best.size() && w < best)) {
          best = w;
          found = true;
        }
      CHECK(str(*shortest) == best);
    }
    std::set<std::string> enumerated;
    for (const Word& w : enumerate_words(a, n)) enumerated.insert(str(w));
    CHECK(enumerated == la);
  }
}

TEST_CASE("counting and empty-language sampling") {
  Trellis t = trellis_of({"0100", "1001", "1111"}, 4);
  CHECK(count_words(t.dfa()) == 3);
  Rng rng(1);
  Trellis empty(Alphabet{}, 4);
  CHECK_THROWS_AS(empty.sample(rng), EmptyLanguageError);
  CHECK_THROWS_AS(sample_uniform(empty.dfa(), rng), EmptyLanguageError);
  CHECK_THROWS_AS(count_words(complement(t.dfa())), InvalidArgument);
}

TEST_CASE("uniform sampling passes a chi-squared test") {
  // Uneven branching: the prefix tree has very different subtree sizes.
  std::vector<std::string> words = {"000", "001", "010", "011", "100", "111"};
  Trellis t = trellis_of(words, 3);
  UniformSampler sampler(t.dfa());
  Rng rng(2024);
  const int draws = 60000;
  std::map<std::string, int> hits;
  for (int i = 0; i < draws; ++i) hits[str(sampler(rng))]++;
  REQUIRE(hits.size() == words.size());
  double chi2 = 0, expected = static_cast<double>(draws) / static_cast<double>(words.size());
  for (auto& [w, h] : hits) chi2 += (h - expected) * (h - expected) / expected;
  // 5 degrees of freedom, 0.999 quantile.
  CHECK(chi2 < 20.52);
}

TEST_CASE("random helpers") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) CHECK(uniform_below(rng, 7) < 7);
  CHECK(split_seed(1, 0) != split_seed(1, 1));
  CHECK(split_seed(1, 0) == split_seed(1, 0));
  CHECK(split_seed(1, 0) != split_seed(2, 0));
}
