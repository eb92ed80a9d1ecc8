#include "chancodes/codegen.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"

#include "chancodes/error.hpp"
#include "chancodes/properties.hpp"

namespace chancodes {

namespace {

using u128 = unsigned __int128;

/// Shortest round-trip decimal of x in [0, 1] as numerator / 10^digits.
struct Decimal {
  std::uint64_t numerator = 0;
  int digits = 0;
};

std::optional<Decimal> to_decimal(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  if (ec != std::errc{}) return std::nullopt;
  Decimal d;
  bool fraction = false;
  for (char* p = buf; p != end; ++p) {
    if (*p == '.') {
      fraction = true;
      continue;
    }
    if (d.numerator > 100'000'000'000'000ULL) return std::nullopt;
    d.numerator = d.numerator * 10 + static_cast<std::uint64_t>(*p - '0');
    if (fraction) ++d.digits;
  }
  return d;
}

u128 pow10(int k) {
  u128 r = 1;
  for (int i = 0; i < k; ++i) r *= 10;
  return r;
}

/// Membership in an epsilon-free Nfa, with subsets determinized on demand.
class LazyDfa {
 public:
  explicit LazyDfa(const Nfa& nfa) : nfa_(remove_epsilon(nfa)), k_(nfa_.alphabet().size()) {
    auto init = nfa_.initial_states();
    std::sort(init.begin(), init.end());
    start_ = intern(std::move(init));
  }

  bool accepts(const Word& w) {
    std::uint32_t s = start_;
    for (Symbol a : w) {
      const std::size_t slot = static_cast<std::size_t>(s) * k_ + a;
      if (delta_[slot] == kUnknown) {
        const std::uint32_t next = intern(step(s, a));
        delta_[slot] = next;
      }
      s = delta_[slot];
      if (s == dead_) return false;
    }
    return final_[s] != 0;
  }

 private:
  static constexpr std::uint32_t kUnknown = 0xffffffffu;

  std::vector<StateId> step(std::uint32_t s, Symbol a) const {
    std::vector<StateId> out;
    for (StateId q : sets_[s])
      for (const Arc& arc : nfa_.arcs(q))
        if (arc.label == a) out.push_back(arc.target);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::uint32_t intern(std::vector<StateId> set) {
    auto [it, inserted] = index_.try_emplace(set, static_cast<std::uint32_t>(sets_.size()));
    if (inserted) {
      bool fin = false;
      for (StateId q : set) fin = fin || nfa_.is_final(q);
      if (set.empty()) dead_ = it->second;
      sets_.push_back(std::move(set));
      final_.push_back(fin);
      delta_.resize(delta_.size() + k_, kUnknown);
    }
    return it->second;
  }

  Nfa nfa_;
  std::size_t k_;
  std::map<std::vector<StateId>, std::uint32_t> index_;
  std::vector<std::vector<StateId>> sets_;
  std::vector<char> final_;
  std::vector<std::uint32_t> delta_;
  std::uint32_t start_ = 0;
  std::uint32_t dead_ = kUnknown;
};

std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(x);
}

}  // namespace

std::uint64_t trial_bound(double f, double epsilon) {
  if (!(f >= 0.0 && f < 1.0)) throw InvalidArgument("f must satisfy 0 <= f < 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must satisfy 0 < epsilon <= 1");
  auto df = to_decimal(f), de = to_decimal(epsilon);
  std::optional<std::uint64_t> exact;
  if (df && de && df->digits <= 12 && de->digits <= 12) {
    // 1/(4 e (1-f)^2) = 10^de * 10^(2 df) / (4 e_num (10^df - f_num)^2)
    const u128 gap = pow10(df->digits) - df->numerator;
    const u128 den = 4 * static_cast<u128>(de->numerator) * gap * gap;
    const u128 num = pow10(de->digits) * pow10(2 * df->digits);
    if (den != 0 && (den / 4 / gap) / gap == de->numerator) {
      const u128 q = num / den;
      if (q < kMaxTrials) exact = static_cast<std::uint64_t>(q) + 1;
    }
  }
  if (!exact) {
    const long double gap = 1.0L - static_cast<long double>(f);
    const long double q = std::floor(1.0L / (4.0L * epsilon * gap * gap));
    if (!(q < static_cast<long double>(kMaxTrials)))
      throw InvalidArgument("f and epsilon require more than " + std::to_string(kMaxTrials) + " trials");
    exact = static_cast<std::uint64_t>(q) + 1;
  }
  return *exact;
}

NextWordResult next_word(const Transducer& symmetric, const Trellis& code, std::uint64_t trials, Rng& rng,
                         const UniformSampler& universe) {
  NextWordResult result;
  if (universe.count() == 0) {
    result.empty_universe = true;
    return result;
  }
  LazyDfa excluded(product(code.dfa().to_nfa(), symmetric));
  for (std::uint64_t i = 0; i < trials; ++i) {
    Word w = universe(rng);
    ++result.trials;
    if (!code.contains(w) && !excluded.accepts(w)) {
      result.word = std::move(w);
      return result;
    }
  }
  return result;
}

NextWordResult next_word(const Channel& sigma, const Trellis& code, double f, double epsilon, Rng& rng,
                         const UniformSampler* universe) {
  const std::uint64_t n = trial_bound(f, epsilon);
  if (universe) return next_word(sigma.symmetric(), code, n, rng, *universe);
  const UniformSampler all(universe_trellis(code.alphabet(), code.length()).dfa());
  return next_word(sigma.symmetric(), code, n, rng, all);
}

GenReport make_code(const Channel& sigma, const Alphabet& alphabet, const GenOptions& options) {
  if (!(sigma.alphabet() == alphabet)) throw InvalidArgument("channel alphabet differs from the code alphabet");
  const auto started = std::chrono::steady_clock::now();
  GenReport r;
  r.trellis = options.initial ? *options.initial : Trellis(alphabet, options.length);
  r.channel = sigma.name();
  r.length = options.length;
  r.target = options.target;
  r.f = options.f;
  r.epsilon = options.epsilon;
  r.trials = trial_bound(options.f, options.epsilon);
  r.seed = options.seed;
  r.universe = options.universe_name;
  if (!(r.trellis.alphabet() == alphabet)) throw InvalidArgument("initial code alphabet differs");
  if (r.trellis.length() != options.length)
    throw InvalidArgument("initial code has block length " + std::to_string(r.trellis.length()) + ", expected " +
                          std::to_string(options.length));
  if (Witness w = detection_witness(r.trellis, sigma); !w.none())
    throw NotDetectingError("initial code is not " + sigma.name() + "-detecting: " + w.render(alphabet), w);
  r.initial_words = r.trellis.words();
  r.initial_size = r.initial_words.size();

  const UniformSampler universe(options.universe ? *options.universe
                                                 : universe_trellis(alphabet, options.length).dfa());
  const Transducer symmetric = sigma.symmetric();
  Rng rng(options.seed);
  while (r.words.size() < options.target) {
    NextWordResult next = next_word(symmetric, r.trellis, r.trials, rng, universe);
    r.trials_per_word.push_back(next.trials);
    if (!next.word) {
      r.exhausted = true;
      break;
    }
    r.trellis.add_word(*next.word);
    r.words.push_back(std::move(*next.word));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

std::string GenReport::to_text(bool timing) const {
  const Alphabet& a = trellis.alphabet();
  std::ostringstream out;
  out << "# chancodes generated code\n"
      << "channel: " << channel << "\n"
      << "length: " << length << "\n"
      << "target: " << target << "\n"
      << "f: " << format_number(f) << "\n"
      << "epsilon: " << format_number(epsilon) << "\n"
      << "trials: " << trials << "\n"
      << "seed: " << seed << "\n"
      << "rng: " << rng << "\n"
      << "universe: " << universe << "\n"
      << "initial-size: " << initial_size << "\n"
      << "--- codewords\n";
  for (const Word& w : initial_words) out << a.format(w) << "\n";
  for (const Word& w : words) out << a.format(w) << "\n";
  out << "--- summary\n"
      << "size: " << size() << "\n"
      << "added: " << words.size() << "\n"
      << "exhausted: " << (exhausted ? "true" : "false") << "\n"
      << "trials-per-word:";
  for (auto t : trials_per_word) out << " " << t;
  out << "\n";
  if (timing) out << "wall-time-s: " << format_number(seconds) << "\n";
  return out.str();
}

std::string GenReport::to_json(bool timing) const {
  const Alphabet& a = trellis.alphabet();
  nlohmann::ordered_json j;
  j["channel"] = channel;
  j["length"] = length;
  j["target"] = target;
  j["f"] = f;
  j["epsilon"] = epsilon;
  j["trials"] = trials;
  j["seed"] = seed;
  j["rng"] = rng;
  j["universe"] = universe;
  j["initial_size"] = initial_size;
  auto& words_json = j["codewords"] = nlohmann::ordered_json::array();
  for (const Word& w : initial_words) words_json.push_back(a.format(w));
  for (const Word& w : words) words_json.push_back(a.format(w));
  j["size"] = size();
  j["added"] = words.size();
  j["exhausted"] = exhausted;
  j["trials_per_word"] = trials_per_word;
  if (timing) j["wall_time_s"] = seconds;
  return j.dump(2) + "\n";
}

bool is_overlap_free(const Word& w) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end() - static_cast<std::ptrdiff_t>(k)))
      return false;
  return true;
}

Trellis overlap_free_trellis(const Alphabet& alphabet, std::size_t length) {
  double total = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(length));
  if (total > static_cast<double>(1u << 22))
    throw InvalidArgument("overlap-free universe too large to enumerate");
  std::vector<Word> words;
  for (Word& w : all_words(alphabet, length))
    if (is_overlap_free(w)) words.push_back(std::move(w));
  return trellis_from_words(alphabet, words, length);
}

}  // namespace chancodes
