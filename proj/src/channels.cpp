#include "chancodes/channels.hpp"

#include <charconv>

#include "chancodes/error.hpp"
#include "chancodes/text_format.hpp"

namespace chancodes {

namespace {

std::size_t check_length(const Alphabet& alphabet) {
  // Keep the bounded check to a few thousand words for large alphabets.
  std::size_t length = kPreservationCheckLength;
  auto words_up_to = [&](std::size_t n) {
    std::size_t total = 0, layer = 1;
    for (std::size_t i = 0; i <= n; ++i, layer *= alphabet.size()) total += layer;
    return total;
  };
  while (length > 2 && words_up_to(length) > 5000) --length;
  return length;
}

void add_identity_loops(Transducer& t, StateId s) {
  for (Symbol a = 0; a < t.alphabet().size(); ++a) t.add_arc(s, a, a, s);
}

long parse_param(std::string_view name, std::string_view value) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw InvalidArgument("bad parameter in channel name '" + std::string(name) + "'");
  return v;
}

}  // namespace

Channel::Channel(Transducer transducer, std::string name, Params params, bool verify)
    : transducer_(std::move(transducer)), name_(std::move(name)), params_(std::move(params)) {
  if (transducer_.name().empty()) transducer_.set_name(name_);
  if (verify) {
    if (auto x = input_preservation_counterexample(transducer_, check_length(alphabet())))
      throw InvalidArgument("channel '" + name_ + "' is not input-preserving: word '" + alphabet().format(*x) +
                            "' is not among its own outputs");
  }
}

Transducer Channel::symmetric() const { return union_of(transducer_, inverse(transducer_)); }

Channel make_sub(long k, const Alphabet& alphabet) {
  if (k < 0) throw InvalidArgument("sub: k must be non-negative");
  const std::string name = "sub:" + std::to_string(k);
  Transducer t(alphabet, name);
  for (long i = 0; i <= k; ++i) t.add_state(i == 0, true);
  for (long i = 0; i <= k; ++i) {
    const auto s = static_cast<StateId>(i);
    add_identity_loops(t, s);
    if (i == k) continue;
    for (Symbol a = 0; a < alphabet.size(); ++a)
      for (Symbol b = 0; b < alphabet.size(); ++b)
        if (a != b) t.add_arc(s, a, b, s + 1);
  }
  return Channel(std::move(t), name, {{"k", k}});
}

Channel make_id(long k, const Alphabet& alphabet) {
  if (k < 0) throw InvalidArgument("id: k must be non-negative");
  const std::string name = "id:" + std::to_string(k);
  Transducer t(alphabet, name);
  for (long i = 0; i <= k; ++i) t.add_state(i == 0, true);
  for (long i = 0; i <= k; ++i) {
    const auto s = static_cast<StateId>(i);
    add_identity_loops(t, s);
    if (i == k) continue;
    for (Symbol a = 0; a < alphabet.size(); ++a) {
      t.add_arc(s, a, kEpsilon, s + 1);
      t.add_arc(s, kEpsilon, a, s + 1);
    }
  }
  return Channel(std::move(t), name, {{"k", k}});
}

Channel make_del1_insend(const Alphabet& alphabet) {
  Transducer t(alphabet, "del1");
  StateId s = t.add_state(true, true), r = t.add_state(), e = t.add_state(false, true);
  add_identity_loops(t, s);
  add_identity_loops(t, r);
  for (Symbol a = 0; a < alphabet.size(); ++a) {
    t.add_arc(s, a, kEpsilon, r);
    t.add_arc(r, kEpsilon, a, e);
  }
  return Channel(std::move(t), "del1");
}

Channel make_ins1_delend(const Alphabet& alphabet) {
  Transducer t(alphabet, "ins1");
  StateId s = t.add_state(true, true), r = t.add_state(), e = t.add_state(false, true);
  add_identity_loops(t, s);
  add_identity_loops(t, r);
  for (Symbol a = 0; a < alphabet.size(); ++a) {
    t.add_arc(s, kEpsilon, a, r);
    t.add_arc(r, a, kEpsilon, e);
  }
  return Channel(std::move(t), "ins1");
}

Channel make_bsid(const Alphabet& alphabet) {
  if (alphabet.size() != 2) throw InvalidArgument("bsid2 requires a binary alphabet");
  Transducer t(alphabet, "bsid2");
  // Levels 0, 1, 2 count the errors so far; the a/b states sit inside a swap.
  const StateId l0 = t.add_state(true, true), l1 = t.add_state(false, true), l2 = t.add_state(false, true);
  const StateId l0a = t.add_state(), l0b = t.add_state(), l1a = t.add_state(), l1b = t.add_state();
  const Symbol zero = 0, one = 1;
  for (StateId s : {l0, l1, l2}) add_identity_loops(t, s);
  for (auto [from, to, via01, via10] : {std::tuple{l0, l1, l0a, l0b}, std::tuple{l1, l2, l1a, l1b}}) {
    for (Symbol a = 0; a < 2; ++a) {
      t.add_arc(from, kEpsilon, a, to);
      t.add_arc(from, a, kEpsilon, to);
    }
    t.add_arc(from, zero, one, via01);  // 01 -> 10
    t.add_arc(via01, one, zero, to);
    t.add_arc(from, one, zero, via10);  // 10 -> 01
    t.add_arc(via10, zero, one, to);
  }
  return Channel(std::move(t), "bsid2", {{"k", 2}});
}

Channel make_segd(long b, const Alphabet& alphabet) {
  if (b < 2) throw InvalidArgument("segd: b must be at least 2");
  const std::string name = "segd:" + std::to_string(b);
  Transducer t(alphabet, name);
  // s[i]: i symbols of the current segment read without deletion; d[i]: with one.
  const StateId start = t.add_state(true, false);
  std::vector<StateId> s(b), d(b);
  for (long i = 1; i < b; ++i) s[i] = t.add_state();
  for (long i = 1; i < b; ++i) d[i] = t.add_state();
  const StateId f0 = t.add_state(false, true), f1 = t.add_state(false, true);
  for (Symbol a = 0; a < alphabet.size(); ++a) {
    for (StateId boundary : {start, f0, f1}) {
      t.add_arc(boundary, a, a, s[1]);
      t.add_arc(boundary, a, kEpsilon, d[1]);
    }
    for (long i = 1; i + 1 < b; ++i) {
      t.add_arc(s[i], a, a, s[i + 1]);
      t.add_arc(s[i], a, kEpsilon, d[i + 1]);
      t.add_arc(d[i], a, a, d[i + 1]);
    }
    t.add_arc(s[b - 1], a, a, f0);
    t.add_arc(s[b - 1], a, kEpsilon, f0);
    t.add_arc(d[b - 1], a, a, f1);
  }
  return Channel(std::move(t), name, {{"b", b}});
}

Channel make_overlap(const Alphabet& alphabet) {
  Transducer t(alphabet, "ov");
  const StateId del = t.add_state(true, false), keep = t.add_state(false, true), ins = t.add_state(false, true);
  for (Symbol a = 0; a < alphabet.size(); ++a) {
    t.add_arc(del, a, kEpsilon, del);
    t.add_arc(del, a, a, keep);
    t.add_arc(keep, a, a, keep);
    t.add_arc(keep, kEpsilon, a, ins);
    t.add_arc(ins, kEpsilon, a, ins);
  }
  return Channel(std::move(t), "ov");
}

Channel channel_by_name(std::string_view name, const Alphabet& alphabet) {
  if (name == "del1") return make_del1_insend(alphabet);
  if (name == "ins1") return make_ins1_delend(alphabet);
  if (name == "bsid2") return make_bsid(alphabet);
  if (name == "ov") return make_overlap(alphabet);
  auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    auto family = name.substr(0, colon);
    long p = parse_param(name, name.substr(colon + 1));
    if (family == "sub") return make_sub(p, alphabet);
    if (family == "id") return make_id(p, alphabet);
    if (family == "segd") return make_segd(p, alphabet);
  }
  throw InvalidArgument("unknown channel '" + std::string(name) + "'");
}

std::vector<std::string> channel_names() { return {"sub:k", "id:k", "del1", "ins1", "bsid2", "segd:b", "ov"}; }

Channel combine(const std::vector<Channel>& channels) {
  if (channels.empty()) throw InvalidArgument("no channel given");
  if (channels.size() == 1) return channels.front();
  Transducer t = channels.front().transducer();
  std::string name = channels.front().name();
  for (std::size_t i = 1; i < channels.size(); ++i) {
    t = union_of(t, channels[i].transducer());
    name += "|" + channels[i].name();
  }
  t.set_name(name);
  return Channel(std::move(t), name, {}, false);
}

Channel parse_channel(std::string_view text, const std::optional<Alphabet>& alphabet, std::string* warning,
                      std::string name) {
  Transducer t = standard_form(parse_transducer(text, alphabet));
  t.set_name(name);
  if (auto x = input_preservation_counterexample(t, check_length(t.alphabet()))) {
    if (warning)
      *warning = "transducer is not input-preserving: '" + t.alphabet().format(*x) + "' is not among its own outputs";
  }
  return Channel(std::move(t), std::move(name), {}, false);
}

std::string serialize_channel(const Channel& channel) { return serialize_transducer(channel.transducer()); }

}  // namespace chancodes
