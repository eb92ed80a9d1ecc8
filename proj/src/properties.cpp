#include "chancodes/properties.hpp"

#include <numeric>
#include <unordered_map>

namespace chancodes {

namespace {

/// Unmatched part of a partial alignment of an input word with an output
/// word.  At most one side is non-empty.
struct Delay {
  Word input;
  Word output;

  bool zero() const { return input.empty() && output.empty(); }
  bool operator==(const Delay&) const = default;
};

/// Appends one transition's labels; false when the two sides disagree.
bool advance(Delay& d, Symbol in, Symbol out) {
  if (in != kEpsilon) d.input.push_back(in);
  if (out != kEpsilon) d.output.push_back(out);
  std::size_t n = std::min(d.input.size(), d.output.size());
  for (std::size_t i = 0; i < n; ++i)
    if (d.input[i] != d.output[i]) return false;
  d.input.erase(d.input.begin(), d.input.begin() + static_cast<std::ptrdiff_t>(n));
  d.output.erase(d.output.begin(), d.output.begin() + static_cast<std::ptrdiff_t>(n));
  return true;
}

struct ProductArc {
  Symbol in;
  Symbol out;
  std::uint32_t target;
};

/// Trellis x channel x trellis, restricted to states on an initial-to-final
/// path.
class DetectionProduct {
 public:
  DetectionProduct(const Trellis& t, const Transducer& sigma) {
    const Dfa& d = t.dfa();
    const Transducer s = standard_form(sigma);
    const std::uint64_t nt = d.num_states(), ns = s.num_states();
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    struct Triple {
      StateId p, q, r;
    };
    std::vector<Triple> triples;
    auto intern = [&](StateId p, StateId q, StateId r) {
      std::uint64_t key = (static_cast<std::uint64_t>(p) * ns + q) * nt + r;
      auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(triples.size()));
      if (inserted) {
        triples.push_back({p, q, r});
        arcs_.emplace_back();
      }
      return it->second;
    };
    if (d.initial() == kNoState || t.empty()) return;
    for (StateId q : s.initial_states()) initial_.push_back(intern(d.initial(), q, d.initial()));
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const Triple cur = triples[i];
      for (const auto& arc : s.arcs(cur.q)) {
        Symbol in = arc.input.empty() ? kEpsilon : arc.input.front();
        Symbol out = arc.output.empty() ? kEpsilon : arc.output.front();
        StateId p = in == kEpsilon ? cur.p : d.next(cur.p, in);
        StateId r = out == kEpsilon ? cur.r : d.next(cur.r, out);
        if (p == kNoState || r == kNoState) continue;
        std::uint32_t target = intern(p, arc.target, r);
        arcs_[i].push_back({in, out, target});
      }
    }
    const std::size_t n = triples.size();
    final_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      final_[i] = triples[i].p == t.final_state() && triples[i].r == t.final_state() && s.is_final(triples[i].q);

    // Breadth-first distances to a final state; also serves as trimming.
    std::vector<std::vector<std::uint32_t>> reverse(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (const auto& a : arcs_[i]) reverse[a.target].push_back(i);
    to_final_.assign(n, kNone);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t i = 0; i < n; ++i)
      if (final_[i]) {
        to_final_[i] = 0;
        queue.push_back(i);
      }
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (std::uint32_t p : reverse[queue[k]])
        if (to_final_[p] == kNone) {
          // remember the arc index leading toward a final state
          for (std::uint32_t j = 0; j < arcs_[p].size(); ++j)
            if (arcs_[p][j].target == queue[k]) {
              to_final_[p] = j;
              break;
            }
          queue.push_back(p);
        }
  }

  static constexpr std::uint32_t kNone = 0xffffffffu;

  std::size_t size() const { return arcs_.size(); }
  const std::vector<std::uint32_t>& initial() const { return initial_; }
  const std::vector<ProductArc>& arcs(std::uint32_t s) const { return arcs_[s]; }
  bool is_final(std::uint32_t s) const { return final_[s] != 0; }
  bool useful(std::uint32_t s) const { return to_final_[s] != kNone; }

  /// Appends the labels of some path from `s` to a final state.
  void complete(std::uint32_t s, Word& u, Word& v) const {
    while (!final_[s]) {
      const ProductArc& a = arcs_[s][to_final_[s]];
      if (a.in != kEpsilon) u.push_back(a.in);
      if (a.out != kEpsilon) v.push_back(a.out);
      s = a.target;
    }
  }

 private:
  std::vector<std::vector<ProductArc>> arcs_;
  std::vector<std::uint32_t> initial_;
  std::vector<char> final_;
  std::vector<std::uint32_t> to_final_;
};

Witness violation(Word u, Word v) {
  Witness w;
  w.kind = Witness::Kind::DetectionViolation;
  w.u = std::move(u);
  w.v = std::move(v);
  return w;
}

std::uint64_t power(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) throw Error("alphabet^length exceeds 64 bits");
  return r;
}

}  // namespace

std::string Witness::render(const Alphabet& alphabet) const {
  switch (kind) {
    case Kind::None:
      return "NONE";
    case Kind::DetectionViolation:
      return "DETECT-VIOLATION " + alphabet.format(u) + " " + alphabet.format(v);
    case Kind::CorrectionViolation:
      return "CORRECT-VIOLATION " + alphabet.format(u) + " " + alphabet.format(v) + " via " + alphabet.format(z);
    case Kind::Addable:
      return "ADDABLE " + alphabet.format(u);
  }
  return "NONE";
}

Witness detection_witness(const Trellis& t, const Transducer& sigma) {
  if (!(t.alphabet() == sigma.alphabet())) throw InvalidArgument("alphabet mismatch");
  const DetectionProduct g(t, sigma);
  const std::size_t n = g.size();

  // Every useful state must be reached with a single delay; a path whose
  // labels disagree, or two delays at one state, yields a violating pair.
  std::vector<std::optional<Delay>> delay(n);
  struct Parent {
    std::uint32_t from;
    ProductArc arc;
  };
  std::vector<std::optional<Parent>> parent(n);
  auto path_to = [&](std::uint32_t s, Word& u, Word& v) {
    std::vector<ProductArc> rev;
    while (parent[s]) {
      rev.push_back(parent[s]->arc);
      s = parent[s]->from;
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
      if (it->in != kEpsilon) u.push_back(it->in);
      if (it->out != kEpsilon) v.push_back(it->out);
    }
  };
  auto via = [&](std::uint32_t from, const ProductArc& a) {
    Word u, v;
    path_to(from, u, v);
    if (a.in != kEpsilon) u.push_back(a.in);
    if (a.out != kEpsilon) v.push_back(a.out);
    g.complete(a.target, u, v);
    return std::make_pair(u, v);
  };

  std::vector<std::uint32_t> queue;
  for (std::uint32_t s : g.initial()) {
    if (!g.useful(s) || delay[s]) continue;
    delay[s] = Delay{};
    queue.push_back(s);
  }
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const std::uint32_t s = queue[k];
    if (g.is_final(s) && !delay[s]->zero()) {
      Word u, v;
      path_to(s, u, v);
      return violation(u, v);
    }
    for (const ProductArc& a : g.arcs(s)) {
      if (!g.useful(a.target)) continue;
      Delay next = *delay[s];
      if (!advance(next, a.in, a.out)) {
        auto [u, v] = via(s, a);
        return violation(u, v);
      }
      if (!delay[a.target]) {
        delay[a.target] = std::move(next);
        parent[a.target] = Parent{s, a};
        queue.push_back(a.target);
      } else if (!(*delay[a.target] == next)) {
        auto [u1, v1] = via(s, a);
        if (u1 != v1) return violation(u1, v1);
        Word u2, v2;
        path_to(a.target, u2, v2);
        g.complete(a.target, u2, v2);
        return violation(u2, v2);
      }
    }
  }
  return {};
}

Witness detection_witness(const Trellis& t, const Channel& sigma) { return detection_witness(t, sigma.transducer()); }

Witness correction_witness(const Trellis& t, const Transducer& sigma) {
  Witness w = detection_witness(t, compose(inverse(sigma), sigma));
  if (w.none()) return w;
  w.kind = Witness::Kind::CorrectionViolation;
  auto z = shortest_word(intersect(image(sigma, w.u), image(sigma, w.v)));
  if (!z) throw Error("internal error: composed channel produced a pair without a common output");
  w.z = *z;
  return w;
}

Witness correction_witness(const Trellis& t, const Channel& sigma) {
  return correction_witness(t, sigma.transducer());
}

Nfa excluded_words(const Trellis& t, const Transducer& sigma) {
  const Nfa code = t.dfa().to_nfa();
  return union_of(product(code, union_of(sigma, inverse(sigma))), code);
}

Witness maximality_witness(const Trellis& t, const Transducer& sigma, const Dfa& universe) {
  const Nfa excluded = intersect(excluded_words(t, sigma), universe.to_nfa());
  const Dfa addable = intersect(universe, complement(determinize(excluded)));
  Witness w;
  if (auto word = shortest_word(addable.to_nfa())) {
    w.kind = Witness::Kind::Addable;
    w.u = *word;
  }
  return w;
}

Witness maximality_witness(const Trellis& t, const Channel& sigma, const Dfa& universe) {
  return maximality_witness(t, sigma.transducer(), universe);
}

Witness maximality_witness(const Trellis& t, const Channel& sigma) {
  return maximality_witness(t, sigma.transducer(), universe_trellis(t.alphabet(), t.length()).dfa());
}

Fraction maximality_index(const Trellis& t, const Transducer& sigma) {
  if (Witness w = detection_witness(t, sigma); !w.none())
    throw NotDetectingError("code is not detecting: " + w.render(t.alphabet()), w);
  const Trellis all = universe_trellis(t.alphabet(), t.length());
  const Nfa excluded = intersect(excluded_words(t, sigma), all.dfa().to_nfa());
  Fraction f{count_words(determinize(excluded)), power(t.alphabet().size(), t.length())};
  const std::uint64_t g = std::gcd(f.numerator, f.denominator);
  f.numerator /= g;
  f.denominator /= g;
  return f;
}

Fraction maximality_index(const Trellis& t, const Channel& sigma) { return maximality_index(t, sigma.transducer()); }

}  // namespace chancodes
