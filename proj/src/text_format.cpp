#include "chancodes/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chancodes/error.hpp"

namespace chancodes {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    std::string tok;
    while (in >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
    lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

struct Header {
  std::string directive;
  std::vector<std::string> finals;
  std::vector<std::string> initials;
};

Header parse_header(const Line& line, std::initializer_list<std::string_view> accepted) {
  Header h;
  h.directive = line.tokens.front();
  if (std::find(accepted.begin(), accepted.end(), h.directive) == accepted.end()) {
    if (h.directive.front() == '@') throw ParseError("unknown directive '" + h.directive + "'", line.number);
    throw ParseError("expected a header line starting with a directive", line.number);
  }
  auto star = std::find(line.tokens.begin() + 1, line.tokens.end(), "*");
  if (star == line.tokens.end()) throw ParseError("header is missing the '*' separator", line.number);
  h.finals.assign(line.tokens.begin() + 1, star);
  h.initials.assign(star + 1, line.tokens.end());
  return h;
}

std::optional<std::uint64_t> as_number(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Dense ids: numeric names in numeric order, then other names in order of
/// first appearance.
class StateNames {
 public:
  void see(const std::string& name) {
    if (seen_.insert(name).second) order_.push_back(name);
  }

  std::map<std::string, StateId> assign() const {
    std::vector<std::pair<std::uint64_t, std::string>> numeric;
    std::vector<std::string> other;
    for (const auto& n : order_) {
      if (auto v = as_number(n)) {
        numeric.emplace_back(*v, n);
      } else {
        other.push_back(n);
      }
    }
    std::sort(numeric.begin(), numeric.end());
    std::map<std::string, StateId> ids;
    for (const auto& [v, n] : numeric) ids.emplace(n, static_cast<StateId>(ids.size()));
    for (const auto& n : other) ids.emplace(n, static_cast<StateId>(ids.size()));
    return ids;
  }

 private:
  std::set<std::string> seen_;
  std::vector<std::string> order_;
};

Alphabet resolve_alphabet(const std::optional<Alphabet>& given, const std::set<std::string>& used,
                          const std::map<std::string, std::size_t>& first_line) {
  if (given) {
    for (const auto& s : used)
      if (!given->contains(s)) throw ParseError("symbol '" + s + "' is not in the alphabet", first_line.at(s));
    return *given;
  }
  if (used.empty()) return Alphabet{};
  return Alphabet(std::vector<std::string>(used.begin(), used.end()));
}

std::string join_states(const std::vector<StateId>& states) {
  std::string out;
  for (StateId s : states) {
    out += ' ';
    out += std::to_string(s);
  }
  return out;
}

}  // namespace

Transducer parse_transducer(std::string_view text, const std::optional<Alphabet>& alphabet) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty transducer description", 0);
  Header h = parse_header(lines.front(), {"@Transducer"});

  StateNames names;
  for (const auto& s : h.finals) names.see(s);
  for (const auto& s : h.initials) names.see(s);
  std::set<std::string> used;
  std::map<std::string, std::size_t> first_line;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.front().front() == '@' && l.tokens.front() != kEpsilonToken)
      throw ParseError("unknown directive '" + l.tokens.front() + "'", l.number);
    if (l.tokens.size() != 4) throw ParseError("expected 'src input output dst'", l.number);
    names.see(l.tokens[0]);
    names.see(l.tokens[3]);
    for (int k : {1, 2}) {
      const auto& tok = l.tokens[k];
      if (tok == kEpsilonToken) continue;
      if (tok.front() == '@') throw ParseError("unknown directive '" + tok + "'", l.number);
      if (used.insert(tok).second) first_line[tok] = l.number;
    }
  }
  Alphabet sigma = resolve_alphabet(alphabet, used, first_line);
  auto ids = names.assign();

  Transducer t(sigma);
  for (std::size_t i = 0; i < ids.size(); ++i) t.add_state();
  for (const auto& s : h.finals) t.set_final(ids.at(s));
  for (const auto& s : h.initials) t.set_initial(ids.at(s));
  auto label = [&](const std::string& tok) { return tok == kEpsilonToken ? kEpsilon : sigma.symbol(tok); };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& tk = lines[i].tokens;
    t.add_arc(ids.at(tk[0]), label(tk[1]), label(tk[2]), ids.at(tk[3]));
  }
  return t;
}

std::string serialize_transducer(const Transducer& t) {
  const Transducer s = standard_form(t);
  std::string out = "@Transducer" + join_states(s.final_states()) + " *" + join_states(s.initial_states()) + "\n";
  auto label = [&](const Word& w) { return w.empty() ? std::string(kEpsilonToken) : s.alphabet().token(w.front()); };
  for (StateId q = 0; q < s.num_states(); ++q)
    for (const auto& arc : s.arcs(q))
      out += std::to_string(q) + " " + label(arc.input) + " " + label(arc.output) + " " +
             std::to_string(arc.target) + "\n";
  return out;
}

ParsedAutomaton parse_automaton(std::string_view text, const std::optional<Alphabet>& alphabet) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty automaton description", 0);
  Header h = parse_header(lines.front(), {"@NFA", "@DFA"});
  const bool dfa = h.directive == "@DFA";
  if (dfa && h.initials.size() != 1) throw ParseError("a DFA needs exactly one initial state", lines.front().number);

  StateNames names;
  for (const auto& s : h.finals) names.see(s);
  for (const auto& s : h.initials) names.see(s);
  std::set<std::string> used;
  std::map<std::string, std::size_t> first_line;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.front().front() == '@') throw ParseError("unknown directive '" + l.tokens.front() + "'", l.number);
    if (l.tokens.size() != 3) throw ParseError("expected 'src symbol dst'", l.number);
    names.see(l.tokens[0]);
    names.see(l.tokens[2]);
    const auto& tok = l.tokens[1];
    if (tok == kEpsilonToken) {
      if (dfa) throw ParseError("epsilon transition in a DFA", l.number);
      continue;
    }
    if (tok.front() == '@') throw ParseError("unknown directive '" + tok + "'", l.number);
    if (used.insert(tok).second) first_line[tok] = l.number;
  }
  Alphabet sigma = resolve_alphabet(alphabet, used, first_line);
  auto ids = names.assign();

  ParsedAutomaton result{Nfa(sigma), dfa};
  Nfa& a = result.nfa;
  for (std::size_t i = 0; i < ids.size(); ++i) a.add_state();
  for (const auto& s : h.finals) a.set_final(ids.at(s));
  for (const auto& s : h.initials) a.set_initial(ids.at(s));
  std::set<std::pair<StateId, Symbol>> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& tk = lines[i].tokens;
    Symbol sym = tk[1] == kEpsilonToken ? kEpsilon : sigma.symbol(tk[1]);
    StateId from = ids.at(tk[0]);
    if (dfa && !seen.emplace(from, sym).second)
      throw ParseError("nondeterministic transition in a DFA", lines[i].number);
    a.add_arc(from, sym, ids.at(tk[2]));
  }
  return result;
}

Dfa parse_dfa(std::string_view text, const std::optional<Alphabet>& alphabet) {
  ParsedAutomaton p = parse_automaton(text, alphabet);
  if (!p.deterministic_header) throw ParseError("expected a @DFA description", 1);
  Dfa d(p.nfa.alphabet());
  for (StateId s = 0; s < p.nfa.num_states(); ++s) d.add_state(p.nfa.is_final(s));
  for (StateId s = 0; s < p.nfa.num_states(); ++s) {
    if (p.nfa.is_initial(s)) d.set_initial(s);
    for (const Arc& arc : p.nfa.arcs(s)) d.set_transition(s, arc.label, arc.target);
  }
  return d;
}

std::string serialize_automaton(const Nfa& a) {
  std::string out = "@NFA" + join_states(a.final_states()) + " *" + join_states(a.initial_states()) + "\n";
  for (StateId s = 0; s < a.num_states(); ++s)
    for (const Arc& arc : a.arcs(s))
      out += std::to_string(s) + " " +
             (arc.label == kEpsilon ? std::string(kEpsilonToken) : a.alphabet().token(arc.label)) + " " +
             std::to_string(arc.target) + "\n";
  return out;
}

std::string serialize_automaton(const Dfa& d) {
  std::vector<StateId> finals;
  for (StateId s = 0; s < d.num_states(); ++s)
    if (d.is_final(s)) finals.push_back(s);
  if (d.initial() == kNoState) {
    // No initial state cannot be written as a DFA header; emit an empty NFA.
    return "@NFA" + join_states(finals) + " *\n";
  }
  std::string out = "@DFA" + join_states(finals) + " * " + std::to_string(d.initial()) + "\n";
  for (StateId s = 0; s < d.num_states(); ++s)
    for (Symbol sym = 0; sym < d.alphabet().size(); ++sym)
      if (StateId t = d.next(s, sym); t != kNoState)
        out += std::to_string(s) + " " + d.alphabet().token(sym) + " " + std::to_string(t) + "\n";
  return out;
}

std::vector<Word> parse_code(std::string_view text, const Alphabet& alphabet) {
  std::vector<Word> words;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') continue;
    try {
      words.push_back(alphabet.parse_word(raw));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), number);
    }
  }
  return words;
}

std::string serialize_code(const std::vector<Word>& words, const Alphabet& alphabet) {
  std::string out;
  for (const Word& w : words) out += alphabet.format(w) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace chancodes
