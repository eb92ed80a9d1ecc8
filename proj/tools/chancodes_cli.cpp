// chancodes: channel-aware block code generation and checking.
//
// Exit codes: 0 success, 1 usage/file/parse error, 2 invalid seed code or a
// code that fails a precondition, 3 violation found.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "chancodes/codegen.hpp"
#include "chancodes/error.hpp"
#include "chancodes/properties.hpp"
#include "chancodes/text_format.hpp"

using namespace chancodes;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitViolation = 3;

constexpr std::size_t kMaxExperimentLength = 13;
constexpr std::size_t kMaxExperimentTarget = 500;

struct Config {
  std::vector<std::string> channels;
  std::string alphabet;
  std::size_t length = 8;
  bool length_given = false;
  std::size_t target = 100;
  double f = kDefaultMaximality;
  double epsilon = kDefaultFailure;
  std::uint64_t seed = 0;
  std::string universe = "none";
  std::string end;
  std::string trellis;
  std::string code;
  std::string out;
  std::string save_trellis;
  std::string format = "text";
  std::size_t reps = 21;
  std::size_t threads = 0;
  std::vector<std::string> cells;
  bool timing = false;
  bool no_caps = false;
};

/// Failure that maps to a specific exit code.
struct ExitError : Error {
  ExitError(int code, const std::string& message) : Error(message), code(code) {}
  int code;
};

Alphabet make_alphabet(const std::string& spec) {
  if (spec.empty()) return Alphabet{};
  if (spec.find(',') == std::string::npos) return Alphabet::from_chars(spec);
  std::vector<std::string> tokens;
  std::stringstream in(spec);
  for (std::string t; std::getline(in, t, ',');) tokens.push_back(t);
  return Alphabet(tokens);
}

Channel load_channel(const std::string& spec, const Alphabet& alphabet) {
  try {
    return channel_by_name(spec, alphabet);
  } catch (const InvalidArgument& registry_error) {
    if (!std::filesystem::exists(spec)) throw;
  }
  std::string warning;
  Channel c = parse_channel(read_file(spec), alphabet, &warning, std::filesystem::path(spec).filename().string());
  if (!warning.empty()) std::cerr << "warning: " << spec << ": " << warning << "\n";
  return c;
}

Channel load_channels(const Config& cfg, const Alphabet& alphabet) {
  if (cfg.channels.empty()) throw InvalidArgument("--channel is required");
  std::vector<Channel> cs;
  for (const auto& spec : cfg.channels) cs.push_back(load_channel(spec, alphabet));
  return combine(cs);
}

bool is_automaton_text(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos) return false;
  return text.compare(pos, 4, "@DFA") == 0 || text.compare(pos, 4, "@NFA") == 0;
}

/// A code from a word list or an automaton file.
Trellis load_code(const std::string& path, const Alphabet& alphabet, std::optional<std::size_t> length) {
  const std::string text = read_file(path);
  if (is_automaton_text(text)) {
    ParsedAutomaton a = parse_automaton(text, alphabet);
    return Trellis::from_dfa(determinize(a.nfa), length);
  }
  std::vector<Word> words = parse_code(text, alphabet);
  if (words.empty()) return Trellis(alphabet, length.value_or(0));
  return trellis_from_words(alphabet, words);
}

/// Sampling universe: base set (all, overlap-free, or a file) intersected
/// with the end pattern.  Returns nullopt for all words of the length.
std::optional<Dfa> load_universe(const Config& cfg, const Alphabet& alphabet, std::size_t length,
                                 std::string* label) {
  std::optional<Dfa> u;
  *label = "all";
  if (cfg.universe == "of") {
    u = overlap_free_trellis(alphabet, length).dfa();
    *label = "of";
  } else if (cfg.universe != "none" && cfg.universe != "all") {
    const std::string text = read_file(cfg.universe);
    Dfa d = is_automaton_text(text) ? determinize(parse_automaton(text, alphabet).nfa)
                                    : trellis_from_words(alphabet, parse_code(text, alphabet), length).dfa();
    u = intersect(universe_trellis(alphabet, length).dfa(), d);
    *label = "file:" + cfg.universe;
  }
  if (!cfg.end.empty()) {
    const Word suffix = alphabet.parse_word(cfg.end);
    if (suffix.size() > length) throw InvalidArgument("end pattern longer than the block length");
    Dfa s = suffix_trellis(alphabet, length, suffix).dfa();
    u = u ? intersect(*u, s) : s;
    *label = (*label == "all" ? "" : *label + "&") + "end=" + cfg.end;
  }
  return u;
}

void write_output(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error("cannot write '" + cfg.out + "'");
  f << text;
}

void require_detecting(const Trellis& t, const Channel& c) {
  if (Witness w = detection_witness(t, c); !w.none())
    throw ExitError(kExitPrecondition, "code is not " + c.name() + "-detecting: " + w.render(t.alphabet()));
}

std::optional<std::size_t> given_length(const Config& cfg) {
  return cfg.length_given ? std::optional<std::size_t>(cfg.length) : std::nullopt;
}

int cmd_gen(const Config& cfg) {
  const Alphabet alphabet = make_alphabet(cfg.alphabet);
  const Channel c = load_channels(cfg, alphabet);
  GenOptions o;
  o.target = cfg.target;
  o.length = cfg.length;
  o.f = cfg.f;
  o.epsilon = cfg.epsilon;
  o.seed = cfg.seed;
  o.universe = load_universe(cfg, alphabet, cfg.length, &o.universe_name);
  if (!cfg.trellis.empty()) o.initial = load_code(cfg.trellis, alphabet, cfg.length);
  GenReport r;
  try {
    r = make_code(c, alphabet, o);
  } catch (const NotDetectingError& e) {
    throw ExitError(kExitPrecondition, e.what());
  } catch (const InvalidArgument& e) {
    if (o.initial) throw ExitError(kExitPrecondition, e.what());
    throw;
  }
  write_output(cfg, cfg.format == "json" ? r.to_json(cfg.timing) : r.to_text(cfg.timing));
  if (!cfg.save_trellis.empty()) {
    std::ofstream f(cfg.save_trellis);
    if (!f) throw Error("cannot write '" + cfg.save_trellis + "'");
    f << serialize_automaton(r.trellis.dfa());
  }
  return kExitOk;
}

int report_witness(const Config& cfg, const Witness& w, const Alphabet& alphabet, const std::string& property) {
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["property"] = property;
    j["holds"] = w.none();
    j["witness"] = w.render(alphabet);
    write_output(cfg, j.dump(2) + "\n");
  } else {
    write_output(cfg, w.render(alphabet) + "\n");
  }
  return w.none() ? kExitOk : kExitViolation;
}

int cmd_check(const Config& cfg, bool correction) {
  const Alphabet alphabet = make_alphabet(cfg.alphabet);
  const Channel c = load_channels(cfg, alphabet);
  const Trellis t = load_code(cfg.code, alphabet, given_length(cfg));
  const Witness w = correction ? correction_witness(t, c) : detection_witness(t, c);
  return report_witness(cfg, w, alphabet, correction ? "correcting" : "detecting");
}

int cmd_maximal(const Config& cfg) {
  const Alphabet alphabet = make_alphabet(cfg.alphabet);
  const Channel c = load_channels(cfg, alphabet);
  const Trellis t = load_code(cfg.code, alphabet, given_length(cfg));
  require_detecting(t, c);
  std::string label;
  const auto universe = load_universe(cfg, alphabet, t.length(), &label);
  const Witness w =
      maximality_witness(t, c, universe ? *universe : universe_trellis(alphabet, t.length()).dfa());
  const std::string verdict = w.none() ? "MAXIMAL" : w.render(alphabet);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["maximal"] = w.none();
    j["universe"] = label;
    if (!w.none()) j["addable"] = alphabet.format(w.u);
    write_output(cfg, j.dump(2) + "\n");
  } else {
    write_output(cfg, verdict + "\n");
  }
  return kExitOk;
}

int cmd_index(const Config& cfg) {
  const Alphabet alphabet = make_alphabet(cfg.alphabet);
  const Channel c = load_channels(cfg, alphabet);
  const Trellis t = load_code(cfg.code, alphabet, given_length(cfg));
  Fraction f;
  try {
    f = maximality_index(t, c);
  } catch (const NotDetectingError& e) {
    throw ExitError(kExitPrecondition, e.what());
  }
  char decimal[32];
  std::snprintf(decimal, sizeof decimal, "%.6f", f.value());
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["numerator"] = f.numerator;
    j["denominator"] = f.denominator;
    j["index"] = f.str();
    j["value"] = f.value();
    write_output(cfg, j.dump(2) + "\n");
  } else {
    write_output(cfg, "index: " + f.str() + " (" + decimal + ")\n");
  }
  return kExitOk;
}

struct Cell {
  std::vector<std::string> channels;
  std::size_t length;
  std::size_t target;
  std::string end;
  std::string universe;
};

/// "channel,len,N[,end=PATTERN][,of]" with channels joined by '+'.
Cell parse_cell(const std::string& spec, const Config& cfg) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string p; std::getline(in, p, ',');) parts.push_back(p);
  if (parts.size() < 3) throw InvalidArgument("bad cell '" + spec + "': expected channel,len,N[,end=P][,of]");
  Cell c{{}, 0, 0, "", cfg.universe};
  std::stringstream chans(parts[0]);
  for (std::string p; std::getline(chans, p, '+');) c.channels.push_back(p);
  try {
    c.length = std::stoul(parts[1]);
    c.target = std::stoul(parts[2]);
  } catch (const std::exception&) {
    throw InvalidArgument("bad cell '" + spec + "': length and N must be integers");
  }
  for (std::size_t i = 3; i < parts.size(); ++i) {
    if (parts[i].rfind("end=", 0) == 0)
      c.end = parts[i].substr(4);
    else if (parts[i] == "of")
      c.universe = "of";
    else
      throw InvalidArgument("bad cell option '" + parts[i] + "'");
  }
  return c;
}

std::size_t median(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

int cmd_experiment(const Config& cfg) {
  const Alphabet alphabet = make_alphabet(cfg.alphabet);
  std::vector<Cell> cells;
  for (const auto& spec : cfg.cells) cells.push_back(parse_cell(spec, cfg));
  if (cells.empty()) cells.push_back(Cell{cfg.channels, cfg.length, cfg.target, cfg.end, cfg.universe});
  if (cfg.reps == 0) throw InvalidArgument("--reps must be at least 1");

  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  std::ostringstream text;
  text << "# chancodes experiment seed=" << cfg.seed << " reps=" << cfg.reps << " f=" << cfg.f
       << " epsilon=" << cfg.epsilon << " rng=" << kRngName << "\n";
  for (const Cell& cell : cells) {
    if (!cfg.no_caps && (cell.length > kMaxExperimentLength || cell.target > kMaxExperimentTarget))
      throw InvalidArgument("cell exceeds len <= 13, N <= 500; pass --no-caps to override");
    Config cc = cfg;
    cc.channels = cell.channels;
    cc.end = cell.end;
    cc.universe = cell.universe;
    const Channel c = load_channels(cc, alphabet);
    GenOptions base;
    base.target = cell.target;
    base.length = cell.length;
    base.f = cfg.f;
    base.epsilon = cfg.epsilon;
    base.universe = load_universe(cc, alphabet, cell.length, &base.universe_name);

    std::vector<std::size_t> sizes(cfg.reps);
    std::vector<double> seconds(cfg.reps);
    std::size_t next = 0;
    std::mutex m;
    std::exception_ptr failure;
    auto worker = [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(m);
          if (next == cfg.reps || failure) return;
          i = next++;
        }
        try {
          GenOptions o = base;
          o.seed = split_seed(cfg.seed, i);
          GenReport r = make_code(c, alphabet, o);
          sizes[i] = r.size();
          seconds[i] = r.seconds;
        } catch (...) {
          std::lock_guard lock(m);
          failure = std::current_exception();
        }
      }
    };
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, cfg.reps);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    const std::size_t med = median(sizes);
    double total = 0;
    for (double s : seconds) total += s;
    text << "channel=" << c.name() << " len=" << cell.length << " N=" << cell.target
         << " universe=" << base.universe_name << " min/median/max=" << *lo << "/" << med << "/" << *hi
         << " sizes=";
    for (std::size_t i = 0; i < sizes.size(); ++i) text << (i ? "," : "") << sizes[i];
    if (cfg.timing) text << " wall-time-s=" << total;
    text << "\n";
    nlohmann::ordered_json j;
    j["channel"] = c.name();
    j["length"] = cell.length;
    j["target"] = cell.target;
    j["universe"] = base.universe_name;
    j["min"] = *lo;
    j["median"] = med;
    j["max"] = *hi;
    j["sizes"] = sizes;
    if (cfg.timing) j["wall_time_s"] = total;
    all.push_back(j);
  }
  write_output(cfg, cfg.format == "json" ? all.dump(2) + "\n" : text.str());
  return kExitOk;
}

int cmd_channel_list() {
  const char* help[] = {"at most k substitutions",
                        "at most k insertions or deletions",
                        "one deletion, then one insertion at the end",
                        "one insertion, then one deletion at the end",
                        "up to two deletions, insertions or adjacent swaps (binary)",
                        "at most one deletion per length-b segment",
                        "delete a proper prefix, append any suffix"};
  const auto names = channel_names();
  for (std::size_t i = 0; i < names.size(); ++i) std::cout << names[i] << "\t" << help[i] << "\n";
  return kExitOk;
}

int cmd_channel_show(const Config& cfg) {
  const Alphabet alphabet = make_alphabet(cfg.alphabet);
  write_output(cfg, serialize_channel(load_channels(cfg, alphabet)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-aware block codes: generate, check, and measure maximality."};
  app.require_subcommand(1);
  Config cfg;

  auto add_channel = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("-c,--channel", cfg.channels,
                                "Channel: registry name (sub:k, id:k, del1, ins1, bsid2, segd:b, ov) or transducer "
                                "file; repeat to combine");
    if (required) opt->required();
    sub->add_option("--alphabet", cfg.alphabet, "Alphabet as characters (01) or comma-separated tokens");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("-o,--out", cfg.out, "Write output to a file");
  };
  auto add_gen = [&](CLI::App* sub) {
    sub->add_option("-l,--len", cfg.length, "Block length")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    sub->add_option("--f", cfg.f, "Target maximality index");
    sub->add_option("--eps", cfg.epsilon, "Failure probability bound");
    sub->add_option("-s,--seed", cfg.seed, "Random seed")->envname("CHANCODES_SEED");
    sub->add_option("-u,--universe", cfg.universe, "Sampling universe: none, of (overlap-free), or a file");
    sub->add_option("--end", cfg.end, "Only codewords ending with this pattern");
    sub->add_flag("--timing", cfg.timing, "Include wall-clock time in the report");
  };

  auto* gen = app.add_subcommand("gen", "Generate a code with the randomized greedy construction");
  add_channel(gen);
  add_gen(gen);
  add_common(gen);
  gen->add_option("-n,--n", cfg.target, "Number of codewords to add");
  gen->add_option("--trellis", cfg.trellis, "Seed code (word list or automaton file)");
  gen->add_option("--save-trellis", cfg.save_trellis, "Write the final code as an automaton file");

  auto code_subcommand = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    add_channel(sub);
    add_common(sub);
    sub->add_option("code", cfg.code, "Code file: one word per line, or an @DFA/@NFA automaton")->required();
    sub->add_option("-l,--len", cfg.length, "Block length (needed for an empty code)");
    return sub;
  };
  auto* check = code_subcommand("check", "Check error detection; prints a violating pair or NONE");
  auto* correct = code_subcommand("correct-check", "Check error correction; prints a violation or NONE");
  auto* maximal = code_subcommand("maximal", "Find a word that can be added, or report MAXIMAL");
  maximal->add_option("-u,--universe", cfg.universe, "Candidate words: none, of, or a file");
  maximal->add_option("--end", cfg.end, "Only candidates ending with this pattern");
  auto* index = code_subcommand("index", "Exact maximality index as a reduced fraction");

  auto* experiment = app.add_subcommand("experiment", "Repeated code generation, min/median/max sizes");
  add_channel(experiment, false);
  add_gen(experiment);
  add_common(experiment);
  experiment->add_option("-n,--n", cfg.target, "Number of codewords to add");
  experiment->add_option("--cell", cfg.cells, "Cell channel[+channel],len,N[,end=P][,of]; repeatable");
  experiment->add_option("--reps", cfg.reps, "Repetitions per cell");
  experiment->add_option("--threads", cfg.threads, "Worker threads (default: hardware concurrency)");
  experiment->add_flag("--no-caps", cfg.no_caps, "Allow len > 13 or N > 500");

  auto* channel = app.add_subcommand("channel", "Inspect channels");
  channel->require_subcommand(1);
  auto* list = channel->add_subcommand("list", "List built-in channels");
  auto* show = channel->add_subcommand("show", "Print a channel in transducer format");
  add_channel(show);
  show->add_option("-o,--out", cfg.out, "Write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }
  for (auto* sub : {gen, check, correct, maximal, index, experiment})
    if (sub->parsed()) cfg.length_given = sub->count("--len") > 0;

  try {
    if (gen->parsed()) return cmd_gen(cfg);
    if (check->parsed()) return cmd_check(cfg, false);
    if (correct->parsed()) return cmd_check(cfg, true);
    if (maximal->parsed()) return cmd_maximal(cfg);
    if (index->parsed()) return cmd_index(cfg);
    if (experiment->parsed()) return cmd_experiment(cfg);
    if (list->parsed()) return cmd_channel_list();
    if (show->parsed()) return cmd_channel_show(cfg);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
