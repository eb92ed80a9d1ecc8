#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chancodes/codegen.hpp"
#include "chancodes/error.hpp"
#include "chancodes/properties.hpp"
#include "chancodes/text_format.hpp"

namespace py = pybind11;
using namespace chancodes;

namespace {

Alphabet to_alphabet(const py::object& spec) {
  if (spec.is_none()) return Alphabet{};
  if (py::isinstance<py::str>(spec)) return Alphabet::from_chars(spec.cast<std::string>());
  return Alphabet(spec.cast<std::vector<std::string>>());
}

std::vector<std::string> format_words(const Alphabet& a, const std::vector<Word>& words) {
  std::vector<std::string> out;
  for (const Word& w : words) out.push_back(a.format(w));
  return out;
}

Trellis make_trellis(const std::vector<std::string>& words, std::optional<std::size_t> length,
                     const py::object& alphabet) {
  const Alphabet a = to_alphabet(alphabet);
  std::vector<Word> ws;
  for (const auto& w : words) ws.push_back(a.parse_word(w));
  return trellis_from_words(a, ws, length);
}

py::object witness_to_python(const Witness& w, const Alphabet& a) {
  switch (w.kind) {
    case Witness::Kind::None:
      return py::none();
    case Witness::Kind::DetectionViolation:
      return py::make_tuple(a.format(w.u), a.format(w.v));
    case Witness::Kind::CorrectionViolation:
      return py::make_tuple(a.format(w.u), a.format(w.v), a.format(w.z));
    case Witness::Kind::Addable:
      return py::str(a.format(w.u));
  }
  return py::none();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Channel-aware block codes";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<NotDetectingError>(m, "NotDetectingError", PyExc_ValueError);

  py::class_<Channel>(m, "Channel")
      .def_static(
          "by_name", [](const std::string& name, const py::object& alphabet) { return channel_by_name(name, to_alphabet(alphabet)); },
          py::arg("name"), py::arg("alphabet") = py::none())
      .def_static(
          "parse",
          [](const std::string& text, const py::object& alphabet) {
            return parse_channel(text, alphabet.is_none() ? std::optional<Alphabet>{} : to_alphabet(alphabet));
          },
          py::arg("text"), py::arg("alphabet") = py::none())
      .def_property_readonly("name", &Channel::name)
      .def_property_readonly("alphabet", [](const Channel& c) { return c.alphabet().tokens(); })
      .def("text", &serialize_channel)
      .def(
          "image",
          [](const Channel& c, const std::string& word, std::size_t max_length) {
            const Alphabet& a = c.alphabet();
            return format_words(a, enumerate_words(image(c.transducer(), a.parse_word(word)), max_length));
          },
          py::arg("word"), py::arg("max_length"))
      .def("__or__", [](const Channel& a, const Channel& b) { return combine({a, b}); })
      .def("__repr__", [](const Channel& c) { return "<Channel " + c.name() + ">"; });

  py::class_<Trellis>(m, "Code")
      .def(py::init(&make_trellis), py::arg("words"), py::arg("length") = py::none(),
           py::arg("alphabet") = py::none())
      .def_static(
          "from_automaton",
          [](const std::string& text, const py::object& alphabet) {
            return Trellis::from_dfa(determinize(parse_automaton(text, to_alphabet(alphabet)).nfa));
          },
          py::arg("text"), py::arg("alphabet") = py::none())
      .def_property_readonly("length", &Trellis::length)
      .def("words", [](const Trellis& t) { return format_words(t.alphabet(), t.words()); })
      .def("add", [](Trellis& t, const std::string& w) { return t.add_word(t.alphabet().parse_word(w)); })
      .def("to_automaton", [](const Trellis& t) { return serialize_automaton(t.dfa()); })
      .def("__len__", &Trellis::count)
      .def("__contains__", [](const Trellis& t, const std::string& w) { return t.contains(t.alphabet().parse_word(w)); });

  m.def(
      "detection_witness",
      [](const Trellis& t, const Channel& c) { return witness_to_python(detection_witness(t, c), t.alphabet()); },
      "None if the code is channel-detecting, else a violating pair (u, v).");
  m.def(
      "correction_witness",
      [](const Trellis& t, const Channel& c) { return witness_to_python(correction_witness(t, c), t.alphabet()); },
      "None if the code is channel-correcting, else (u, v, z) with z an output of both.");
  m.def(
      "maximality_witness",
      [](const Trellis& t, const Channel& c) { return witness_to_python(maximality_witness(t, c), t.alphabet()); },
      "None if the code is maximal, else the least word that can be added.");
  m.def(
      "maximality_index",
      [](const Trellis& t, const Channel& c) {
        Fraction f = maximality_index(t, c);
        return py::make_tuple(f.numerator, f.denominator);
      },
      "Maximality index as (numerator, denominator).");
  m.def("trial_bound", &trial_bound, py::arg("f"), py::arg("epsilon"));
  m.def(
      "make_code",
      [](const Channel& c, std::size_t n, std::size_t length, std::uint64_t seed, double f, double epsilon,
         std::optional<Trellis> initial, const std::string& universe, const std::string& fmt) {
        GenOptions o;
        o.target = n;
        o.length = length;
        o.seed = seed;
        o.f = f;
        o.epsilon = epsilon;
        o.initial = std::move(initial);
        if (universe == "of") {
          o.universe = overlap_free_trellis(c.alphabet(), length).dfa();
          o.universe_name = "of";
        } else if (universe != "none") {
          throw InvalidArgument("universe must be 'none' or 'of'");
        }
        GenReport r = make_code(c, c.alphabet(), o);
        return py::make_tuple(r.trellis, fmt == "json" ? r.to_json() : r.to_text());
      },
      py::arg("channel"), py::arg("n"), py::arg("length"), py::arg("seed") = 0, py::arg("f") = kDefaultMaximality,
      py::arg("epsilon") = kDefaultFailure, py::arg("initial") = py::none(), py::arg("universe") = "none",
      py::arg("format") = "json",
      "Randomized greedy construction; returns (code, report).");
}
