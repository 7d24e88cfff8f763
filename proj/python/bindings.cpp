#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <map>
#include <set>
#include <variant>

#include "pstray/error.hpp"
#include "pstray/index_io.hpp"
#include "pstray/oracle.hpp"
#include "pstray/tray.hpp"

namespace py = pybind11;
using namespace pstray;

namespace {

using Word = std::variant<std::string, std::vector<std::string>>;

// A word over ad-hoc alphabets: parameters get ids 1..k in sorted order,
// every other token a static id after them.
struct LocalAlphabet {
  std::vector<std::string> names{""};
  std::map<std::string, Symbol> ids;
  Symbol params = 0;

  LocalAlphabet(const std::vector<std::vector<std::string>>& words, std::vector<std::string> param_list) {
    std::sort(param_list.begin(), param_list.end());
    param_list.erase(std::unique(param_list.begin(), param_list.end()), param_list.end());
    for (const auto& p : param_list) add(p);
    params = static_cast<Symbol>(param_list.size());
    std::set<std::string> statics;
    for (const auto& w : words)
      for (const auto& t : w)
        if (!ids.contains(t)) statics.insert(t);
    for (const auto& s : statics) add(s);
  }
  void add(const std::string& t) {
    ids.emplace(t, static_cast<Symbol>(names.size()));
    names.push_back(t);
  }
  std::vector<Symbol> encode(const std::vector<std::string>& w) const {
    std::vector<Symbol> out;
    for (const auto& t : w) out.push_back(ids.at(t));
    return out;
  }
};

std::vector<std::string> tokens_of(const Word& w) {
  if (const auto* s = std::get_if<std::string>(&w)) return split_input(*s, InputMode::Bytes);
  return std::get<std::vector<std::string>>(w);
}

std::vector<std::string> param_tokens(const Word& params) { return tokens_of(params); }

py::list py_prev(const Word& word, const Word& params) {
  const auto tokens = tokens_of(word);
  const LocalAlphabet alpha({tokens}, param_tokens(params));
  py::list out;
  for (const PrevSymbol p : prev_encode(alpha.encode(tokens), alpha.params)) {
    if (p.is_distance()) {
      out.append(py::int_(p.dist()));
    } else {
      out.append(py::str(alpha.names[p.static_id()]));
    }
  }
  return out;
}

py::object py_spe(const Word& word, const Word& params) {
  const auto tokens = tokens_of(word);
  const LocalAlphabet alpha({tokens}, param_tokens(params));
  std::vector<std::string> renamed;
  for (Symbol s : spe(alpha.encode(tokens), alpha.params)) renamed.push_back(alpha.names[s]);
  if (std::holds_alternative<std::string>(word)) {
    std::string joined;
    for (const auto& t : renamed) joined += t;
    return py::str(joined);
  }
  return py::cast(renamed);
}

bool py_p_match(const Word& x, const Word& y, const Word& params) {
  const auto a = tokens_of(x);
  const auto b = tokens_of(y);
  const LocalAlphabet alpha({a, b}, param_tokens(params));
  return p_match(alpha.encode(a), alpha.encode(b), alpha.params);
}

AlphabetSpec make_spec(const Word& params, const std::optional<Word>& statics, const std::string& mode) {
  AlphabetSpec spec;
  if (mode == "tokens") {
    spec.mode = InputMode::Tokens;
  } else if (mode != "bytes") {
    throw Error(ErrorKind::Input, "mode must be 'bytes' or 'tokens'");
  }
  const auto split = [&](const Word& w) {
    if (const auto* s = std::get_if<std::string>(&w)) return split_input(*s, spec.mode);
    return std::get<std::vector<std::string>>(w);
  };
  for (auto& t : split(params)) spec.pi_members.insert(t);
  if (statics) {
    spec.sigma_policy = SigmaPolicy::Explicit;
    for (auto& t : split(*statics)) spec.sigma_members.insert(t);
  }
  spec.validate();
  return spec;
}

std::vector<std::uint32_t> one_based(std::vector<std::uint32_t> v) {
  for (auto& x : v) ++x;
  return v;
}

py::dict stats_dict(const QueryStats& s) {
  py::dict d;
  d["symbol_comparisons"] = s.symbol_comparisons;
  d["nodes_visited"] = s.nodes_visited;
  d["parray_lookups"] = s.parray_lookups;
  d["psa_probes"] = s.psa_probes;
  d["max_range_searched"] = s.max_range_searched;
  return d;
}

QueryResult run_query(const PSTrayIndex& index, const Word& pattern) {
  if (const auto* s = std::get_if<std::string>(&pattern)) return query_raw(index, *s);
  const auto& tokens = std::get<std::vector<std::string>>(pattern);
  return query_tokens(index, tokens);
}

}  // namespace

PYBIND11_MODULE(_pstray, m) {
  m.doc() = "Parameterized pattern matching with the parameterized suffix tray";

  py::register_exception<Error>(m, "Error");

  m.def("prev", &py_prev, py::arg("word"), py::arg("params"),
        "prev encoding: distances to the previous occurrence of each parameter, statics kept");
  m.def("spe", &py_spe, py::arg("word"), py::arg("params"),
        "Smallest parameterized encoding, spelled with the parameters in sorted order");
  m.def("p_match", &py_p_match, py::arg("x"), py::arg("y"), py::arg("params"));

  py::class_<PSTrayIndex>(m, "Index")
      .def_static(
          "build",
          [](const std::string& text, const Word& params, const std::optional<Word>& statics, const std::string& mode,
             bool rmq) { return assemble(ingest(text, make_spec(params, statics, mode)), rmq); },
          py::arg("text"), py::arg("params"), py::arg("statics") = py::none(), py::arg("mode") = "bytes",
          py::arg("rmq") = true, "Index text; statics=None classifies every non-parameter as static")
      .def_static(
          "from_spec",
          [](const std::string& text, const std::string& spec, bool rmq) {
            return assemble(ingest(text, parse_alphabet_spec(spec)), rmq);
          },
          py::arg("text"), py::arg("spec"), py::arg("rmq") = true, "Index text with an alphabet spec file body")
      .def_static("load", [](const std::filesystem::path& p) { return load(p); }, py::arg("path"))
      .def("save", [](const PSTrayIndex& self, const std::filesystem::path& p) { save(self, p); }, py::arg("path"))
      .def("serialize", [](const PSTrayIndex& self) { return py::bytes(serialize(self)); })
      .def_static("deserialize", [](const py::bytes& b) { return deserialize(std::string(b)); }, py::arg("data"))
      .def(
          "query", [](const PSTrayIndex& self, const Word& pattern) { return one_based(run_query(self, pattern).positions); },
          py::arg("pattern"), "1-based starts of every p-match, ascending")
      .def(
          "query_stats",
          [](const PSTrayIndex& self, const Word& pattern) {
            const QueryResult r = run_query(self, pattern);
            return py::make_tuple(one_based(r.positions), stats_dict(r.stats));
          },
          py::arg("pattern"))
      .def(
          "scan",
          [](const PSTrayIndex& self, const Word& pattern) {
            const auto* raw = std::get_if<std::string>(&pattern);
            const auto tokens = raw ? split_input(*raw, self.text.spec.mode) : std::get<std::vector<std::string>>(pattern);
            const auto encoded = encode_pattern(tokens, self.text);
            if (!encoded) return std::vector<std::uint32_t>{};
            return one_based(oracle::naive_ppm(self.text.symbols, *encoded, self.text.pi_count));
          },
          py::arg("pattern"), "Same as query, by brute-force scan")
      .def("stats",
           [](const PSTrayIndex& self) {
             const StructureReport r = structure(self);
             py::dict d;
             d["n"] = r.n;
             d["pi"] = r.pi;
             d["sigma"] = r.sigma;
             d["threshold"] = r.threshold;
             d["nodes"] = r.nodes;
             d["leaves"] = r.leaves;
             d["pnodes"] = r.pnodes;
             d["branching_pnodes"] = r.branching;
             d["heavy_links"] = r.heavy_links;
             d["parray_cells"] = r.parray_cells;
             d["rmq"] = r.rmq;
             return d;
           })
      .def("check", [](const PSTrayIndex& self) { return check_index(self); },
           "First violated invariant, or None")
      .def_property_readonly("text", [](const PSTrayIndex& self) { return self.text.render(); })
      .def("__len__", [](const PSTrayIndex& self) { return self.size(); });
}
