#pragma once

// JSON file formats. Vector entries are written as decimal strings so that
// arbitrarily large values survive; indices are plain JSON integers. Readers
// accept either form for both.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "parikh/automata.hpp"
#include "parikh/error.hpp"
#include "parikh/fixtures.hpp"
#include "parikh/geometry.hpp"
#include "parikh/int_vector.hpp"

namespace parikh::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw malformed_input(where + ": " + what);
}

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where, std::string("missing field \"") + name + "\"");
  return *it;
}

inline void known_fields(const Json& j, std::initializer_list<const char*> names,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* n : names) ok = ok || it.key() == n;
    if (!ok) fail(where, "unknown field \"" + it.key() + "\"");
  }
}

inline Integer integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>())
                                  : Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const malformed_input& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected an integer or a decimal string, got " + j.dump());
}

inline std::size_t index(const Json& j, const std::string& where) {
  Integer v = integer(j, where);
  if (v < 0 || v > Integer(std::numeric_limits<std::uint32_t>::max()))
    fail(where, "index " + v.str() + " out of range");
  return static_cast<std::size_t>(v);
}

inline const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

inline IntVector vector(const Json& j, std::size_t dim, const std::string& where) {
  array(j, where);
  if (j.size() != dim)
    fail(where, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
  IntVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = integer(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

inline std::string string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

/// 1-based line of a byte offset, for parse diagnostics.
inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace detail

inline Json parse_json(const std::string& text, const std::string& source = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw malformed_input(source + ":" + std::to_string(detail::line_of(text, e.byte)) +
                          ": invalid JSON (" + e.what() + ")");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw malformed_input("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json load_json(const std::string& path) { return parse_json(read_file(path), path); }

/// Canonical text: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

// ---- NFA ----------------------------------------------------------------

inline Json to_json(const Nfa& a) {
  Json j;
  j["alphabet"] = a.letter_names();
  j["states"] = a.states();
  j["initial"] = a.initial();
  j["finals"] = a.finals();
  Json ts = Json::array();
  for (const auto& t : a.transitions())
    ts.push_back(Json::array({t.from, a.letter_names()[t.letter - 1], t.to}));
  j["transitions"] = std::move(ts);
  return j;
}

inline Nfa nfa_from_json(const Json& j, const std::string& src = "nfa") {
  using namespace detail;
  if (!j.is_object()) fail(src, "expected an object");
  known_fields(j, {"alphabet", "states", "initial", "finals", "transitions"}, src);
  const Json& alpha = array(field(j, "alphabet", src), src + ".alphabet");
  std::vector<std::string> names;
  std::map<std::string, std::size_t> letter;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    std::string w = src + ".alphabet[" + std::to_string(i) + "]";
    std::string name = string(alpha[i], w);
    if (!letter.emplace(name, i + 1).second) fail(w, "duplicate letter \"" + name + "\"");
    names.push_back(std::move(name));
  }
  if (names.empty()) fail(src + ".alphabet", "alphabet must be nonempty");
  const std::size_t n = index(field(j, "states", src), src + ".states");
  const std::size_t init = index(field(j, "initial", src), src + ".initial");
  const Json& fin = array(field(j, "finals", src), src + ".finals");
  std::vector<std::size_t> finals;
  for (std::size_t i = 0; i < fin.size(); ++i)
    finals.push_back(index(fin[i], src + ".finals[" + std::to_string(i) + "]"));
  if (finals.empty()) fail(src + ".finals", "finals must be nonempty");

  const Json& ts = array(field(j, "transitions", src), src + ".transitions");
  std::vector<Transition> delta;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string w = src + ".transitions[" + std::to_string(i) + "]";
    const Json& t = array(ts[i], w);
    if (t.size() != 3) fail(w, "expected [from, \"letter\", to]");
    std::size_t from = index(t[0], w), to = index(t[2], w);
    std::string l = string(t[1], w);
    auto it = letter.find(l);
    if (it == letter.end()) fail(w, "unknown letter \"" + l + "\" in " + t.dump());
    if (from >= n || to >= n)
      fail(w, "state out of range in " + t.dump() + " (states: " + std::to_string(n) + ")");
    delta.push_back({from, it->second, to});
  }
  const std::size_t k = names.size();
  try {
    return Nfa(n, k, init, std::move(finals), std::move(delta), std::move(names));
  } catch (const malformed_input& e) {
    fail(src, e.what());
  }
}

// ---- semilinear bases -----------------------------------------------------

inline Json to_json(const SemilinearBasis& b) {
  Json j;
  j["dim"] = b.dim();
  Json bases = Json::array();
  for (const auto& lb : b) {
    Json e;
    e["offset"] = vector_json(lb.offset);
    Json gens = Json::array();
    for (const auto& g : lb.generators) gens.push_back(vector_json(g));
    e["generators"] = std::move(gens);
    bases.push_back(std::move(e));
  }
  j["bases"] = std::move(bases);
  return j;
}

inline SemilinearBasis semilinear_from_json(const Json& j, const std::string& src = "basis") {
  using namespace detail;
  if (!j.is_object()) fail(src, "expected an object");
  known_fields(j, {"dim", "bases", "verified", "unary_size"}, src);
  const std::size_t k = index(field(j, "dim", src), src + ".dim");
  if (k == 0) fail(src + ".dim", "dimension must be positive");
  const Json& bs = array(field(j, "bases", src), src + ".bases");
  std::vector<LinearBasis> out;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    std::string w = src + ".bases[" + std::to_string(i) + "]";
    if (!bs[i].is_object()) fail(w, "expected an object");
    known_fields(bs[i], {"offset", "generators"}, w);
    IntVector off = vector(field(bs[i], "offset", w), k, w + ".offset");
    const Json& gs = array(field(bs[i], "generators", w), w + ".generators");
    std::vector<IntVector> gens;
    for (std::size_t g = 0; g < gs.size(); ++g)
      gens.push_back(vector(gs[g], k, w + ".generators[" + std::to_string(g) + "]"));
    out.emplace_back(std::move(off), GeneratorSet(k, std::move(gens)));
  }
  return SemilinearBasis(k, std::move(out));
}

// ---- generator sets -------------------------------------------------------

inline Json to_json(const GeneratorSet& g) {
  Json j;
  j["dim"] = g.dim();
  Json gens = Json::array();
  for (const auto& v : g) gens.push_back(vector_json(v));
  j["generators"] = std::move(gens);
  return j;
}

inline GeneratorSet generators_from_json(const Json& j, const std::string& src = "generators") {
  using namespace detail;
  if (!j.is_object()) fail(src, "expected an object");
  known_fields(j, {"dim", "generators"}, src);
  const std::size_t k = index(field(j, "dim", src), src + ".dim");
  if (k == 0) fail(src + ".dim", "dimension must be positive");
  const Json& gs = array(field(j, "generators", src), src + ".generators");
  std::vector<IntVector> gens;
  for (std::size_t g = 0; g < gs.size(); ++g)
    gens.push_back(vector(gs[g], k, src + ".generators[" + std::to_string(g) + "]"));
  return GeneratorSet(k, std::move(gens));
}

// ---- unary CFG ------------------------------------------------------------

inline Json to_json(const UnaryCfg& g) {
  Json j;
  j["start"] = g.start;
  Json rules = Json::array();
  for (const auto& [lhs, rhs] : g.rules) rules.push_back(Json::array({lhs, rhs}));
  j["rules"] = std::move(rules);
  return j;
}

inline UnaryCfg cfg_from_json(const Json& j, const std::string& src = "cfg") {
  using namespace detail;
  if (!j.is_object()) fail(src, "expected an object");
  known_fields(j, {"start", "rules"}, src);
  UnaryCfg g;
  g.start = string(field(j, "start", src), src + ".start");
  const Json& rs = array(field(j, "rules", src), src + ".rules");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::string w = src + ".rules[" + std::to_string(i) + "]";
    const Json& r = array(rs[i], w);
    if (r.size() != 2) fail(w, "expected [\"lhs\", [symbols...]]");
    std::string lhs = string(r[0], w);
    const Json& rhs = array(r[1], w);
    std::vector<std::string> syms;
    for (std::size_t s = 0; s < rhs.size(); ++s)
      syms.push_back(string(rhs[s], w + "[" + std::to_string(s) + "]"));
    g.rules.emplace_back(std::move(lhs), std::move(syms));
  }
  try {
    g.validate();
  } catch (const malformed_input& e) {
    fail(src, e.what());
  }
  return g;
}

// ---- graph ----------------------------------------------------------------

inline Json to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertices;
  Json es = Json::array();
  for (const auto& [u, v] : g.edges) es.push_back(Json::array({u, v}));
  j["edges"] = std::move(es);
  j["source"] = g.source;
  j["target"] = g.target;
  return j;
}

inline Graph graph_from_json(const Json& j, const std::string& src = "graph") {
  using namespace detail;
  if (!j.is_object()) fail(src, "expected an object");
  known_fields(j, {"vertices", "edges", "source", "target"}, src);
  Graph g;
  g.vertices = index(field(j, "vertices", src), src + ".vertices");
  const Json& es = array(field(j, "edges", src), src + ".edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string w = src + ".edges[" + std::to_string(i) + "]";
    const Json& e = array(es[i], w);
    if (e.size() != 2) fail(w, "expected [u, v]");
    g.edges.emplace_back(index(e[0], w), index(e[1], w));
  }
  g.source = index(field(j, "source", src), src + ".source");
  g.target = index(field(j, "target", src), src + ".target");
  try {
    g.validate();
  } catch (const malformed_input& e) {
    fail(src, e.what());
  }
  return g;
}

// ---- vectors and matrices given inline -------------------------------------

/// "[1, 2]", "[\"1\", \"2\"]" or "1,2" (a bare single number is a 1-vector).
inline IntVector parse_vector(const std::string& text) {
  std::string t = text;
  if (t.find('[') == std::string::npos) t = "[" + t + "]";
  Json j = parse_json(t, "vector");
  detail::array(j, "vector");
  if (j.empty()) throw malformed_input("vector: must have at least one entry");
  return detail::vector(j, j.size(), "vector");
}

/// Row-major "[[2,3],[1,0]]".
inline std::vector<std::vector<Integer>> parse_matrix(const Json& j, const std::string& src) {
  detail::array(j, src);
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = src + "[" + std::to_string(i) + "]";
    detail::array(j[i], w);
    std::vector<Integer> row;
    for (std::size_t c = 0; c < j[i].size(); ++c)
      row.push_back(detail::integer(j[i][c], w + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Unary size of a basis: every number x costs |x| + 1 symbols.
inline Integer unary_size(const SemilinearBasis& b) {
  Integer total = 0;
  auto add = [&](const IntVector& v) {
    for (const auto& x : v) total += abs_value(x) + 1;
  };
  for (const auto& lb : b) {
    add(lb.offset);
    for (const auto& g : lb.generators) add(g);
  }
  return total;
}

}  // namespace parikh::io
