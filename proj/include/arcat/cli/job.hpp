#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arcat/complexes/ncomplex.hpp"
#include "arcat/error.hpp"
#include "arcat/quiver/quiver.hpp"

namespace arcat::cli {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"info", "tensor", "ar-quiver", "ass", "verify", "approximate",
                                              "roundtrip"};
  return names;
}

/// One matrix line of a [module] section: `arrow @ at: r11 r12; r21 r22`.
struct MatrixText {
  std::string arrow;
  std::string at;
  std::vector<std::vector<std::string>> rows;
  int line = 0;
};

/// A module over the tensor category as a representation of the base quiver whose vertices
/// carry representations of the coefficient quiver.
struct ModuleText {
  std::map<std::string, std::vector<std::size_t>> dims;  // base vertex -> dims per coefficient vertex
  std::vector<MatrixText> matrices;
  int line = 0;
};

struct JobSpec {
  std::optional<std::string> field;  // "p" or "Q"; absent means the default
  std::optional<BoundQuiver> quiver;
  std::optional<NComplexSpec> complex;
  BoundQuiver coefficient{Quiver({"*"}, {}), MonomialIdeal()};
  bool has_coefficient = false;
  std::string command;
  std::map<std::string, std::string> params;
  std::optional<ModuleText> module;

  BoundQuiver base() const { return complex ? build_category(*complex) : *quiver; }
  std::size_t tensor_objects() const {
    return base().quiver().vertices().size() * coefficient.quiver().vertices().size();
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

struct Line {
  std::string text;
  int number;
};

struct Section {
  std::string name;
  int line;
  std::vector<Line> body;
};

inline std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> out;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", number);
      out.push_back({trim(s.substr(1, s.size() - 2)), number, {}});
      continue;
    }
    if (out.empty()) throw ParseError("content before the first section", number);
    out.back().body.push_back({s, number});
  }
  return out;
}

inline long long parse_integer(const std::string& w, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + w + "'", line);
  }
}

inline std::size_t parse_count(const std::string& w, int line) {
  long long v = parse_integer(w, line);
  if (v < 0) throw ParseError("expected a non-negative integer, got '" + w + "'", line);
  return static_cast<std::size_t>(v);
}

/// `name: src -> tgt`
inline Arrow parse_arrow(const Line& l) {
  auto colon = l.text.find(':');
  auto arrow = l.text.find("->");
  if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
    throw ParseError("expected 'name: source -> target'", l.number);
  Arrow a{trim(l.text.substr(0, colon)), trim(l.text.substr(colon + 1, arrow - colon - 1)),
          trim(l.text.substr(arrow + 2))};
  if (a.id.empty() || a.source.empty() || a.target.empty() || words(a.id).size() != 1 ||
      words(a.source).size() != 1 || words(a.target).size() != 1)
    throw ParseError("expected 'name: source -> target'", l.number);
  return a;
}

/// Arrow-name sequence in written order, separated by spaces or '*'.
inline std::vector<std::string> parse_relation(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), '*', ' ');
  return words(s);
}

struct QuiverText {
  std::vector<std::string> vertices;
  int vertices_line = 0;
  std::vector<std::pair<Arrow, int>> arrows;
  std::vector<std::pair<std::vector<std::string>, int>> relations;
};

inline void read_quiver_line(QuiverText& q, const Line& l, bool allow_relations) {
  if (l.text.rfind("vertices:", 0) == 0) {
    if (q.vertices_line) throw ParseError("vertices listed twice", l.number);
    q.vertices = words(l.text.substr(9));
    q.vertices_line = l.number;
    if (q.vertices.empty()) throw ParseError("a quiver needs at least one vertex", l.number);
    return;
  }
  if (allow_relations && l.text.rfind("ideal:", 0) == 0) {
    q.relations.push_back({parse_relation(l.text.substr(6)), l.number});
    return;
  }
  q.arrows.push_back({parse_arrow(l), l.number});
}

inline BoundQuiver build_quiver(const QuiverText& t, int section_line) {
  if (!t.vertices_line) throw ParseError("quiver section has no 'vertices:' line", section_line);
  std::set<std::string> seen;
  for (const auto& v : t.vertices)
    if (!seen.insert(v).second) throw ParseError("duplicate vertex '" + v + "'", t.vertices_line);
  std::set<std::string> ids;
  std::vector<Arrow> arrows;
  for (const auto& [a, line] : t.arrows) {
    if (!seen.count(a.source)) throw ParseError("unknown vertex '" + a.source + "'", line);
    if (!seen.count(a.target)) throw ParseError("unknown vertex '" + a.target + "'", line);
    if (a.id.rfind("1_", 0) == 0) throw ParseError("arrow names may not start with '1_'", line);
    if (!ids.insert(a.id).second) throw ParseError("duplicate arrow '" + a.id + "'", line);
    arrows.push_back(a);
  }
  Quiver q(t.vertices, arrows);
  std::vector<Path> gens;
  for (const auto& [rel, line] : t.relations) {
    if (rel.empty()) throw ParseError("empty ideal generator", line);
    for (const auto& a : rel)
      if (!ids.count(a)) throw ParseError("unknown arrow '" + a + "'", line);
    Path p;
    try {
      p = path_from_written(q, rel);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), line);
    }
    if (p.length() < 2)
      throw PreconditionError("line " + std::to_string(line) + ": ideal generator '" + p.to_string() +
                              "' has length < 2; admissible ideals lie in the square of the arrow ideal");
    gens.push_back(p);
  }
  MonomialIdeal ideal(gens);
  auto adm = is_admissible(q, ideal);
  if (!adm.admissible())
    throw PreconditionError("line " + std::to_string(section_line) + ": ideal is not admissible: " + adm.detail);
  return BoundQuiver(q, ideal);
}

inline NComplexSpec parse_complex(const Section& s) {
  if (s.body.size() != 1) throw ParseError("[complex] takes exactly one line", s.line);
  const auto& l = s.body[0];
  auto w = words(l.text);
  auto arg = [&](std::size_t i) { return parse_integer(w[i], l.number); };
  try {
    if (w[0] == "interval" && w.size() == 3)
      return NComplexSpec::interval(parse_count(w[1], l.number), parse_count(w[2], l.number));
    if (w[0] == "window" && w.size() == 4) return NComplexSpec::window(parse_count(w[1], l.number), arg(2), arg(3));
    if (w[0] == "cyclic" && w.size() == 2) return NComplexSpec::cyclic(parse_count(w[1], l.number));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), l.number);
  }
  throw ParseError("expected 'interval n m', 'window n lo hi' or 'cyclic N'", l.number);
}

inline MatrixText parse_matrix_line(const Line& l) {
  auto colon = l.text.find(':');
  if (colon == std::string::npos) throw ParseError("expected 'arrow @ vertex: rows'", l.number);
  MatrixText m;
  m.line = l.number;
  std::string head = l.text.substr(0, colon);
  auto at = head.find('@');
  m.arrow = trim(head.substr(0, at));
  if (at != std::string::npos) m.at = trim(head.substr(at + 1));
  if (words(m.arrow).size() != 1 || (at != std::string::npos && words(m.at).size() != 1))
    throw ParseError("expected 'arrow @ vertex: rows'", l.number);
  std::string body = l.text.substr(colon + 1);
  body.erase(std::remove_if(body.begin(), body.end(), [](char c) { return c == '[' || c == ']'; }), body.end());
  std::istringstream rows(body);
  for (std::string row; std::getline(rows, row, ';');) {
    auto entries = words(row);
    if (!entries.empty()) m.rows.push_back(entries);
  }
  return m;
}

inline ModuleText parse_module(const Section& s) {
  ModuleText out;
  out.line = s.line;
  for (const auto& l : s.body) {
    if (l.text.rfind("dims", 0) == 0 && l.text.find(':') != std::string::npos && words(l.text)[0] == "dims") {
      auto colon = l.text.find(':');
      auto head = words(l.text.substr(0, colon));
      if (head.size() != 2) throw ParseError("expected 'dims <vertex>: d1 d2 ...'", l.number);
      std::vector<std::size_t> dims;
      for (const auto& w : words(l.text.substr(colon + 1))) dims.push_back(parse_count(w, l.number));
      if (!out.dims.emplace(head[1], dims).second)
        throw ParseError("dims for '" + head[1] + "' given twice", l.number);
      continue;
    }
    out.matrices.push_back(parse_matrix_line(l));
  }
  return out;
}

}  // namespace detail

/// Checks vertex and arrow names of a module against the base and coefficient quivers and
/// fills in the coefficient vertex when it is the only one.
inline void resolve_module(const BoundQuiver& base, const BoundQuiver& coefficient, ModuleText& m) {
  const auto& bv = base.quiver();
  const auto& av = coefficient.quiver();
  for (const auto& [v, d] : m.dims) {
    if (!bv.has_vertex(v)) throw ParseError("unknown vertex '" + v + "'", m.line);
    if (d.size() != av.vertices().size())
      throw ParseError("dims for '" + v + "' need " + std::to_string(av.vertices().size()) + " entries", m.line);
  }
  for (auto& x : m.matrices) {
    const bool in_b = bv.has_arrow(x.arrow), in_a = av.has_arrow(x.arrow);
    if (in_b && in_a) throw ParseError("arrow name '" + x.arrow + "' is ambiguous", x.line);
    if (!in_b && !in_a) throw ParseError("unknown arrow '" + x.arrow + "'", x.line);
    const Quiver& other = in_b ? av : bv;
    if (x.at.empty() && other.vertices().size() == 1) x.at = other.vertices()[0];
    if (!other.has_vertex(x.at)) throw ParseError("unknown vertex '" + x.at + "'", x.line);
  }
}

/// Parses and validates a job description.
inline JobSpec load_spec_text(const std::string& text) {
  using namespace detail;
  JobSpec job;
  std::set<std::string> seen;
  std::optional<Section> quiver_s, ideal_s, coeff_s, module_s, command_s;
  for (auto& s : split_sections(text)) {
    static const std::set<std::string> known{"field", "quiver", "ideal", "complex", "coefficient", "command", "module"};
    if (!known.count(s.name)) throw ParseError("unknown section [" + s.name + "]", s.line);
    if (!seen.insert(s.name).second) throw ParseError("section [" + s.name + "] appears twice", s.line);
    if (s.name == "field") {
      if (s.body.size() != 1 || words(s.body[0].text).size() != 1)
        throw ParseError("[field] takes one value: a prime p or Q", s.line);
      job.field = s.body[0].text;
    } else if (s.name == "complex") {
      job.complex = parse_complex(s);
    } else if (s.name == "quiver") {
      quiver_s = s;
    } else if (s.name == "ideal") {
      ideal_s = s;
    } else if (s.name == "coefficient") {
      coeff_s = s;
    } else if (s.name == "module") {
      module_s = s;
    } else {
      command_s = s;
    }
  }
  if (quiver_s && job.complex) throw ParseError("give either [quiver] or [complex], not both", quiver_s->line);
  if (!quiver_s && !job.complex) throw ParseError("missing [quiver] or [complex] section");
  if (ideal_s && !quiver_s) throw ParseError("[ideal] needs a [quiver] section", ideal_s->line);
  if (quiver_s) {
    QuiverText qt;
    for (const auto& l : quiver_s->body) read_quiver_line(qt, l, false);
    if (ideal_s)
      for (const auto& l : ideal_s->body) qt.relations.push_back({parse_relation(l.text), l.number});
    job.quiver = build_quiver(qt, quiver_s->line);
  }
  if (coeff_s) {
    QuiverText qt;
    for (const auto& l : coeff_s->body) read_quiver_line(qt, l, true);
    job.coefficient = build_quiver(qt, coeff_s->line);
    job.has_coefficient = true;
  }
  if (!command_s) throw ParseError("missing [command] section");
  for (const auto& l : command_s->body) {
    auto colon = l.text.find(':');
    if (colon == std::string::npos) {
      if (!job.command.empty()) throw ParseError("exactly one command per job", l.number);
      job.command = l.text;
      if (std::find(command_names().begin(), command_names().end(), job.command) == command_names().end())
        throw ParseError("unknown command '" + job.command + "'", l.number);
    } else {
      job.params[trim(l.text.substr(0, colon))] = trim(l.text.substr(colon + 1));
    }
  }
  if (job.command.empty()) throw ParseError("[command] names no command", command_s->line);
  if (module_s) job.module = parse_module(*module_s);
  const bool needs_module = job.command == "ass" || job.command == "approximate" || job.command == "roundtrip";
  if (needs_module && !job.module)
    throw ParseError("command '" + job.command + "' needs a [module] section", command_s->line);
  if (job.command == "approximate" && !job.complex)
    throw ParseError("command 'approximate' needs a [complex] section", command_s->line);
  if (job.module) resolve_module(job.base(), job.coefficient, *job.module);
  return job;
}

inline JobSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_spec_text(ss.str());
}

/// The [module] sections of a family file, in order, resolved against the job.
inline std::vector<ModuleText> load_family_text(const JobSpec& job, const std::string& text) {
  std::vector<ModuleText> out;
  for (const auto& s : detail::split_sections(text)) {
    if (s.name != "module") throw ParseError("family files contain only [module] sections", s.line);
    out.push_back(detail::parse_module(s));
    resolve_module(job.base(), job.coefficient, out.back());
  }
  return out;
}

inline std::vector<ModuleText> load_family(const JobSpec& job, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_family_text(job, ss.str());
}

}  // namespace arcat::cli
