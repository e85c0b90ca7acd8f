#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arcat/error.hpp"

namespace arcat {

struct Arrow {
  std::string id;
  std::string source;
  std::string target;
  bool operator==(const Arrow&) const = default;
};

/// A finite quiver. Vertex and arrow ids are opaque strings; "1_" is reserved for trivial paths.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (vertices_[i].empty()) throw PreconditionError("empty vertex id");
      if (!vertex_index_.emplace(vertices_[i], i).second)
        throw PreconditionError("duplicate vertex id '" + vertices_[i] + "'");
    }
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const Arrow& a = arrows_[i];
      if (a.id.empty() || a.id.rfind("1_", 0) == 0)
        throw PreconditionError("invalid arrow id '" + a.id + "'");
      if (!arrow_index_.emplace(a.id, i).second)
        throw PreconditionError("duplicate arrow id '" + a.id + "'");
      if (!has_vertex(a.source) || !has_vertex(a.target))
        throw PreconditionError("arrow '" + a.id + "' has an endpoint that is not a vertex");
    }
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  bool has_vertex(const std::string& v) const { return vertex_index_.count(v) > 0; }
  bool has_arrow(const std::string& a) const { return arrow_index_.count(a) > 0; }
  std::size_t vertex_index(const std::string& v) const {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end()) throw PreconditionError("unknown vertex '" + v + "'");
    return it->second;
  }
  const Arrow& arrow(const std::string& id) const {
    auto it = arrow_index_.find(id);
    if (it == arrow_index_.end()) throw PreconditionError("unknown arrow '" + id + "'");
    return arrows_[it->second];
  }

  /// Arrows leaving v, ordered by id.
  std::vector<Arrow> outgoing(const std::string& v) const {
    std::vector<Arrow> out;
    for (const auto& a : arrows_)
      if (a.source == v) out.push_back(a);
    std::sort(out.begin(), out.end(), [](const Arrow& x, const Arrow& y) { return x.id < y.id; });
    return out;
  }

  bool operator==(const Quiver& o) const { return vertices_ == o.vertices_ && arrows_ == o.arrows_; }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> vertex_index_;
  std::map<std::string, std::size_t> arrow_index_;
};

/// A path stored in application order: arrows[0] is applied first. In written (composition)
/// form the path is arrows[l-1] * ... * arrows[0].
struct Path {
  std::string source;
  std::string target;
  std::vector<std::string> arrows;

  static Path trivial(const std::string& v) { return {v, v, {}}; }

  std::size_t length() const { return arrows.size(); }
  bool is_trivial() const { return arrows.empty(); }

  /// Written form: "1_v" for trivial paths, otherwise "a_l*...*a_1".
  std::string to_string() const {
    if (arrows.empty()) return "1_" + source;
    std::string s;
    for (std::size_t i = arrows.size(); i-- > 0;) {
      s += arrows[i];
      if (i) s += '*';
    }
    return s;
  }

  /// The path a∘this, i.e. this followed by the arrow a.
  Path then(const Arrow& a) const {
    Path p = *this;
    p.arrows.push_back(a.id);
    p.target = a.target;
    return p;
  }

  /// Composite `after ∘ before`; requires before.target == after.source.
  static Path compose(const Path& after, const Path& before) {
    Path p{before.source, after.target, before.arrows};
    p.arrows.insert(p.arrows.end(), after.arrows.begin(), after.arrows.end());
    return p;
  }

  bool contains(const Path& sub) const {
    if (sub.is_trivial()) return sub.source == source || sub.source == target;
    return std::search(arrows.begin(), arrows.end(), sub.arrows.begin(), sub.arrows.end()) !=
           arrows.end();
  }

  bool operator==(const Path&) const = default;
};

/// Canonical order: length, then lexicographic on the application-order arrow list.
inline bool canonical_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  return a.source < b.source;
}

/// Builds a path from its written form a_l ... a_1 (composition order, as in "ba").
inline Path path_from_written(const Quiver& q, const std::vector<std::string>& written) {
  if (written.empty()) throw PreconditionError("empty arrow sequence");
  Path p;
  for (std::size_t i = written.size(); i-- > 0;) {
    const Arrow& a = q.arrow(written[i]);
    if (p.arrows.empty()) {
      p.source = a.source;
    } else if (p.target != a.source) {
      throw PreconditionError("arrows do not compose: '" + written[i] + "' does not start at '" +
                              p.target + "'");
    }
    p.arrows.push_back(a.id);
    p.target = a.target;
  }
  return p;
}

class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  explicit MonomialIdeal(std::vector<Path> generators) : generators_(std::move(generators)) {
    for (const auto& g : generators_)
      if (g.length() < 2)
        throw PreconditionError("ideal generator '" + g.to_string() +
                                "' has length < 2; admissible ideals lie in the square of the "
                                "arrow ideal");
    std::sort(generators_.begin(), generators_.end(), canonical_less);
    generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  }
  const std::vector<Path>& generators() const { return generators_; }
  bool empty() const { return generators_.empty(); }
  std::size_t max_length() const {
    std::size_t m = 0;
    for (const auto& g : generators_) m = std::max(m, g.length());
    return m;
  }

  /// True when p has some generator as a contiguous subpath.
  bool contains(const Path& p) const {
    for (const auto& g : generators_)
      if (g.length() <= p.length() && p.contains(g)) return true;
    return false;
  }
  /// True when the last arrow of p completes a generator occurrence (p minus its last arrow
  /// is assumed to survive).
  bool suffix_hits(const Path& p) const {
    for (const auto& g : generators_) {
      if (g.length() > p.length()) continue;
      if (std::equal(g.arrows.begin(), g.arrows.end(), p.arrows.end() - g.length())) return true;
    }
    return false;
  }

  bool operator==(const MonomialIdeal& o) const { return generators_ == o.generators_; }

 private:
  std::vector<Path> generators_;
};

inline void check_ideal(const Quiver& q, const MonomialIdeal& ideal) {
  for (const auto& g : ideal.generators()) {
    for (std::size_t i = 0; i < g.arrows.size(); ++i) {
      const Arrow& a = q.arrow(g.arrows[i]);
      if (i + 1 < g.arrows.size() && a.target != q.arrow(g.arrows[i + 1]).source)
        throw PreconditionError("ideal generator '" + g.to_string() + "' is not a path");
    }
  }
}

enum class AdmissibilityStatus { Admissible, NotAdmissible, CapExceeded };

struct Admissibility {
  AdmissibilityStatus status = AdmissibilityStatus::NotAdmissible;
  std::map<std::string, std::size_t> bounds;  // l_v, filled when admissible
  std::string detail;
  bool admissible() const { return status == AdmissibilityStatus::Admissible; }
};

namespace detail {

// DFS over surviving paths (no generator as a subpath). The state of a path for the
// "does the next arrow create a generator" question is its end vertex plus its last
// (L-1) arrows, L the longest generator; a repeated state on one path means the segment
// between can be pumped forever.
struct SurvivorSearch {
  const Quiver& q;
  const MonomialIdeal& ideal;
  std::size_t cap;
  std::size_t window;
  std::map<std::string, std::size_t> max_len;  // per vertex, over paths with source or target v
  AdmissibilityStatus status = AdmissibilityStatus::Admissible;
  std::string detail;

  std::pair<std::string, std::vector<std::string>> state_of(const Path& p) const {
    std::size_t k = std::min(window, p.length());
    return {p.target, std::vector<std::string>(p.arrows.end() - k, p.arrows.end())};
  }

  void run(const std::string& v) {
    Path p = Path::trivial(v);
    std::vector<std::pair<std::string, std::vector<std::string>>> states{state_of(p)};
    dfs(p, states);
  }

  void dfs(const Path& p, std::vector<std::pair<std::string, std::vector<std::string>>>& states) {
    if (status != AdmissibilityStatus::Admissible) return;
    auto bump = [&](const std::string& v) {
      auto& m = max_len[v];
      m = std::max(m, p.length());
    };
    bump(p.source);
    bump(p.target);
    for (const auto& a : q.outgoing(p.target)) {
      Path next = p.then(a);
      if (ideal.suffix_hits(next)) continue;
      auto st = state_of(next);
      if (std::find(states.begin(), states.end(), st) != states.end()) {
        status = AdmissibilityStatus::NotAdmissible;
        detail = "the path " + next.to_string() + " repeats a state; paths of every length survive";
        return;
      }
      if (next.length() > cap) {
        status = AdmissibilityStatus::CapExceeded;
        detail = "surviving paths longer than the search cap " + std::to_string(cap);
        return;
      }
      states.push_back(st);
      dfs(next, states);
      states.pop_back();
      if (status != AdmissibilityStatus::Admissible) return;
    }
  }
};

}  // namespace detail

/// Minimal l_v with every path of length >= l_v through v (as source or target) in the ideal.
inline Admissibility is_admissible(const Quiver& q, const MonomialIdeal& ideal,
                                   std::size_t cap = 32) {
  check_ideal(q, ideal);
  std::size_t window = ideal.max_length() > 0 ? ideal.max_length() - 1 : 0;
  detail::SurvivorSearch search{q, ideal, cap, window, {}, AdmissibilityStatus::Admissible, {}};
  for (const auto& v : q.vertices()) {
    search.run(v);
    if (search.status != AdmissibilityStatus::Admissible) break;
  }
  Admissibility out;
  out.status = search.status;
  out.detail = search.detail;
  if (out.admissible())
    for (const auto& v : q.vertices()) out.bounds[v] = search.max_len[v] + 1;
  return out;
}

/// kQ/I with I monomial and admissible; construction verifies admissibility.
class BoundQuiver {
 public:
  BoundQuiver() = default;
  BoundQuiver(Quiver q, MonomialIdeal ideal, std::size_t cap = 32)
      : quiver_(std::move(q)), ideal_(std::move(ideal)) {
    auto adm = is_admissible(quiver_, ideal_, cap);
    if (adm.status == AdmissibilityStatus::CapExceeded)
      throw PreconditionError("admissibility undecided: " + adm.detail);
    if (!adm.admissible()) throw PreconditionError("ideal is not admissible: " + adm.detail);
    bounds_ = std::move(adm.bounds);
  }

  const Quiver& quiver() const { return quiver_; }
  const MonomialIdeal& ideal() const { return ideal_; }
  const std::map<std::string, std::size_t>& nilpotency_bounds() const { return bounds_; }

  bool survives(const Path& p) const { return !ideal_.contains(p); }

  /// Every surviving path starting at v, in canonical order.
  std::vector<Path> paths_from(const std::string& v) const {
    quiver_.vertex_index(v);
    std::vector<Path> out;
    std::vector<Path> frontier{Path::trivial(v)};
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (const auto& p : frontier) {
        out.push_back(p);
        for (const auto& a : quiver_.outgoing(p.target)) {
          Path n = p.then(a);
          if (!ideal_.suffix_hits(n)) next.push_back(std::move(n));
        }
      }
      frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
  }

  bool operator==(const BoundQuiver& o) const {
    return quiver_ == o.quiver_ && ideal_ == o.ideal_;
  }

 private:
  Quiver quiver_;
  MonomialIdeal ideal_;
  std::map<std::string, std::size_t> bounds_;
};

/// Surviving paths v -> w in canonical order: a basis of (kQ/I)(v, w).
inline std::vector<Path> enumerate_paths(const BoundQuiver& bq, const std::string& v,
                                         const std::string& w) {
  bq.quiver().vertex_index(w);
  std::vector<Path> out;
  for (auto& p : bq.paths_from(v))
    if (p.target == w) out.push_back(std::move(p));
  return out;
}

inline std::string opposite_arrow_id(const std::string& id) {
  const std::string suffix = "^op";
  if (id.size() > suffix.size() && id.compare(id.size() - suffix.size(), suffix.size(), suffix) == 0)
    return id.substr(0, id.size() - suffix.size());
  return id + suffix;
}

inline BoundQuiver opposite(const BoundQuiver& bq) {
  std::vector<Arrow> arrows;
  for (const auto& a : bq.quiver().arrows())
    arrows.push_back({opposite_arrow_id(a.id), a.target, a.source});
  Quiver qop(bq.quiver().vertices(), std::move(arrows));
  std::vector<Path> gens;
  for (const auto& g : bq.ideal().generators()) {
    Path p{g.target, g.source, {}};
    for (std::size_t i = g.arrows.size(); i-- > 0;) p.arrows.push_back(opposite_arrow_id(g.arrows[i]));
    gens.push_back(std::move(p));
  }
  return BoundQuiver(std::move(qop), MonomialIdeal(std::move(gens)));
}

/// The component of the left path space at 1_v, restricted to surviving paths: vertices are
/// paths from v (ids = written form), arrows (p, ap) with id "(p,ap)".
inline Quiver left_path_space(const BoundQuiver& bq, const std::string& v) {
  auto paths = bq.paths_from(v);
  std::vector<std::string> vertices;
  for (const auto& p : paths) vertices.push_back(p.to_string());
  std::vector<Arrow> arrows;
  for (const auto& p : paths)
    for (const auto& a : bq.quiver().outgoing(p.target)) {
      Path ap = p.then(a);
      if (!bq.survives(ap)) continue;
      arrows.push_back({"(" + p.to_string() + "," + ap.to_string() + ")", p.to_string(), ap.to_string()});
    }
  return Quiver(std::move(vertices), std::move(arrows));
}

}  // namespace arcat
