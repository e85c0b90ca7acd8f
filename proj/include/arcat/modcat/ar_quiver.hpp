#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcat/modcat/almost_split.hpp"

namespace arcat {

template <class F>
struct ARVertex {
  CModule<F> module;
  bool projective = false;
  bool injective = false;
  std::string label() const { return module.dim_vector(); }
};

struct AREdge {
  std::size_t from;
  std::size_t to;
  std::size_t multiplicity;
  bool operator==(const AREdge&) const = default;
};

template <class F>
struct ARQuiver {
  std::vector<ARVertex<F>> vertices;
  std::vector<AREdge> edges;                               // irreducible maps, sorted
  std::vector<std::pair<std::size_t, std::size_t>> tau;    // (Z, τZ)
  std::map<std::size_t, AlmostSplitSequence<F>> sequences;  // keyed by the end term Z
  bool closed = false;
  std::string termination;

  std::vector<CModule<F>> family() const {
    std::vector<CModule<F>> out;
    for (const auto& v : vertices) out.push_back(v.module);
    return out;
  }
};

namespace detail {

template <class F>
struct Knitter {
  CategoryPtr<F> cat;
  std::size_t dim_cap;
  std::size_t vertex_cap;
  ARQuiver<F> out;
  std::vector<std::size_t> queue;
  bool over_cap = false;

  /// Index of the iso-class of m, adding it when new and within the caps.
  std::optional<std::size_t> locate(const CModule<F>& m) {
    for (std::size_t i = 0; i < out.vertices.size(); ++i)
      if (indecomposable_isomorphism(m, out.vertices[i].module)) return i;
    if (m.total_dim() > dim_cap || out.vertices.size() >= vertex_cap) {
      over_cap = true;
      return std::nullopt;
    }
    ARVertex<F> v{m};
    v.projective = is_projective(m);
    v.injective = is_projective(duality_D(m));
    out.vertices.push_back(std::move(v));
    queue.push_back(out.vertices.size() - 1);
    return out.vertices.size() - 1;
  }

  /// Summands of m grouped by iso-class, with multiplicities.
  std::vector<std::pair<std::size_t, std::size_t>> classes_of(const CModule<F>& m) {
    std::map<std::size_t, std::size_t> count;
    std::vector<std::size_t> order;
    for (const auto& s : decompose_module(m)) {
      auto idx = locate(s.module());
      if (!idx) continue;
      if (count[*idx]++ == 0) order.push_back(*idx);
    }
    std::vector<std::pair<std::size_t, std::size_t>> res;
    for (auto i : order) res.emplace_back(i, count[i]);
    return res;
  }

  void process(std::size_t i) {
    const CModule<F> m = out.vertices[i].module;
    // arrows ending at m
    if (out.vertices[i].projective) {
      auto rad = radical_submodule(m).source;
      for (auto [j, mult] : classes_of(rad)) out.edges.push_back({j, i, mult});
    } else {
      auto ass = almost_split_sequence(m);
      for (auto [j, mult] : classes_of(ass.middle())) out.edges.push_back({j, i, mult});
      if (auto t = locate(ass.left())) out.tau.emplace_back(i, *t);
      out.sequences.emplace(i, std::move(ass));
    }
    // modules reached by arrows starting at m, found through the dual side
    auto dm = duality_D(m);
    if (out.vertices[i].injective) {
      auto rad = radical_submodule(dm).source;
      if (!rad.is_zero()) classes_of(duality_D(rad));
    } else {
      auto ass = almost_split_sequence(dm);
      classes_of(duality_D(ass.middle()));
      locate(duality_D(ass.left()));
    }
  }
};

}  // namespace detail

/// Knits the AR quiver from the indecomposable projectives and injectives, computing the almost
/// split sequence ending at each non-projective vertex (and, through D, the one starting at
/// each non-injective vertex). New indecomposables above `dim_cap` are not added; the result is
/// closed (every indecomposable module) only when no such module was met.
template <class F>
ARQuiver<F> ar_quiver(const CategoryPtr<F>& cat, std::size_t dim_cap, std::size_t vertex_cap = 400) {
  cat->require_split_basic();
  detail::Knitter<F> k{cat, dim_cap, vertex_cap, {}, {}, false};
  auto op = opposite(cat);
  for (std::size_t x = 0; x < cat->size(); ++x) k.locate(yoneda_projective(cat, x));
  for (std::size_t x = 0; x < cat->size(); ++x) k.locate(duality_D(yoneda_projective(op, x)));
  for (std::size_t pos = 0; pos < k.queue.size(); ++pos) k.process(k.queue[pos]);
  auto& q = k.out;
  std::sort(q.edges.begin(), q.edges.end(), [](const AREdge& a, const AREdge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  std::sort(q.tau.begin(), q.tau.end());
  q.closed = !k.over_cap;
  q.termination = q.closed ? "closure: every indecomposable module was reached"
                           : "cap: an indecomposable of dimension > " + std::to_string(dim_cap) +
                                 " (or more than " + std::to_string(vertex_cap) +
                                 " vertices) was met; the quiver is partial";
  return q;
}

/// Global dimension as the largest projective dimension of a simple module, by iterated
/// syzygies; nullopt when some simple needs more than `cap` steps.
template <class F>
std::optional<std::size_t> global_dimension(const CategoryPtr<F>& cat, std::size_t cap) {
  std::size_t gd = 0;
  for (std::size_t x = 0; x < cat->size(); ++x) {
    CModule<F> m = simple_module(cat, x);
    std::size_t pd = 0;
    while (true) {
      auto omega = syzygy(m);
      if (omega.is_zero()) break;
      if (++pd >= cap) return std::nullopt;
      m = std::move(omega);
    }
    gd = std::max(gd, pd);
  }
  return gd;
}

}  // namespace arcat
