#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arcat/linalg/field.hpp"
#include "arcat/linalg/mat.hpp"
#include "arcat/modcat/module.hpp"
#include "arcat/modcat/representation.hpp"
#include "arcat/quiver/quiver.hpp"
#include "arcat/repcat/qrep.hpp"

namespace fixtures {

using namespace arcat;

inline BoundQuiver a2() { return BoundQuiver(Quiver({"1", "2"}, {{"a", "1", "2"}}), MonomialIdeal()); }

/// 1 -> 2 -> ... -> m with all paths of length n vanishing.
inline BoundQuiver linear_rad(std::size_t m, std::size_t n) {
  std::vector<std::string> v;
  std::vector<Arrow> arrows;
  for (std::size_t i = 1; i <= m; ++i) v.push_back(std::to_string(i));
  for (std::size_t i = 1; i < m; ++i)
    arrows.push_back({"a" + std::to_string(i), std::to_string(i), std::to_string(i + 1)});
  Quiver q(v, arrows);
  std::vector<Path> gens;
  for (std::size_t i = 1; i + n <= m; ++i) {
    std::vector<std::string> w;
    for (std::size_t k = i + n; k-- > i;) w.push_back("a" + std::to_string(k));
    gens.push_back(path_from_written(q, w));
  }
  return BoundQuiver(q, MonomialIdeal(gens));
}

inline BoundQuiver a3_rad2() { return linear_rad(3, 2); }

inline BoundQuiver z2_rad2() {
  Quiver q({"0", "1"}, {{"a0", "0", "1"}, {"a1", "1", "0"}});
  return BoundQuiver(q, MonomialIdeal({path_from_written(q, {"a1", "a0"}),
                                       path_from_written(q, {"a0", "a1"})}));
}

inline BoundQuiver loop_sq() {
  Quiver q({"v"}, {{"x", "v", "v"}});
  return BoundQuiver(q, MonomialIdeal({path_from_written(q, {"x", "x"})}));
}

inline CategoryPtr<PrimeField> rep(const BoundQuiver& bq) { return representation_category(PrimeField(), bq); }

template <class F>
Mat<F> random_mat(const F& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Mat<F> m(f, r, c);
  std::uniform_int_distribution<std::uint64_t> d(0, 1000);
  for (auto& e : m.data()) e = f.from_int(static_cast<long>(d(rng)));
  return m;
}

template <class F>
Mat<F> random_invertible(const F& f, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    auto m = random_mat(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

/// The same module after a random change of basis at every object.
template <class F>
CModule<F> conjugate(const CModule<F>& m, std::mt19937_64& rng) {
  const F& f = m.field();
  const std::size_t n = m.size();
  std::vector<Mat<F>> g, gi;
  for (std::size_t x = 0; x < n; ++x) {
    g.push_back(random_invertible(f, m.dim(x), rng));
    gi.push_back(*inverse(g.back()));
  }
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& a : m.actions(x, y)) action[x * n + y].push_back(g[x] * a * gi[y]);
  return CModule<F>(m.cat(), m.dims(), std::move(action));
}



/// A random module over the representation category of a relation-free bound quiver.
template <class F>
CModule<F> random_module(const CategoryPtr<F>& cat, const BoundQuiver& bq, std::size_t max_dim,
                         std::mt19937_64& rng) {
  const auto& q = bq.quiver();
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertices().size(); ++v) dims.push_back(rng() % (max_dim + 1));
  std::map<std::string, Mat<F>> arrows;
  for (const auto& a : q.arrows())
    arrows.emplace(a.id, random_mat(cat->field(), dims[q.vertex_index(a.target)],
                                    dims[q.vertex_index(a.source)], rng));
  return module_from_representation(cat, bq, dims, arrows);
}

/// A random representation of `bq` in mod A, A the representation category of `coeff_bq`.
/// Arrows are drawn in order from the subspace of Hom_A killing every relation whose other
/// arrows are already chosen; an arrow occurring twice in one relation acts by zero.
template <class F>
QRep<F> random_qrep(const BoundQuiver& bq, const CategoryPtr<F>& coeff, const BoundQuiver& coeff_bq,
                    std::size_t max_dim, std::mt19937_64& rng) {
  const auto& q = bq.quiver();
  const F& f = coeff->field();
  std::vector<CModule<F>> mods;
  for (std::size_t v = 0; v < q.vertices().size(); ++v) mods.push_back(random_module(coeff, coeff_bq, max_dim, rng));
  std::map<std::string, ModuleMap<F>> chosen;
  for (const auto& a : q.arrows()) {
    const auto& src = mods[q.vertex_index(a.source)];
    const auto& tgt = mods[q.vertex_index(a.target)];
    auto hom = hom_space(src, tgt);
    bool self = false;
    Mat<F> sys(f, 0, hom.dim());
    for (const auto& g : bq.ideal().generators()) {
      auto at = std::find(g.arrows.begin(), g.arrows.end(), a.id);
      if (at == g.arrows.end()) continue;
      if (std::count(g.arrows.begin(), g.arrows.end(), a.id) > 1) {
        self = true;
        continue;
      }
      bool ready = true;
      for (const auto& b : g.arrows) ready = ready && (b == a.id || chosen.count(b));
      if (!ready) continue;
      ModuleMap<F> before = identity_map(mods[q.vertex_index(g.source)]);
      for (auto it = g.arrows.begin(); it != at; ++it) before = compose(chosen.at(*it), before);
      std::optional<ModuleMap<F>> after;
      for (auto it = at + 1; it != g.arrows.end(); ++it)
        after = after ? compose(chosen.at(*it), *after) : chosen.at(*it);
      std::vector<std::vector<typename F::Elem>> cols;
      for (const auto& h : hom.basis) {
        auto c = compose(h, before);
        cols.push_back((after ? compose(*after, c) : c).flatten());
      }
      if (hom.dim() == 0) continue;
      Mat<F> block(f, cols[0].size(), hom.dim());
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t k = 0; k < cols[j].size(); ++k) block(k, j) = cols[j][k];
      sys = vstack(sys, block);
    }
    ModuleMap<F> pick = zero_map(src, tgt);
    if (!self && hom.dim() > 0 && rng() % 5 != 0) {
      Mat<F> ker = kernel_basis(sys);
      if (ker.cols() > 0) pick = hom.combine((ker * random_mat(f, ker.cols(), 1, rng)).column(0));
    }
    chosen.emplace(a.id, std::move(pick));
  }
  return make_qrep(bq, coeff, std::move(mods), std::move(chosen));
}

/// The interval module k on vertices i..j of the linear quiver 1 -> ... -> m.
template <class F>
CModule<F> interval(const CategoryPtr<F>& cat, const BoundQuiver& bq, std::size_t m, std::size_t i,
                    std::size_t j) {
  std::vector<std::size_t> dims(m, 0);
  for (std::size_t v = i; v <= j; ++v) dims[v - 1] = 1;
  std::map<std::string, Mat<F>> arrows;
  for (std::size_t v = i; v < j; ++v) arrows.emplace("a" + std::to_string(v), Mat<F>::identity(cat->field(), 1));
  return module_from_representation(cat, bq, dims, arrows);
}

/// Interval modules of length at most n: the indecomposables over the linear quiver with
/// relations of length n.
template <class F>
std::vector<CModule<F>> interval_modules(const CategoryPtr<F>& cat, const BoundQuiver& bq,
                                         std::size_t m, std::size_t n) {
  std::vector<CModule<F>> out;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i; j <= m && j - i + 1 <= n; ++j) out.push_back(interval(cat, bq, m, i, j));
  return out;
}

}  // namespace fixtures
