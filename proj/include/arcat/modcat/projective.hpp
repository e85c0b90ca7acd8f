#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/modcat/module.hpp"

namespace arcat {

/// rad M at each object: the sum of the images of M(r) over radical morphisms r into x.
template <class F>
std::vector<Mat<F>> radical_spans(const CModule<F>& m) {
  const auto& c = *m.cat();
  const std::size_t n = c.size();
  std::vector<Mat<F>> out;
  for (std::size_t x = 0; x < n; ++x) {
    Mat<F> span(m.field(), m.dim(x), 0);
    for (std::size_t y = 0; y < n; ++y) {
      if (m.dim(y) == 0 || c.dim(x, y) == 0) continue;
      Mat<F> rad = c.radical(x, y);
      for (std::size_t j = 0; j < rad.cols(); ++j) span = hstack(span, m.act(x, y, rad.column(j)));
    }
    out.push_back(span.cols() ? image_basis(span) : span);
  }
  return out;
}

template <class F>
ModuleMap<F> radical_submodule(const CModule<F>& m) {
  return submodule(m, radical_spans(m));
}

/// A direct sum of representables ⊕ C(−, tops[i]).
template <class F>
struct ProjectiveSum {
  std::vector<std::size_t> tops;
  DirectSum<F> parts;
  const CModule<F>& module() const { return parts.sum; }
};

template <class F>
ProjectiveSum<F> projective_sum(const CategoryPtr<F>& cat, std::vector<std::size_t> tops) {
  std::vector<CModule<F>> mods;
  for (auto x : tops) mods.push_back(yoneda_projective(cat, x));
  auto parts = direct_sum(cat, mods);
  return {std::move(tops), std::move(parts)};
}

/// Entries α[i][j] ∈ Hom(src.tops[j], tgt.tops[i]) of a map between sums of representables.
template <class F>
using HomMatrix = std::vector<std::vector<std::vector<typename F::Elem>>>;

template <class F>
HomMatrix<F> hom_matrix(const ProjectiveSum<F>& src, const ProjectiveSum<F>& tgt,
                        const ModuleMap<F>& f) {
  const auto& c = *src.module().cat();
  HomMatrix<F> out(tgt.tops.size(), std::vector<std::vector<typename F::Elem>>(src.tops.size()));
  for (std::size_t j = 0; j < src.tops.size(); ++j) {
    const std::size_t y = src.tops[j];
    auto gen = src.parts.inclusions[j].at(y) * Mat<F>::column_vector(c.field(), c.unit(y));
    auto img = (f.at(y) * gen).column(0);
    std::size_t off = 0;
    for (std::size_t i = 0; i < tgt.tops.size(); ++i) {
      const std::size_t d = c.dim(y, tgt.tops[i]);
      out[i][j].assign(img.begin() + off, img.begin() + off + d);
      off += d;
    }
  }
  return out;
}

/// The map between sums of representables with the given Hom entries.
template <class F>
ModuleMap<F> map_from_hom_matrix(const ProjectiveSum<F>& src, const ProjectiveSum<F>& tgt,
                                 const HomMatrix<F>& alpha) {
  ModuleMap<F> out = zero_map(src.module(), tgt.module());
  for (std::size_t i = 0; i < tgt.tops.size(); ++i)
    for (std::size_t j = 0; j < src.tops.size(); ++j) {
      const auto& pj = src.parts.inclusions[j].source;
      const auto& pi = tgt.parts.inclusions[i].source;
      auto y = yoneda_map(pj, src.tops[j], pi, alpha[i][j]);
      out = out + compose(tgt.parts.inclusions[i], compose(y, src.parts.projections[j]));
    }
  return out;
}

template <class F>
struct ProjectiveCover {
  ProjectiveSum<F> projective;
  ModuleMap<F> map;  // P -> M, surjective with kernel in rad P
};

/// Minimal projective cover from a basis of top(M) = M / rad M. Generators are the standard
/// basis vectors of M(x) completing rad M(x), taken in index order.
template <class F>
ProjectiveCover<F> projective_cover(const CModule<F>& m) {
  const auto& cat = m.cat();
  cat->require_split_basic();
  const F& f = m.field();
  auto rad = radical_spans(m);
  std::vector<std::size_t> tops;
  std::vector<std::vector<typename F::Elem>> gens;
  for (std::size_t x = 0; x < m.size(); ++x) {
    Mat<F> span = rad[x];
    std::size_t r = span.cols();
    for (std::size_t k = 0; k < m.dim(x) && r < m.dim(x); ++k) {
      std::vector<typename F::Elem> e(m.dim(x), f.zero());
      e[k] = f.one();
      Mat<F> trial = hstack(span, Mat<F>::column_vector(f, e));
      if (rank(trial) > r) {
        span = trial;
        ++r;
        tops.push_back(x);
        gens.push_back(e);
      }
    }
  }
  auto p = projective_sum(cat, tops);
  ModuleMap<F> map = zero_map(p.module(), m);
  for (std::size_t i = 0; i < tops.size(); ++i)
    map = map + compose(yoneda_map(p.parts.inclusions[i].source, tops[i], m, gens[i]),
                        p.parts.projections[i]);
  if (!is_natural(map) || !is_surjective(map))
    throw VerificationError("projective cover is not a surjective module map");
  // minimality: the kernel lies in rad P, so it contains no summand of P
  auto ker = kernel(map);
  auto radp = radical_spans(p.module());
  for (std::size_t x = 0; x < m.size(); ++x)
    if (rank(hstack(radp[x], ker.at(x))) != radp[x].cols())
      throw VerificationError("projective cover is not minimal");
  return {std::move(p), std::move(map)};
}

template <class F>
struct Presentation {
  ProjectiveCover<F> cover0;  // P0 -> M
  ModuleMap<F> syzygy;        // Ω -> P0, the kernel inclusion
  ProjectiveCover<F> cover1;  // P1 -> Ω
  ModuleMap<F> map;           // P1 -> P0
};

/// P1 -> P0 -> M -> 0 with both covers minimal.
template <class F>
Presentation<F> minimal_presentation(const CModule<F>& m) {
  if (m.is_zero()) throw PreconditionError("the zero module has no minimal presentation to compute");
  auto c0 = projective_cover(m);
  auto omega = kernel(c0.map);
  auto c1 = projective_cover(omega.source);
  auto p = compose(omega, c1.map);
  if (!compose(c0.map, p).is_zero()) throw VerificationError("presentation does not compose to zero");
  return {std::move(c0), std::move(omega), std::move(c1), std::move(p)};
}

/// An object x such that C(−, x) is a direct summand of M, if any. Uses locality of
/// End(C(−,x)) ≅ End(x): P_x splits off iff some φ∘ψ (φ: M -> P_x, ψ: P_x -> M, basis
/// elements) is not in the radical.
template <class F>
std::optional<std::size_t> projective_summand(const CModule<F>& m) {
  const auto& cat = m.cat();
  const auto& c = *cat;
  c.require_split_basic();
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (m.dim(x) == 0) continue;
    auto px = yoneda_projective(cat, x);
    auto out = hom_space(m, px);
    if (out.dim() == 0) continue;
    auto in = hom_space(px, m);
    Mat<F> rad = c.radical(x);
    auto unit = Mat<F>::column_vector(c.field(), c.unit(x));
    for (const auto& psi : in.basis) {
      auto v = psi.at(x) * unit;
      for (const auto& phi : out.basis) {
        auto u = phi.at(x) * v;
        if (!solve(rad, u)) return x;
      }
    }
  }
  return std::nullopt;
}

template <class F>
bool is_projective(const CModule<F>& m) {
  if (m.is_zero()) return true;
  return kernel(projective_cover(m).map).source.is_zero();
}

/// D M over the opposite category: same dimensions, transposed action.
template <class F>
CModule<F> duality_D(const CModule<F>& m) {
  auto op = opposite(m.cat());
  const std::size_t n = m.size();
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < op->dim(x, y); ++i) action[x * n + y].push_back(transpose(m.action(y, x, i)));
  return CModule<F>(op, m.dims(), std::move(action));
}

/// D f: D N -> D M for f: M -> N.
template <class F>
ModuleMap<F> duality_D(const ModuleMap<F>& f) {
  std::vector<Mat<F>> comps;
  for (const auto& c : f.components) comps.push_back(transpose(c));
  return {duality_D(f.target), duality_D(f.source), std::move(comps)};
}

/// The canonical isomorphism M -> D D M, verified natural and invertible.
template <class F>
ModuleMap<F> double_dual_iso(const CModule<F>& m) {
  auto dd = duality_D(duality_D(m));
  auto iso = module_map(m, dd, identity_map(m).components);
  if (!is_isomorphism(iso)) throw VerificationError("M -> DDM is not an isomorphism");
  return iso;
}

/// Tr M: the cokernel of Hom(P0, C) -> Hom(P1, C) for a minimal presentation P1 -> P0,
/// a module over the opposite category.
template <class F>
CModule<F> transpose(const CModule<F>& m) {
  if (auto x = projective_summand(m)) throw ProjectiveSummandError(m.cat()->object(*x));
  auto pres = minimal_presentation(m);
  auto alpha = hom_matrix(pres.cover1.projective, pres.cover0.projective, pres.map);
  auto op = opposite(m.cat());
  auto q0 = projective_sum(op, pres.cover0.projective.tops);
  auto q1 = projective_sum(op, pres.cover1.projective.tops);
  // Hom_op(x_i, y_j) = Hom(y_j, x_i): the same coordinates, transposed index order
  HomMatrix<F> beta(q1.tops.size(), std::vector<std::vector<typename F::Elem>>(q0.tops.size()));
  for (std::size_t i = 0; i < q0.tops.size(); ++i)
    for (std::size_t j = 0; j < q1.tops.size(); ++j) beta[j][i] = alpha[i][j];
  auto dual = map_from_hom_matrix(q0, q1, beta);
  if (!is_natural(dual)) throw VerificationError("dual presentation map is not natural");
  return cokernel(dual).target;
}

/// The kernel of a minimal projective cover.
template <class F>
CModule<F> syzygy(const CModule<F>& m) {
  if (m.is_zero()) return m;
  return kernel(projective_cover(m).map).source;
}

}  // namespace arcat
