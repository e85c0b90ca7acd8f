#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/fincat/algebra.hpp"
#include "arcat/modcat/module.hpp"

namespace arcat {

namespace detail {

template <class F>
std::vector<std::size_t> block_offsets(const CModule<F>& m) {
  std::vector<std::size_t> off(m.size() + 1, 0);
  for (std::size_t x = 0; x < m.size(); ++x) off[x + 1] = off[x] + m.dim(x);
  return off;
}

template <class F>
Mat<F> block_diagonal(const ModuleMap<F>& f) {
  auto off = block_offsets(f.source);
  Mat<F> out(f.source.field(), off.back(), off.back());
  for (std::size_t x = 0; x < f.components.size(); ++x) out.set_block(off[x], off[x], f.at(x));
  return out;
}

template <class F>
ModuleMap<F> from_block_diagonal(const CModule<F>& m, const Mat<F>& b) {
  auto off = block_offsets(m);
  std::vector<Mat<F>> comps;
  for (std::size_t x = 0; x < m.size(); ++x) comps.push_back(b.block(off[x], off[x], m.dim(x), m.dim(x)));
  return {m, m, std::move(comps)};
}

}  // namespace detail

/// End(M) as an algebra of block-diagonal matrices (one block per object).
template <class F>
struct EndomorphismAlgebra {
  HomSpace<F> hom;
  MatrixAlgebra<F> algebra;
};

template <class F>
EndomorphismAlgebra<F> endomorphism_algebra(const CModule<F>& m) {
  auto hom = hom_space(m, m);
  std::vector<Mat<F>> span;
  for (const auto& b : hom.basis) span.push_back(detail::block_diagonal(b));
  const std::size_t n = m.total_dim();
  MatrixAlgebra<F> alg(m.field(), n, span, Mat<F>::identity(m.field(), n));
  return {std::move(hom), std::move(alg)};
}

/// A basis of rad End(M).
template <class F>
std::vector<ModuleMap<F>> radical_of_end(const CModule<F>& m) {
  auto end = endomorphism_algebra(m);
  std::vector<ModuleMap<F>> out;
  for (const auto& r : end.algebra.radical()) out.push_back(detail::from_block_diagonal(m, r));
  return out;
}

/// dim End(M) / rad End(M).
template <class F>
std::size_t top_dimension_of_end(const CModule<F>& m) {
  auto end = endomorphism_algebra(m);
  return end.algebra.dim() - end.algebra.radical().size();
}

template <class F>
struct Summand {
  ModuleMap<F> inclusion;   // S -> M
  ModuleMap<F> projection;  // M -> S
  const CModule<F>& module() const { return inclusion.source; }
};

/// Krull-Schmidt decomposition from primitive idempotents of End(M). Certificates:
/// projection∘inclusion = 1_S for each summand and Σ inclusion∘projection = 1_M.
template <class F>
std::vector<Summand<F>> decompose_module(const CModule<F>& m) {
  if (m.is_zero()) return {};
  auto end = endomorphism_algebra(m);
  std::vector<Summand<F>> out;
  ModuleMap<F> total = zero_map(m, m);
  for (const auto& e : end.algebra.primitive_idempotents()) {
    auto em = detail::from_block_diagonal(m, e);
    auto inc = image(em);
    std::vector<Mat<F>> proj;
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (inc.source.dim(x) == 0) {
        proj.emplace_back(m.field(), 0, m.dim(x));
        continue;
      }
      proj.push_back(*solve(inc.at(x), em.at(x)));
    }
    ModuleMap<F> p{m, inc.source, std::move(proj)};
    if (!is_natural(p) || !(compose(p, inc) == identity_map(inc.source)))
      throw VerificationError("summand projection does not split the inclusion");
    total = total + compose(inc, p);
    out.push_back({std::move(inc), std::move(p)});
  }
  if (!(total == identity_map(m))) throw VerificationError("summand idempotents do not sum to 1");
  return out;
}

template <class F>
bool is_indecomposable(const CModule<F>& m) {
  if (m.is_zero()) return false;
  return endomorphism_algebra(m).algebra.is_local();
}

/// An isomorphism between indecomposable modules, or nullopt. When M ≅ N are indecomposable the
/// non-isomorphisms form a proper subspace of Hom(M, N), so some basis element is invertible.
template <class F>
std::optional<ModuleMap<F>> indecomposable_isomorphism(const CModule<F>& m, const CModule<F>& n) {
  if (m.dims() != n.dims()) return std::nullopt;
  for (const auto& f : hom_space(m, n).basis)
    if (is_isomorphism(f)) return f;
  return std::nullopt;
}

/// An isomorphism between arbitrary modules via decomposition and matching of summands.
template <class F>
std::optional<ModuleMap<F>> find_isomorphism(const CModule<F>& m, const CModule<F>& n) {
  require_same_category(m, n);
  if (m.dims() != n.dims()) return std::nullopt;
  auto sm = decompose_module(m);
  auto sn = decompose_module(n);
  if (sm.size() != sn.size()) return std::nullopt;
  std::vector<bool> used(sn.size(), false);
  ModuleMap<F> iso = zero_map(m, n);
  for (const auto& a : sm) {
    bool found = false;
    for (std::size_t j = 0; j < sn.size() && !found; ++j) {
      if (used[j]) continue;
      if (auto f = indecomposable_isomorphism(a.module(), sn[j].module())) {
        iso = iso + compose(sn[j].inclusion, compose(*f, a.projection));
        used[j] = true;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  if (!is_natural(iso) || !is_isomorphism(iso)) throw VerificationError("assembled isomorphism fails");
  return iso;
}

}  // namespace arcat
