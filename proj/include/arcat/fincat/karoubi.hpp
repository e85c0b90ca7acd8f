#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/fincat/algebra.hpp"
#include "arcat/fincat/category.hpp"
#include "arcat/linalg/subspace.hpp"

namespace arcat {

/// An object of the additive hull: a tuple of base objects, sorted by object id.
struct AddObject {
  std::vector<std::size_t> summands;

  template <class F>
  static AddObject of(const FinCategory<F>& c, std::vector<std::size_t> objs) {
    std::stable_sort(objs.begin(), objs.end(),
                     [&](std::size_t a, std::size_t b) { return c.object(a) < c.object(b); });
    return {std::move(objs)};
  }
  std::size_t size() const { return summands.size(); }
  bool operator==(const AddObject&) const = default;
};

/// A morphism of the additive hull: block (j, i) lies in Hom(src_i, tgt_j).
template <class F>
struct AddMorphism {
  AddObject source;
  AddObject target;
  std::vector<std::vector<typename F::Elem>> blocks;  // index j * source.size() + i

  const std::vector<typename F::Elem>& block(std::size_t j, std::size_t i) const {
    return blocks[j * source.size() + i];
  }
  std::vector<typename F::Elem>& block(std::size_t j, std::size_t i) {
    return blocks[j * source.size() + i];
  }
  /// All block coordinates concatenated in block order.
  std::vector<typename F::Elem> flatten() const {
    std::vector<typename F::Elem> v;
    for (const auto& b : blocks) v.insert(v.end(), b.begin(), b.end());
    return v;
  }
  bool operator==(const AddMorphism&) const = default;
};

template <class F>
AddMorphism<F> zero_morphism(const FinCategory<F>& c, const AddObject& x, const AddObject& y) {
  AddMorphism<F> m{x, y, {}};
  for (auto tj : y.summands)
    for (auto si : x.summands) m.blocks.push_back(c.zero(si, tj));
  return m;
}

template <class F>
AddMorphism<F> identity_morphism(const FinCategory<F>& c, const AddObject& x) {
  auto m = zero_morphism(c, x, x);
  for (std::size_t i = 0; i < x.size(); ++i) m.block(i, i) = c.unit(x.summands[i]);
  return m;
}

template <class F>
AddMorphism<F> unflatten(const FinCategory<F>& c, const AddObject& x, const AddObject& y,
                         const std::vector<typename F::Elem>& v) {
  auto m = zero_morphism(c, x, y);
  std::size_t pos = 0;
  for (auto& b : m.blocks)
    for (auto& e : b) e = v[pos++];
  return m;
}

/// g ∘ f.
template <class F>
AddMorphism<F> compose(const FinCategory<F>& c, const AddMorphism<F>& g, const AddMorphism<F>& f) {
  if (!(g.source == f.target)) throw PreconditionError("morphisms do not compose");
  auto out = zero_morphism(c, f.source, g.target);
  const F& fld = c.field();
  for (std::size_t k = 0; k < g.target.size(); ++k)
    for (std::size_t i = 0; i < f.source.size(); ++i) {
      auto& acc = out.block(k, i);
      for (std::size_t j = 0; j < f.target.size(); ++j) {
        auto prod = c.compose(f.source.summands[i], f.target.summands[j], g.target.summands[k],
                              g.block(k, j), f.block(j, i));
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] = fld.add(acc[t], prod[t]);
      }
    }
  return out;
}

template <class F>
AddMorphism<F> add(const FinCategory<F>& c, AddMorphism<F> a, const AddMorphism<F>& b) {
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    for (std::size_t t = 0; t < a.blocks[k].size(); ++t)
      a.blocks[k][t] = c.field().add(a.blocks[k][t], b.blocks[k][t]);
  return a;
}

template <class F>
AddMorphism<F> scaled(const FinCategory<F>& c, const typename F::Elem& s, AddMorphism<F> a) {
  for (auto& b : a.blocks)
    for (auto& e : b) e = c.field().mul(s, e);
  return a;
}

/// An object (A, e) of the idempotent completion of the additive hull.
template <class F>
struct KarObject {
  AddObject base;
  AddMorphism<F> idem;
  bool operator==(const KarObject&) const = default;
};

template <class F>
KarObject<F> kar_object(const FinCategory<F>& c, const AddObject& base) {
  return {base, identity_morphism(c, base)};
}

template <class F>
KarObject<F> kar_object(const FinCategory<F>& c, const AddObject& base, AddMorphism<F> e) {
  if (!(e.source == base) || !(e.target == base))
    throw PreconditionError("idempotent must be an endomorphism of the base object");
  if (!(compose(c, e, e) == e)) throw PreconditionError("endomorphism is not idempotent");
  return {base, std::move(e)};
}

template <class F>
std::size_t hom_dim(const FinCategory<F>& c, const AddObject& x, const AddObject& y) {
  std::size_t d = 0;
  for (auto tj : y.summands)
    for (auto si : x.summands) d += c.dim(si, tj);
  return d;
}

/// Basis of Hom between additive-hull objects: one elementary block entry at a time.
template <class F>
std::vector<AddMorphism<F>> hom_basis(const FinCategory<F>& c, const AddObject& x,
                                      const AddObject& y) {
  std::vector<AddMorphism<F>> out;
  const std::size_t d = hom_dim(c, x, y);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<typename F::Elem> v(d, c.field().zero());
    v[k] = c.field().one();
    out.push_back(unflatten(c, x, y, v));
  }
  return out;
}

/// Basis of e'·Hom(A, A')·e: the image of the projection f ↦ e' f e, reduced by rref.
template <class F>
std::vector<AddMorphism<F>> hom_basis(const FinCategory<F>& c, const KarObject<F>& x,
                                      const KarObject<F>& y) {
  auto full = hom_basis(c, x.base, y.base);
  const std::size_t d = full.size();
  Mat<F> images(c.field(), d, d);
  for (std::size_t k = 0; k < d; ++k) {
    auto v = compose(c, y.idem, compose(c, full[k], x.idem)).flatten();
    for (std::size_t t = 0; t < d; ++t) images(t, k) = v[t];
  }
  Mat<F> basis = image_basis(images);
  std::vector<AddMorphism<F>> out;
  for (std::size_t j = 0; j < basis.cols(); ++j)
    out.push_back(unflatten(c, x.base, y.base, basis.column(j)));
  return out;
}

template <class F>
struct Splitting {
  KarObject<F> through;
  AddMorphism<F> retraction;  // f: x -> through
  AddMorphism<F> section;     // g: through -> x
};

/// In the completion the idempotent e of (A, 1) splits through (A, e): f = g = e, e = g∘f and
/// f∘g = e = 1_(A,e). Verified exactly.
template <class F>
Splitting<F> split_idempotent(const FinCategory<F>& c, const KarObject<F>& x) {
  const auto& e = x.idem;
  if (!(compose(c, e, e) == e)) throw PreconditionError("endomorphism is not idempotent");
  Splitting<F> s{{x.base, e}, e, e};
  if (!(compose(c, s.section, s.retraction) == e) || !(compose(c, s.retraction, s.section) == e))
    throw VerificationError("idempotent splitting does not verify");
  return s;
}

template <class F>
bool is_zero_object(const KarObject<F>& x) {
  for (const auto& b : x.idem.blocks)
    for (const auto& v : b)
      if (v != typename F::Elem{}) return false;
  return true;
}

template <class F>
struct KarEndomorphisms {
  std::vector<AddMorphism<F>> basis;
  Coordinates<F> coords;
  MatrixAlgebra<F> algebra;  // left-regular matrices of the basis, unit = identity

  std::vector<typename F::Elem> coordinates(const AddMorphism<F>& m) const {
    return coords.of_unchecked(m.flatten());
  }
};

/// End(x) as an algebra of left-multiplication matrices on its own basis.
template <class F>
KarEndomorphisms<F> endomorphism_algebra(const FinCategory<F>& c, const KarObject<F>& x) {
  auto basis = hom_basis(c, x, x);
  const std::size_t d = basis.size();
  const std::size_t amb = hom_dim(c, x.base, x.base);
  Mat<F> cols(c.field(), amb, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto v = basis[j].flatten();
    for (std::size_t t = 0; t < amb; ++t) cols(t, j) = v[t];
  }
  Coordinates<F> coords(cols);
  std::vector<Mat<F>> left;
  for (std::size_t i = 0; i < d; ++i) {
    Mat<F> l(c.field(), d, d);
    for (std::size_t j = 0; j < d; ++j) {
      auto v = coords.of_unchecked(compose(c, basis[i], basis[j]).flatten());
      for (std::size_t t = 0; t < d; ++t) l(t, j) = v[t];
    }
    left.push_back(std::move(l));
  }
  MatrixAlgebra<F> alg(c.field(), d, left, Mat<F>::identity(c.field(), d));
  return {std::move(basis), std::move(coords), std::move(alg)};
}

/// Krull-Schmidt decomposition: pairwise orthogonal primitive idempotents of End(x) summing to
/// x.idem, returned as the summands (x.base, e_i). The certificates are re-checked here.
template <class F>
std::vector<KarObject<F>> decompose_object(const FinCategory<F>& c, const KarObject<F>& x) {
  if (is_zero_object(x)) return {};
  auto end = endomorphism_algebra(c, x);
  auto unit_coords = end.coordinates(x.idem);
  auto from_matrix = [&](const Mat<F>& l) {
    // l is left multiplication by some ε; applying it to the unit recovers ε
    auto v = (l * Mat<F>::column_vector(c.field(), unit_coords)).column(0);
    auto out = zero_morphism(c, x.base, x.base);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!c.field().is_zero(v[j])) out = add(c, out, scaled(c, v[j], end.basis[j]));
    return out;
  };
  std::vector<KarObject<F>> parts;
  auto sum = zero_morphism(c, x.base, x.base);
  for (const auto& l : end.algebra.primitive_idempotents()) {
    auto e = from_matrix(l);
    parts.push_back({x.base, e});
    sum = add(c, sum, e);
  }
  if (!(sum == x.idem)) throw VerificationError("primitive idempotents do not sum to the unit");
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j) {
      auto p = compose(c, parts[i].idem, parts[j].idem);
      if (i == j ? !(p == parts[i].idem) : !(p == zero_morphism(c, x.base, x.base)))
        throw VerificationError("idempotents are not orthogonal");
    }
  return parts;
}

template <class F>
bool is_invertible_endomorphism(const FinCategory<F>& c, const KarObject<F>& x,
                                const AddMorphism<F>& u) {
  auto end = endomorphism_algebra(c, x);
  return rank(end.algebra.left_regular(end.algebra.element(end.coordinates(u)))) == end.basis.size();
}

template <class F>
struct KarIsomorphism {
  AddMorphism<F> forward;   // x -> y
  AddMorphism<F> backward;  // y -> x
};

/// Mutually inverse morphisms between indecomposable objects x and y, or nullopt when they are
/// not isomorphic. Relies on End(x) being local: some product of basis morphisms is invertible
/// exactly when x ≅ y.
template <class F>
std::optional<KarIsomorphism<F>> isomorphism(const FinCategory<F>& c, const KarObject<F>& x,
                                             const KarObject<F>& y) {
  auto fs = hom_basis(c, x, y);
  auto gs = hom_basis(c, y, x);
  auto endx = endomorphism_algebra(c, x);
  const std::size_t d = endx.basis.size();
  for (const auto& f : fs)
    for (const auto& g : gs) {
      auto u = compose(c, g, f);
      Mat<F> lu = endx.algebra.left_regular(endx.algebra.element(endx.coordinates(u)));
      if (rank(lu) != d) continue;
      // u^{-1} = L_u^{-1} applied to the unit
      auto sol = solve(lu, Mat<F>::column_vector(c.field(), endx.coordinates(x.idem)));
      auto uinv = zero_morphism(c, x.base, x.base);
      for (std::size_t j = 0; j < d; ++j)
        if (!c.field().is_zero((*sol)(j, 0)))
          uinv = add(c, uinv, scaled(c, (*sol)(j, 0), endx.basis[j]));
      KarIsomorphism<F> iso{f, compose(c, uinv, g)};
      if (!(compose(c, iso.backward, iso.forward) == x.idem) ||
          !(compose(c, iso.forward, iso.backward) == y.idem))
        return std::nullopt;  // x or y was not indecomposable
      return iso;
    }
  return std::nullopt;
}

}  // namespace arcat
