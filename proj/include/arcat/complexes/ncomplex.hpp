#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/modcat/module.hpp"
#include "arcat/modcat/projective.hpp"
#include "arcat/quiver/quiver.hpp"
#include "arcat/repcat/qrep.hpp"

namespace arcat {

enum class ComplexShape { Interval, Window, Cyclic };

/// The index set and nilpotency of a family of complexes. Interval and window shapes are
/// n-complexes on a bounded range of degrees; the cyclic shape has degrees in Z/order with
/// d∘d = 0 (the nilpotency field is not used there).
struct NComplexSpec {
  std::size_t n = 2;
  ComplexShape shape = ComplexShape::Interval;
  long lo = 1;
  long hi = 1;

  static NComplexSpec interval(std::size_t n, std::size_t m) { return checked({n, ComplexShape::Interval, 1, static_cast<long>(m)}); }
  static NComplexSpec window(std::size_t n, long lo, long hi) { return checked({n, ComplexShape::Window, lo, hi}); }
  static NComplexSpec cyclic(std::size_t order) { return checked({2, ComplexShape::Cyclic, 0, static_cast<long>(order) - 1}); }

  bool cyclic_shape() const { return shape == ComplexShape::Cyclic; }
  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  std::size_t relation_length() const { return cyclic_shape() ? 2 : n; }
  /// Vertex index of a degree; nullopt outside a bounded range.
  std::optional<std::size_t> index(long degree) const {
    if (cyclic_shape()) {
      long s = static_cast<long>(size());
      return static_cast<std::size_t>(((degree % s) + s) % s);
    }
    if (degree < lo || degree > hi) return std::nullopt;
    return static_cast<std::size_t>(degree - lo);
  }
  long degree(std::size_t index) const { return lo + static_cast<long>(index); }
  std::string vertex(long degree) const { return std::to_string(this->degree(*index(degree))); }
  std::string arrow(long degree) const { return "a" + vertex(degree); }
  /// Whether degree i has an outgoing differential.
  bool has_differential(long degree) const { return cyclic_shape() || (degree >= lo && degree < hi); }

  std::string describe() const {
    switch (shape) {
      case ComplexShape::Interval: return std::to_string(n) + "-complexes on degrees 1.." + std::to_string(hi);
      case ComplexShape::Window:
        return std::to_string(n) + "-complexes on degrees " + std::to_string(lo) + ".." + std::to_string(hi);
      case ComplexShape::Cyclic: return std::to_string(size()) + "-cyclic complexes";
    }
    return "";
  }

  bool operator==(const NComplexSpec&) const = default;

 private:
  static NComplexSpec checked(NComplexSpec s) {
    if (s.hi < s.lo) throw PreconditionError("empty range of degrees");
    if (!s.cyclic_shape() && s.n < 2) throw PreconditionError("n-complexes need n >= 2");
    return s;
  }
};

/// The bound quiver whose representations are the complexes of `spec`: arrows a<i>: i -> i+1,
/// with all paths of length n (length 2 in the cyclic case) as relations.
inline BoundQuiver build_category(const NComplexSpec& spec) {
  std::vector<std::string> verts;
  for (std::size_t i = 0; i < spec.size(); ++i) verts.push_back(std::to_string(spec.degree(i)));
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long d = spec.degree(i);
    if (spec.has_differential(d)) arrows.push_back({spec.arrow(d), spec.vertex(d), spec.vertex(d + 1)});
  }
  Quiver q(verts, arrows);
  std::vector<Path> gens;
  const std::size_t len = spec.relation_length();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long d = spec.degree(i);
    bool fits = true;
    std::vector<std::string> written;
    for (std::size_t k = 0; k < len && fits; ++k) {
      fits = spec.has_differential(d + static_cast<long>(k));
      if (fits) written.insert(written.begin(), spec.arrow(d + static_cast<long>(k)));
    }
    if (fits) gens.push_back(path_from_written(q, written));
  }
  auto adm = is_admissible(q, MonomialIdeal(gens));
  if (adm.status != AdmissibilityStatus::Admissible)
    throw PreconditionError("complex quiver is not admissible: " + adm.detail);
  return BoundQuiver(q, MonomialIdeal(gens));
}

template <class F>
struct NComplex {
  NComplexSpec spec;
  QRep<F> rep;

  const CModule<F>& component(long degree) const { return rep.vertex_modules[*spec.index(degree)]; }
  const ModuleMap<F>& differential(long degree) const { return rep.arrow(spec.arrow(degree)); }
  const CategoryPtr<F>& coeff() const { return rep.coeff; }
  std::size_t total_dim() const { return rep.total_dim(); }
  bool operator==(const NComplex& o) const { return spec == o.spec && rep == o.rep; }
};

/// A complex from its components (in degree order) and differentials d^i: X^i -> X^{i+1}.
/// The relation check names the first window of degrees on which it fails.
template <class F>
NComplex<F> make_complex(const NComplexSpec& spec, const CategoryPtr<F>& coeff,
                         std::vector<CModule<F>> components, std::vector<ModuleMap<F>> differentials) {
  auto bq = build_category(spec);
  if (components.size() != spec.size()) throw PreconditionError("complex needs one component per degree");
  std::map<std::string, ModuleMap<F>> arrows;
  std::size_t k = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long d = spec.degree(i);
    if (!spec.has_differential(d)) continue;
    if (k >= differentials.size()) throw PreconditionError("missing differential in degree " + std::to_string(d));
    arrows.emplace(spec.arrow(d), differentials[k++]);
  }
  if (k != differentials.size()) throw PreconditionError("too many differentials for " + spec.describe());
  const std::size_t len = spec.relation_length();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long d = spec.degree(i);
    std::optional<ModuleMap<F>> comp;
    bool fits = true;
    for (std::size_t t = 0; t < len && fits; ++t) {
      long e = d + static_cast<long>(t);
      fits = spec.has_differential(e);
      if (!fits) break;
      const auto& m = arrows.at(spec.arrow(e));
      comp = comp ? compose(m, *comp) : m;
    }
    if (fits && !comp->is_zero())
      throw VerificationError("composite of " + std::to_string(len) + " differentials from degree " +
                              std::to_string(d) + " to " + std::to_string(d + static_cast<long>(len)) +
                              " is not zero");
  }
  return {spec, make_qrep(bq, coeff, std::move(components), std::move(arrows))};
}

template <class F>
NComplex<F> zero_complex(const NComplexSpec& spec, const CategoryPtr<F>& coeff) {
  return {spec, zero_qrep(build_category(spec), coeff)};
}

/// The stalk complex with M in one degree.
template <class F>
NComplex<F> stalk(const NComplexSpec& spec, long degree, const CModule<F>& m) {
  auto bq = build_category(spec);
  auto zero = CModule<F>::zero(m.cat());
  std::vector<CModule<F>> comps(spec.size(), zero);
  comps[*spec.index(degree)] = m;
  std::map<std::string, ModuleMap<F>> arrows;
  for (const auto& a : bq.quiver().arrows()) {
    const auto& s = comps[bq.quiver().vertex_index(a.source)];
    const auto& t = comps[bq.quiver().vertex_index(a.target)];
    arrows.emplace(a.id, zero_map(s, t));
  }
  return {spec, make_qrep(bq, m.cat(), std::move(comps), std::move(arrows))};
}

template <class F>
CModule<F> to_module(const NComplex<F>& x, const CategoryPtr<F>& tensor) {
  return phi(x.rep, tensor);
}

template <class F>
CModule<F> to_module(const NComplex<F>& x) {
  return phi(x.rep);
}

template <class F>
NComplex<F> from_module(const NComplexSpec& spec, const CModule<F>& m, const CategoryPtr<F>& coeff) {
  return {spec, psi(m, build_category(spec), coeff)};
}

/// J_j(M): M in degrees j..j+n-1 joined by identities (cut off at the top of a bounded range);
/// in the cyclic case M in degrees j, j+1 with d^j = 1, or M ⊕ M with d = [[0,0],[1,0]] when
/// the order is 1.
template <class F>
NComplex<F> interval_J(const NComplexSpec& spec, long j, const CModule<F>& m) {
  if (!spec.index(j)) throw PreconditionError("degree " + std::to_string(j) + " is outside " + spec.describe());
  const auto& cat = m.cat();
  auto zero = CModule<F>::zero(cat);
  std::vector<CModule<F>> comps(spec.size(), zero);
  std::vector<ModuleMap<F>> diffs;
  if (spec.cyclic_shape() && spec.size() == 1) {
    auto sum = direct_sum(cat, {m, m});
    comps[0] = sum.sum;
    diffs.push_back(compose(sum.inclusions[1], sum.projections[0]));
    return make_complex(spec, cat, std::move(comps), std::move(diffs));
  }
  const long top = spec.cyclic_shape() ? j + 1 : std::min(j + static_cast<long>(spec.n) - 1, spec.hi);
  for (long d = j; d <= top; ++d) comps[*spec.index(d)] = m;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long d = spec.degree(i);
    if (!spec.has_differential(d)) continue;
    const auto& s = comps[i];
    const auto& t = comps[*spec.index(d + 1)];
    bool inside = spec.cyclic_shape() ? d == spec.degree(*spec.index(j)) : (d >= j && d < top);
    diffs.push_back(inside ? identity_map(m) : zero_map(s, t));
  }
  return make_complex(spec, cat, std::move(comps), std::move(diffs));
}

/// J_j applied to a module map.
template <class F>
RepMap<F> interval_J_map(const NComplexSpec& spec, long j, const ModuleMap<F>& f) {
  auto s = interval_J(spec, j, f.source);
  auto t = interval_J(spec, j, f.target);
  std::vector<ModuleMap<F>> comps;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& a = s.rep.vertex_modules[i];
    const auto& b = t.rep.vertex_modules[i];
    if (a.is_zero()) {
      comps.push_back(zero_map(a, b));
    } else if (spec.cyclic_shape() && spec.size() == 1) {
      auto ds = direct_sum(f.source.cat(), {f.source, f.source});
      auto dt = direct_sum(f.target.cat(), {f.target, f.target});
      auto c = compose(dt.inclusions[0], compose(f, ds.projections[0])) +
               compose(dt.inclusions[1], compose(f, ds.projections[1]));
      comps.push_back(c);
    } else {
      comps.push_back(f);
    }
  }
  RepMap<F> out{s.rep, t.rep, std::move(comps)};
  if (!out.is_natural()) throw VerificationError("J_j of a map is not a chain map");
  return out;
}

/// The composite d^{i-1}∘...∘d^j: X^j -> X^i (i ≥ j; identity when i = j).
template <class F>
ModuleMap<F> differential_power(const NComplex<F>& x, long j, long i) {
  ModuleMap<F> out = identity_map(x.component(j));
  for (long d = j; d < i; ++d) out = compose(x.differential(d), out);
  return out;
}

template <class F>
NComplex<F> complex_direct_sum(const NComplexSpec& spec, const CategoryPtr<F>& coeff,
                               const std::vector<NComplex<F>>& parts) {
  std::vector<QRep<F>> reps;
  for (const auto& p : parts) reps.push_back(p.rep);
  return {spec, rep_direct_sum(build_category(spec), coeff, reps)};
}

template <class F>
struct CoilEpi {
  std::vector<long> degrees;      // j for each summand J_j(Z^j)
  NComplex<F> source;             // ⊕_j J_j(Z^j)
  RepMap<F> map;                  // source -> Z
};

/// p: ⊕_j J_j(Z^j) -> Z, the summand at j mapping degree i by d^{i-1}∘...∘d^j (by (1, d) on
/// M ⊕ M for cyclic order 1). Verified to be a chain map, surjective in every degree.
template <class F>
CoilEpi<F> coil_epi(const NComplex<F>& z) {
  const auto& spec = z.spec;
  const auto& cat = z.coeff();
  std::vector<long> degrees;
  std::vector<NComplex<F>> parts;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long j = spec.degree(i);
    degrees.push_back(j);
    parts.push_back(interval_J(spec, j, z.component(j)));
  }
  auto src = complex_direct_sum(spec, cat, parts);
  std::vector<ModuleMap<F>> comps;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long deg = spec.degree(i);
    std::vector<CModule<F>> at;
    for (const auto& p : parts) at.push_back(p.rep.vertex_modules[i]);
    auto ds = direct_sum(cat, at);
    std::vector<ModuleMap<F>> row;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const long j = degrees[k];
      const auto& piece = parts[k].rep.vertex_modules[i];
      if (piece.is_zero()) {
        row.push_back(zero_map(piece, z.component(deg)));
      } else if (spec.cyclic_shape() && spec.size() == 1) {
        auto pair = direct_sum(cat, {z.component(j), z.component(j)});
        row.push_back(compose(identity_map(z.component(j)), pair.projections[0]) +
                      compose(z.differential(j), pair.projections[1]));
      } else if (spec.cyclic_shape()) {
        row.push_back(deg == j ? identity_map(piece) : z.differential(j));
      } else {
        row.push_back(differential_power(z, j, deg));
      }
    }
    auto c = from_sum(ds, row, z.component(deg));
    comps.push_back({src.rep.vertex_modules[i], z.component(deg), std::move(c.components)});
  }
  RepMap<F> map{src.rep, z.rep, std::move(comps)};
  if (!map.is_natural()) throw VerificationError("coil map is not a chain map");
  if (!map.is_vertexwise_surjective()) throw VerificationError("coil map is not surjective in every degree");
  return {std::move(degrees), std::move(src), std::move(map)};
}

/// A null-homotopy s^i: Z'^i -> Z^{i-n+1} with l^i = Σ_k d^{(n-1-k)} s^{i+k} d'^{(k)}
/// (cyclic: l^i = d^{i-1} s^i + s^{i+1} d'^i).
template <class F>
struct Homotopy {
  std::vector<std::optional<ModuleMap<F>>> maps;  // by degree index; nullopt when the target is outside
};

namespace detail {

/// The chain map Σ_k d^{(n-1-k)} s^{i+k} d'^{(k)} for a given family s.
template <class F>
std::vector<ModuleMap<F>> homotopy_image(const NComplex<F>& src, const NComplex<F>& tgt, const Homotopy<F>& s) {
  const auto& spec = src.spec;
  const long span = static_cast<long>(spec.relation_length()) - 1;
  std::vector<ModuleMap<F>> out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long deg = spec.degree(i);
    ModuleMap<F> acc = zero_map(src.component(deg), tgt.component(deg));
    for (long k = 0; k <= span; ++k) {
      long from = deg + k;  // s^{deg+k}: Z'^{deg+k} -> Z^{deg+k-span}
      auto idx = spec.index(from);
      if (!idx || !s.maps[*idx]) continue;
      bool ok = true;
      for (long e = deg; e < from && ok; ++e) ok = spec.has_differential(e);
      for (long e = from - span; e < deg && ok; ++e) ok = spec.has_differential(e);
      if (!ok) continue;
      ModuleMap<F> term = identity_map(src.component(deg));
      for (long e = deg; e < from; ++e) term = compose(src.differential(e), term);
      term = compose(*s.maps[*idx], term);
      for (long e = from - span; e < deg; ++e) term = compose(tgt.differential(e), term);
      acc = acc + term;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace detail

template <class F>
struct NullHomotopyFactorization {
  Homotopy<F> homotopy;
  RepMap<F> lift;  // l' with p∘l' = l
};

/// For a null-homotopic chain map l: Z' -> Z, a homotopy witness found by linear solve and a
/// lift l' through the coil map p, verified exactly.
template <class F>
NullHomotopyFactorization<F> factor_null_homotopy(const NComplex<F>& src, const NComplex<F>& tgt,
                                                  const RepMap<F>& l, const CoilEpi<F>& p) {
  const auto& spec = src.spec;
  const F& f = src.coeff()->field();
  const long span = static_cast<long>(spec.relation_length()) - 1;
  // unknowns: coefficients of s^i over a basis of Hom(Z'^i, Z^{i-span})
  std::vector<std::optional<HomSpace<F>>> homs;
  std::vector<std::size_t> offset{0};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto t = spec.index(spec.degree(i) - span);
    if (t) homs.push_back(hom_space(src.rep.vertex_modules[i], tgt.rep.vertex_modules[*t]));
    else homs.push_back(std::nullopt);
    offset.push_back(offset.back() + (homs.back() ? homs.back()->dim() : 0));
  }
  auto unit = [&](std::size_t which) {
    Homotopy<F> h;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      if (!homs[i]) {
        h.maps.push_back(std::nullopt);
        continue;
      }
      std::vector<typename F::Elem> c(homs[i]->dim(), f.zero());
      if (which >= offset[i] && which < offset[i + 1]) c[which - offset[i]] = f.one();
      h.maps.push_back(homs[i]->combine(c));
    }
    return h;
  };
  auto flatten = [](const std::vector<ModuleMap<F>>& maps) {
    std::vector<typename F::Elem> out;
    for (const auto& m : maps) {
      auto v = m.flatten();
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  };
  auto target = flatten(l.components);
  Mat<F> sys(f, target.size(), offset.back());
  for (std::size_t u = 0; u < offset.back(); ++u) {
    auto col = flatten(detail::homotopy_image(src, tgt, unit(u)));
    for (std::size_t r = 0; r < col.size(); ++r) sys(r, u) = col[r];
  }
  auto sol = solve(sys, Mat<F>::column_vector(f, target));
  if (!sol) throw PreconditionError("the chain map is not null-homotopic");
  Homotopy<F> h;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!homs[i]) {
      h.maps.push_back(std::nullopt);
      continue;
    }
    std::vector<typename F::Elem> c;
    for (std::size_t u = offset[i]; u < offset[i + 1]; ++u) c.push_back((*sol)(u, 0));
    h.maps.push_back(homs[i]->combine(c));
  }
  if (flatten(detail::homotopy_image(src, tgt, h)) != target)
    throw VerificationError("homotopy does not reproduce the chain map");
  // lift through p by a linear solve over chain maps Z' -> ⊕ J_j(Z^j)
  auto basis = rep_hom_basis(src.rep, p.source.rep);
  Mat<F> lift_sys(f, target.size(), basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    auto col = flatten(compose(p.map, basis[b]).components);
    for (std::size_t r = 0; r < col.size(); ++r) lift_sys(r, b) = col[r];
  }
  auto coeffs = solve(lift_sys, Mat<F>::column_vector(f, target));
  if (!coeffs) throw VerificationError("null-homotopic map does not factor through the coil map");
  std::vector<ModuleMap<F>> comps;
  for (std::size_t i = 0; i < spec.size(); ++i) comps.push_back(zero_map(src.rep.vertex_modules[i], p.source.rep.vertex_modules[i]));
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t i = 0; i < spec.size(); ++i)
      if (!f.is_zero((*coeffs)(b, 0))) comps[i] = comps[i] + scale((*coeffs)(b, 0), basis[b].components[i]);
  RepMap<F> lift{src.rep, p.source.rep, std::move(comps)};
  if (!lift.is_natural() || flatten(compose(p.map, lift).components) != target)
    throw VerificationError("lift through the coil map has a nonzero residual");
  return {std::move(h), std::move(lift)};
}

/// τ_{≥floor}: components below `floor` replaced by 0 (bounded shapes only).
template <class F>
NComplex<F> hard_truncate(const NComplex<F>& x, long floor) {
  const auto& spec = x.spec;
  if (spec.cyclic_shape()) throw PreconditionError("hard truncation needs a bounded range of degrees");
  auto zero = CModule<F>::zero(x.coeff());
  std::vector<CModule<F>> comps;
  std::vector<ModuleMap<F>> diffs;
  for (std::size_t i = 0; i < spec.size(); ++i)
    comps.push_back(spec.degree(i) < floor ? zero : x.rep.vertex_modules[i]);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long d = spec.degree(i);
    if (!spec.has_differential(d)) continue;
    diffs.push_back(d < floor ? zero_map(comps[i], comps[i + 1]) : x.differential(d));
  }
  return make_complex(spec, x.coeff(), std::move(comps), std::move(diffs));
}

template <class F>
struct Approximation {
  NComplex<F> source;           // Y
  RepMap<F> map;                // g: Y -> Z
  std::size_t generic_summands = 0;
  std::vector<long> coil_degrees;
  std::vector<std::pair<std::string, bool>> certificates;  // per test object: Hom(G,Y) -> Hom(G,Z) onto
  bool certified() const {
    for (const auto& c : certificates)
      if (!c.second) return false;
    return true;
  }
};

template <class F>
bool postcomposition_onto(const RepMap<F>& g, const QRep<F>& test) {
  auto into_z = rep_hom_basis(test, g.target);
  if (into_z.empty()) return true;
  auto into_y = rep_hom_basis(test, g.source);
  const F& f = g.source.coeff->field();
  auto flatten = [](const RepMap<F>& m) {
    std::vector<typename F::Elem> out;
    for (const auto& c : m.components) {
      auto v = c.flatten();
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  };
  const std::size_t len = flatten(into_z[0]).size();
  Mat<F> img(f, len, into_y.size());
  for (std::size_t j = 0; j < into_y.size(); ++j) {
    auto col = flatten(compose(g, into_y[j]));
    for (std::size_t r = 0; r < len; ++r) img(r, j) = col[r];
  }
  Mat<F> all(f, len, into_z.size());
  for (std::size_t j = 0; j < into_z.size(); ++j) {
    auto col = flatten(into_z[j]);
    for (std::size_t r = 0; r < len; ++r) all(r, j) = col[r];
  }
  return rank(img) == into_z.size() && rank(hstack(img, all)) == into_z.size();
}

/// g = (q, r): Y = ⊕_G G^{dim Hom(G,Z)} ⊕ ⊕_j J_j(P_j) -> Z, with q the evaluation on a basis of
/// each Hom(G, Z) and r = p∘p' from projective covers P_j -> Z^j and the coil map p.
/// Certificates: Hom(T, Y) -> Hom(T, Z) is onto for every generator and every coil summand T.
template <class F>
Approximation<F> right_approximation(const NComplex<F>& z, const std::vector<NComplex<F>>& generators) {
  const auto& spec = z.spec;
  const auto& cat = z.coeff();
  std::vector<NComplex<F>> parts;
  std::vector<RepMap<F>> legs;
  for (const auto& g : generators)
    for (auto& h : rep_hom_basis(g.rep, z.rep)) {
      parts.push_back(g);
      legs.push_back(std::move(h));
    }
  const std::size_t generic = parts.size();
  auto p = coil_epi(z);
  std::vector<long> coil_degrees;
  std::vector<NComplex<F>> coil_parts;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long j = spec.degree(i);
    const auto& zj = z.component(j);
    if (zj.is_zero()) continue;
    auto cover = projective_cover(zj);
    auto jp = interval_J(spec, j, cover.projective.module());
    // r restricted to J_j(P_j): J_j(cover) followed by the coil summand at j
    auto jmap = interval_J_map(spec, j, cover.map);
    std::vector<ModuleMap<F>> comps;
    for (std::size_t v = 0; v < spec.size(); ++v) {
      std::vector<CModule<F>> at;
      for (std::size_t k = 0; k < spec.size(); ++k)
        at.push_back(interval_J(spec, spec.degree(k), z.component(spec.degree(k))).rep.vertex_modules[v]);
      auto ds = direct_sum(cat, at);
      comps.push_back(compose(p.map.components[v], compose(ds.inclusions[i], jmap.components[v])));
    }
    coil_degrees.push_back(j);
    coil_parts.push_back(jp);
    parts.push_back(jp);
    legs.push_back({jp.rep, z.rep, std::move(comps)});
  }
  auto y = complex_direct_sum(spec, cat, parts);
  std::vector<ModuleMap<F>> comps;
  for (std::size_t v = 0; v < spec.size(); ++v) {
    std::vector<CModule<F>> at;
    for (const auto& part : parts) at.push_back(part.rep.vertex_modules[v]);
    auto ds = direct_sum(cat, at);
    std::vector<ModuleMap<F>> row;
    for (const auto& leg : legs) row.push_back(leg.components[v]);
    auto c = from_sum(ds, row, z.rep.vertex_modules[v]);
    comps.push_back({y.rep.vertex_modules[v], z.rep.vertex_modules[v], std::move(c.components)});
  }
  RepMap<F> g{y.rep, z.rep, std::move(comps)};
  if (!g.is_natural()) throw VerificationError("approximation map is not a chain map");
  Approximation<F> out{y, g, generic, coil_degrees, {}};
  for (std::size_t k = 0; k < generators.size(); ++k)
    out.certificates.emplace_back("generator " + std::to_string(k), postcomposition_onto(g, generators[k].rep));
  for (std::size_t k = 0; k < coil_parts.size(); ++k)
    out.certificates.emplace_back("J_" + std::to_string(coil_degrees[k]) + "(P)",
                                  postcomposition_onto(g, coil_parts[k].rep));
  return out;
}

template <class F>
struct StalkStep {
  long degree;
  CModule<F> module;
  bool from_kernel;  // a stalk of the kernel subcomplex, otherwise of the quotient
};

template <class F>
struct StalkFiltration {
  std::vector<StalkStep<F>> steps;  // bottom to top
  bool projective_stalks = false;
};

/// For a cyclic complex (d∘d = 0), K = ⊕_i ker d^i is a subcomplex with zero differential, and
/// X/K has zero differential since im d^i ⊆ ker d^{i+1}; both split into stalks. Returns the
/// stalk subquotients, or nullopt ("unknown") when more than `step_cap` are needed.
template <class F>
std::optional<StalkFiltration<F>> stalk_filtration_certificate(const NComplex<F>& x, std::size_t step_cap = 64) {
  const auto& spec = x.spec;
  if (!spec.cyclic_shape()) throw PreconditionError("stalk filtrations are searched for cyclic complexes");
  StalkFiltration<F> out;
  std::vector<ModuleMap<F>> kernels;
  for (std::size_t i = 0; i < spec.size(); ++i) kernels.push_back(kernel(x.differential(spec.degree(i))));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    // the kernel subcomplex has zero differential
    if (!compose(x.differential(spec.degree(i)), kernels[i]).is_zero())
      throw VerificationError("kernel inclusion is not killed by the differential");
    if (!kernels[i].source.is_zero()) out.steps.push_back({spec.degree(i), kernels[i].source, true});
  }
  for (std::size_t i = 0; i < spec.size(); ++i) {
    long d = spec.degree(i);
    auto q = cokernel(kernels[i]);
    // the induced differential X^{i-1}/K -> X^i/K vanishes
    std::size_t prev = *spec.index(d - 1);
    if (!compose(q, x.differential(spec.degree(prev))).is_zero())
      throw VerificationError("quotient differential does not vanish");
    if (!q.target.is_zero()) out.steps.push_back({d, q.target, false});
  }
  if (out.steps.size() > step_cap) return std::nullopt;
  out.projective_stalks = true;
  for (const auto& s : out.steps) out.projective_stalks = out.projective_stalks && is_projective(s.module);
  return out;
}

}  // namespace arcat
