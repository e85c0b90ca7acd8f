#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/fincat/category.hpp"
#include "arcat/modcat/module.hpp"
#include "arcat/modcat/projective.hpp"
#include "arcat/quiver/quiver.hpp"

namespace arcat {

/// A representation of a bound quiver in mod A: a module over `coeff` at every vertex and a
/// module map along every arrow, with the monomial relations acting by zero.
template <class F>
struct QRep {
  BoundQuiver bq;
  CategoryPtr<F> coeff;
  std::vector<CModule<F>> vertex_modules;          // by vertex index
  std::map<std::string, ModuleMap<F>> arrow_maps;  // by arrow id

  const CModule<F>& at(const std::string& v) const { return vertex_modules[bq.quiver().vertex_index(v)]; }
  const ModuleMap<F>& arrow(const std::string& a) const { return arrow_maps.at(a); }

  /// R(p) for a path p (identity for a trivial path).
  ModuleMap<F> path_map(const Path& p) const {
    ModuleMap<F> out = identity_map(at(p.source));
    for (const auto& a : p.arrows) out = compose(arrow(a), out);
    return out;
  }

  std::size_t total_dim() const {
    std::size_t t = 0;
    for (const auto& m : vertex_modules) t += m.total_dim();
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }

  bool operator==(const QRep& o) const {
    return bq == o.bq && same_category(coeff, o.coeff) &&
           vertex_modules == o.vertex_modules && arrow_maps == o.arrow_maps;
  }
};

/// A representation with every part verified: maps natural, matching endpoints, relations zero.
template <class F>
QRep<F> make_qrep(BoundQuiver bq, CategoryPtr<F> coeff, std::vector<CModule<F>> modules,
                  std::map<std::string, ModuleMap<F>> arrows) {
  const auto& q = bq.quiver();
  if (modules.size() != q.vertices().size())
    throw PreconditionError("representation needs one module per vertex");
  for (const auto& m : modules)
    if (!same_category(m.cat(), coeff)) throw PreconditionError("vertex module over the wrong category");
  for (const auto& a : q.arrows()) {
    auto it = arrows.find(a.id);
    if (it == arrows.end()) throw PreconditionError("no map for arrow '" + a.id + "'");
    const auto& f = it->second;
    if (!(f.source == modules[q.vertex_index(a.source)]) || !(f.target == modules[q.vertex_index(a.target)]))
      throw PreconditionError("map for arrow '" + a.id + "' has the wrong endpoints");
    if (!is_natural(f)) throw VerificationError("map for arrow '" + a.id + "' is not natural");
  }
  if (arrows.size() != q.arrows().size()) throw PreconditionError("map given for an unknown arrow");
  QRep<F> r{std::move(bq), std::move(coeff), std::move(modules), std::move(arrows)};
  for (const auto& g : r.bq.ideal().generators())
    if (!r.path_map(g).is_zero())
      throw VerificationError("relation " + g.to_string() + " does not act by zero");
  return r;
}

template <class F>
QRep<F> zero_qrep(const BoundQuiver& bq, const CategoryPtr<F>& coeff) {
  std::vector<CModule<F>> mods(bq.quiver().vertices().size(), CModule<F>::zero(coeff));
  std::map<std::string, ModuleMap<F>> arrows;
  for (const auto& a : bq.quiver().arrows()) arrows.emplace(a.id, zero_map(mods[0], mods[0]));
  return make_qrep(bq, coeff, std::move(mods), std::move(arrows));
}

/// A morphism of representations: one module map per vertex.
template <class F>
struct RepMap {
  QRep<F> source;
  QRep<F> target;
  std::vector<ModuleMap<F>> components;

  bool is_natural() const {
    const auto& q = source.bq.quiver();
    for (const auto& a : q.arrows()) {
      const auto& s = components[q.vertex_index(a.source)];
      const auto& t = components[q.vertex_index(a.target)];
      if (!(compose(target.arrow(a.id), s) == compose(t, source.arrow(a.id)))) return false;
    }
    return true;
  }
  bool is_vertexwise_surjective() const {
    for (const auto& c : components)
      if (!is_surjective(c)) return false;
    return true;
  }
};

/// Hom(R, R') solved directly: coefficients over each Hom_A(R(v), R'(v)), constrained by
/// R'(a)∘φ_s = φ_t∘R(a) for every arrow.
template <class F>
std::vector<RepMap<F>> rep_hom_basis(const QRep<F>& r, const QRep<F>& s) {
  const auto& q = r.bq.quiver();
  const F& f = r.coeff->field();
  const std::size_t n = q.vertices().size();
  std::vector<HomSpace<F>> homs;
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    homs.push_back(hom_space(r.vertex_modules[v], s.vertex_modules[v]));
    offset[v + 1] = offset[v] + homs.back().dim();
  }
  Mat<F> sys(f, 0, offset[n]);
  for (const auto& a : q.arrows()) {
    const std::size_t vs = q.vertex_index(a.source), vt = q.vertex_index(a.target);
    const auto& from = r.vertex_modules[vs];
    const auto& to = s.vertex_modules[vt];
    std::size_t len = zero_map(from, to).flatten().size();
    Mat<F> block(f, len, offset[n]);
    for (std::size_t i = 0; i < homs[vs].dim(); ++i) {
      auto col = compose(s.arrow(a.id), homs[vs].basis[i]).flatten();
      for (std::size_t k = 0; k < len; ++k) block(k, offset[vs] + i) = f.add(block(k, offset[vs] + i), col[k]);
    }
    for (std::size_t j = 0; j < homs[vt].dim(); ++j) {
      auto col = compose(homs[vt].basis[j], r.arrow(a.id)).flatten();
      for (std::size_t k = 0; k < len; ++k) block(k, offset[vt] + j) = f.sub(block(k, offset[vt] + j), col[k]);
    }
    sys = vstack(sys, block);
  }
  Mat<F> ker = kernel_basis(sys);
  std::vector<RepMap<F>> out;
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    std::vector<ModuleMap<F>> comps;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<typename F::Elem> c;
      for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) c.push_back(ker(i, j));
      comps.push_back(homs[v].combine(c));
    }
    out.push_back({r, s, std::move(comps)});
  }
  return out;
}

/// The category (kQ/I)^op ⊗ A whose modules are representations of the bound quiver in mod A.
template <class F>
CategoryPtr<F> rep_tensor_category(const BoundQuiver& bq, const CategoryPtr<F>& coeff) {
  auto b = category_of(coeff->field(), bq);
  return tensor_product(*opposite(b), *coeff);
}

/// R as a module over T = (kQ/I)^op ⊗ A: M((v,x)) = R(v)(x), and for a path b: w -> v and
/// f ∈ A(x, y), M(b ⊗ f) = R(v)(f)∘R(b)_y.
template <class F>
CModule<F> phi(const QRep<F>& r, const CategoryPtr<F>& tensor) {
  const auto& verts = r.bq.quiver().vertices();
  const std::size_t nb = verts.size(), na = r.coeff->size(), n = nb * na;
  if (tensor->size() != n) throw PreconditionError("tensor category does not match the representation");
  const auto& a = *r.coeff;
  std::vector<std::size_t> dims(n);
  for (std::size_t v = 0; v < nb; ++v)
    for (std::size_t x = 0; x < na; ++x) dims[v * na + x] = r.vertex_modules[v].dim(x);
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t v = 0; v < nb; ++v)
    for (std::size_t w = 0; w < nb; ++w) {
      std::vector<ModuleMap<F>> along;
      for (const auto& p : enumerate_paths(r.bq, verts[w], verts[v])) along.push_back(r.path_map(p));
      for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < na; ++y) {
          auto& out = action[(v * na + x) * n + (w * na + y)];
          for (const auto& rb : along)
            for (std::size_t fi = 0; fi < a.dim(x, y); ++fi)
              out.push_back(r.vertex_modules[v].action(x, y, fi) * rb.at(y));
        }
    }
  return CModule<F>(tensor, std::move(dims), std::move(action));
}

template <class F>
CModule<F> phi(const QRep<F>& r) {
  return phi(r, rep_tensor_category(r.bq, r.coeff));
}

/// The representation of a module over T: R(v)(x) = M((v,x)), R(v)(f) = M(1_v ⊗ f) and
/// R(a)_x = M(a ⊗ 1_x).
template <class F>
QRep<F> psi(const CModule<F>& m, const BoundQuiver& bq, const CategoryPtr<F>& coeff) {
  const auto& q = bq.quiver();
  const auto& verts = q.vertices();
  const std::size_t nb = verts.size(), na = coeff->size(), n = nb * na;
  if (m.size() != n) throw PreconditionError("module does not live over the representation category");
  const auto& a = *coeff;
  const F& f = coeff->field();
  std::vector<CModule<F>> mods;
  for (std::size_t v = 0; v < nb; ++v) {
    std::vector<std::size_t> dims(na);
    for (std::size_t x = 0; x < na; ++x) dims[x] = m.dim(v * na + x);
    std::vector<std::vector<Mat<F>>> action(na * na);
    for (std::size_t x = 0; x < na; ++x)
      for (std::size_t y = 0; y < na; ++y)
        for (std::size_t fi = 0; fi < a.dim(x, y); ++fi)  // the trivial path has index 0
          action[x * na + y].push_back(m.action(v * na + x, v * na + y, fi));
    mods.emplace_back(coeff, std::move(dims), std::move(action));
  }
  std::map<std::string, ModuleMap<F>> arrows;
  for (const auto& ar : q.arrows()) {
    const std::size_t s = q.vertex_index(ar.source), t = q.vertex_index(ar.target);
    auto paths = enumerate_paths(bq, ar.source, ar.target);
    const std::size_t k = std::find(paths.begin(), paths.end(), Path::trivial(ar.source).then(ar)) - paths.begin();
    std::vector<Mat<F>> comps;
    for (std::size_t x = 0; x < na; ++x) {
      std::vector<typename F::Elem> e(paths.size(), f.zero());
      e[k] = f.one();
      auto coords = kron(Mat<F>::column_vector(f, e), Mat<F>::column_vector(f, a.unit(x))).column(0);
      comps.push_back(m.act(t * na + x, s * na + x, coords));
    }
    arrows.emplace(ar.id, ModuleMap<F>{mods[s], mods[t], std::move(comps)});
  }
  return make_qrep(bq, coeff, std::move(mods), std::move(arrows));
}

/// Ψ on morphisms: the component at v collects the components at the objects (v, x).
template <class F>
RepMap<F> psi_map(const ModuleMap<F>& f, const BoundQuiver& bq, const CategoryPtr<F>& coeff) {
  auto src = psi(f.source, bq, coeff);
  auto tgt = psi(f.target, bq, coeff);
  const std::size_t na = coeff->size();
  std::vector<ModuleMap<F>> comps;
  for (std::size_t v = 0; v < src.vertex_modules.size(); ++v) {
    std::vector<Mat<F>> c;
    for (std::size_t x = 0; x < na; ++x) c.push_back(f.at(v * na + x));
    comps.push_back(module_map(src.vertex_modules[v], tgt.vertex_modules[v], std::move(c)));
  }
  RepMap<F> out{std::move(src), std::move(tgt), std::move(comps)};
  if (!out.is_natural()) throw VerificationError("transported map is not a morphism of representations");
  return out;
}

/// Φ on morphisms.
template <class F>
ModuleMap<F> phi_map(const RepMap<F>& f, const CategoryPtr<F>& tensor) {
  const std::size_t na = f.source.coeff->size();
  std::vector<Mat<F>> comps;
  for (const auto& c : f.components)
    for (std::size_t x = 0; x < na; ++x) comps.push_back(c.at(x));
  return module_map(phi(f.source, tensor), phi(f.target, tensor), std::move(comps));
}

/// Composite of morphisms of representations.
template <class F>
RepMap<F> compose(const RepMap<F>& g, const RepMap<F>& f) {
  std::vector<ModuleMap<F>> comps;
  for (std::size_t v = 0; v < f.components.size(); ++v) comps.push_back(compose(g.components[v], f.components[v]));
  return {f.source, g.target, std::move(comps)};
}

/// Left adjoint of restriction to the left path space at v: R(w) = ⊕_{p: v -> w} M(p) in
/// canonical path order; R(a) has block M(p, ap) in position (ap, p) and zero elsewhere.
/// `m` is a representation of left_path_space(bq, v) (a quiver without relations).
template <class F>
QRep<F> t_star_v(const BoundQuiver& bq, const std::string& v, const QRep<F>& m) {
  const auto& q = bq.quiver();
  const auto& verts = q.vertices();
  const auto& cat = m.coeff;
  std::vector<DirectSum<F>> sums;
  std::vector<std::vector<Path>> paths;
  for (const auto& w : verts) {
    paths.push_back(enumerate_paths(bq, v, w));
    std::vector<CModule<F>> parts;
    for (const auto& p : paths.back()) parts.push_back(m.at(p.to_string()));
    sums.push_back(direct_sum(cat, parts));
  }
  std::vector<CModule<F>> mods;
  for (const auto& s : sums) mods.push_back(s.sum);
  std::map<std::string, ModuleMap<F>> arrows;
  for (const auto& a : q.arrows()) {
    const std::size_t s = q.vertex_index(a.source), t = q.vertex_index(a.target);
    ModuleMap<F> out = zero_map(mods[s], mods[t]);
    for (std::size_t pi = 0; pi < paths[s].size(); ++pi) {
      Path ap = paths[s][pi].then(a);
      auto it = std::find(paths[t].begin(), paths[t].end(), ap);
      if (it == paths[t].end()) continue;  // ap lies in the ideal
      const auto& block = m.arrow("(" + paths[s][pi].to_string() + "," + ap.to_string() + ")");
      out = out + compose(sums[t].inclusions[it - paths[t].begin()], compose(block, sums[s].projections[pi]));
    }
    arrows.emplace(a.id, std::move(out));
  }
  return make_qrep(bq, cat, std::move(mods), std::move(arrows));
}

/// The representation of the left path space at v with value p everywhere and identity arrows.
template <class F>
QRep<F> g_star_v(const BoundQuiver& bq, const std::string& v, const CModule<F>& p) {
  BoundQuiver space(left_path_space(bq, v), MonomialIdeal());
  const auto& q = space.quiver();
  std::vector<CModule<F>> mods(q.vertices().size(), p);
  std::map<std::string, ModuleMap<F>> arrows;
  for (const auto& a : q.arrows()) arrows.emplace(a.id, identity_map(p));
  return make_qrep(std::move(space), p.cat(), std::move(mods), std::move(arrows));
}

/// f*_v = t*_v ∘ g*_v: f*_v(P)(w) = P^{⊕ #paths v -> w}.
template <class F>
QRep<F> f_star_v(const BoundQuiver& bq, const std::string& v, const CModule<F>& p) {
  return t_star_v(bq, v, g_star_v(bq, v, p));
}

/// The inclusion P -> f*_v(P)(v) of the block at the trivial path.
template <class F>
ModuleMap<F> adjunction_unit(const std::string& v, const QRep<F>& fp, const CModule<F>& p) {
  const auto& target = fp.at(v);
  std::vector<Mat<F>> comps;
  for (std::size_t x = 0; x < p.size(); ++x) {
    Mat<F> c(p.field(), target.dim(x), p.dim(x));
    for (std::size_t k = 0; k < p.dim(x); ++k) c(k, k) = p.field().one();
    comps.push_back(std::move(c));
  }
  return module_map(p, target, std::move(comps));
}

/// The transpose of g: P -> R(v) under the adjunction: the map f*_v(P) -> R whose block at a
/// path p: v -> w is R(p)∘g.
template <class F>
RepMap<F> adjunct(const BoundQuiver& bq, const std::string& v, const QRep<F>& fp, const QRep<F>& r,
                  const ModuleMap<F>& g) {
  const auto& verts = bq.quiver().vertices();
  std::vector<ModuleMap<F>> comps;
  for (std::size_t w = 0; w < verts.size(); ++w) {
    std::vector<ModuleMap<F>> blocks;
    for (const auto& p : enumerate_paths(bq, v, verts[w])) blocks.push_back(compose(r.path_map(p), g));
    std::vector<CModule<F>> parts(blocks.size(), g.source);
    auto sum = direct_sum(g.source.cat(), parts);
    ModuleMap<F> c = from_sum(sum, blocks, r.vertex_modules[w]);
    comps.push_back({fp.vertex_modules[w], r.vertex_modules[w], std::move(c.components)});
  }
  RepMap<F> out{fp, r, std::move(comps)};
  if (!out.is_natural()) throw VerificationError("adjunct is not a morphism of representations");
  return out;
}

struct AdjunctionReport {
  std::size_t rep_side = 0;     // dim Hom_Rep(f*_v P, R)
  std::size_t module_side = 0;  // dim Hom_A(P, R(v))
  std::size_t restriction_rank = 0;
  bool triangle = false;
  bool passed() const {
    return rep_side == module_side && restriction_rank == rep_side && triangle;
  }
};

/// Hom_Rep(f*_v P, R) ≅ Hom_A(P, R(v)): both dimensions by independent solves, the rank of
/// φ ↦ φ_v∘η, and both triangle identities on bases.
template <class F>
AdjunctionReport check_adjunction(const BoundQuiver& bq, const std::string& v, const CModule<F>& p,
                                  const QRep<F>& r) {
  const std::size_t vi = bq.quiver().vertex_index(v);
  auto fp = f_star_v(bq, v, p);
  auto rep_basis = rep_hom_basis(fp, r);
  auto mod = hom_space(p, r.vertex_modules[vi]);
  auto eta = adjunction_unit(v, fp, p);
  AdjunctionReport rep{rep_basis.size(), mod.dim(), 0, true};
  const F& f = p.field();
  Mat<F> restrict_map(f, mod.dim(), rep_basis.size());
  for (std::size_t j = 0; j < rep_basis.size(); ++j) {
    const auto& phi_map = rep_basis[j];
    auto c = mod.coordinates(compose(phi_map.components[vi], eta));
    for (std::size_t i = 0; i < mod.dim(); ++i) restrict_map(i, j) = c[i];
    auto back = adjunct(bq, v, fp, r, compose(phi_map.components[vi], eta));
    for (std::size_t w = 0; w < back.components.size(); ++w)
      if (!(back.components[w] == phi_map.components[w])) rep.triangle = false;
  }
  rep.restriction_rank = rank(restrict_map);
  for (const auto& g : mod.basis) {
    auto up = adjunct(bq, v, fp, r, g);
    if (!(compose(up.components[vi], eta) == g)) rep.triangle = false;
  }
  return rep;
}

template <class F>
QRep<F> rep_direct_sum(const BoundQuiver& bq, const CategoryPtr<F>& coeff, const std::vector<QRep<F>>& parts) {
  if (parts.empty()) return zero_qrep(bq, coeff);
  const auto& q = bq.quiver();
  const std::size_t n = q.vertices().size();
  std::vector<DirectSum<F>> sums;
  std::vector<CModule<F>> mods;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<CModule<F>> at;
    for (const auto& p : parts) at.push_back(p.vertex_modules[v]);
    sums.push_back(direct_sum(coeff, at));
    mods.push_back(sums.back().sum);
  }
  std::map<std::string, ModuleMap<F>> arrows;
  for (const auto& a : q.arrows()) {
    const std::size_t s = q.vertex_index(a.source), t = q.vertex_index(a.target);
    ModuleMap<F> out = zero_map(mods[s], mods[t]);
    for (std::size_t k = 0; k < parts.size(); ++k)
      out = out + compose(sums[t].inclusions[k], compose(parts[k].arrow(a.id), sums[s].projections[k]));
    arrows.emplace(a.id, std::move(out));
  }
  return make_qrep(bq, coeff, std::move(mods), std::move(arrows));
}

template <class F>
struct RepCover {
  std::vector<ProjectiveCover<F>> vertex_covers;  // P_v -> R(v) in mod A
  QRep<F> projective;                             // ⊕_v f*_v(P_v)
  RepMap<F> map;
};

/// An epimorphism ⊕_v f*_v(P_v) -> R assembled from projective covers P_v -> R(v) and their
/// adjuncts; surjectivity is checked by rank at every vertex and object.
template <class F>
RepCover<F> induced_projective_cover(const QRep<F>& r) {
  const auto& bq = r.bq;
  const auto& verts = bq.quiver().vertices();
  const std::size_t n = verts.size();
  std::vector<ProjectiveCover<F>> covers;
  std::vector<QRep<F>> parts;
  std::vector<RepMap<F>> maps;
  for (std::size_t v = 0; v < n; ++v) {
    covers.push_back(projective_cover(r.vertex_modules[v]));
    const auto& pv = covers.back().projective.module();
    parts.push_back(f_star_v(bq, verts[v], pv));
    maps.push_back(adjunct(bq, verts[v], parts.back(), r, covers.back().map));
  }
  auto sum = rep_direct_sum(bq, r.coeff, parts);
  std::vector<ModuleMap<F>> comps;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<CModule<F>> at;
    for (const auto& p : parts) at.push_back(p.vertex_modules[w]);
    auto ds = direct_sum(r.coeff, at);
    std::vector<ModuleMap<F>> row;
    for (const auto& m : maps) row.push_back(m.components[w]);
    auto c = from_sum(ds, row, r.vertex_modules[w]);
    comps.push_back({sum.vertex_modules[w], r.vertex_modules[w], std::move(c.components)});
  }
  RepMap<F> map{sum, r, std::move(comps)};
  if (!map.is_natural()) throw VerificationError("assembled cover is not a morphism of representations");
  if (!map.is_vertexwise_surjective()) throw VerificationError("assembled cover is not surjective");
  return {std::move(covers), std::move(sum), std::move(map)};
}

}  // namespace arcat
