#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/fincat/category.hpp"
#include "arcat/linalg/mat.hpp"
#include "arcat/linalg/subspace.hpp"

namespace arcat {

/// A contravariant functor C -> mod k. For a basis element b of Hom(x, y) the action matrix
/// M(b) maps M(y) to M(x) and has shape dims(x) x dims(y). Functoriality
/// M(g∘f) = M(f)·M(g) and M(1) = I are verified at construction.
template <class F>
class CModule {
 public:
  using Elem = typename F::Elem;

  CModule() = default;
  CModule(CategoryPtr<F> cat, std::vector<std::size_t> dims,
          std::vector<std::vector<Mat<F>>> action, bool verify = true)
      : cat_(std::move(cat)), dims_(std::move(dims)), action_(std::move(action)) {
    const std::size_t n = cat_->size();
    if (dims_.size() != n) throw PreconditionError("module needs one dimension per object");
    if (action_.size() != n * n) throw PreconditionError("module action table has the wrong size");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (action_[x * n + y].size() != cat_->dim(x, y))
          throw PreconditionError("module action needs one matrix per basis morphism");
        for (const auto& m : action_[x * n + y])
          if (m.rows() != dims_[x] || m.cols() != dims_[y])
            throw PreconditionError("action matrix for " + cat_->object(x) + " <- " +
                                    cat_->object(y) + " has the wrong shape");
      }
    if (verify) verify_functoriality();
  }

  /// The zero module.
  static CModule zero(CategoryPtr<F> cat) {
    const std::size_t n = cat->size();
    std::vector<std::vector<Mat<F>>> action(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        action[x * n + y].assign(cat->dim(x, y), Mat<F>(cat->field(), 0, 0));
    return CModule(cat, std::vector<std::size_t>(n, 0), std::move(action), false);
  }

  const CategoryPtr<F>& cat() const { return cat_; }
  const F& field() const { return cat_->field(); }
  std::size_t size() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t x) const { return dims_[x]; }
  std::size_t total_dim() const {
    std::size_t t = 0;
    for (auto d : dims_) t += d;
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }

  const Mat<F>& action(std::size_t x, std::size_t y, std::size_t i) const {
    return action_[x * size() + y][i];
  }
  const std::vector<Mat<F>>& actions(std::size_t x, std::size_t y) const {
    return action_[x * size() + y];
  }
  /// M(h) for h ∈ Hom(x, y) given by coordinates.
  Mat<F> act(std::size_t x, std::size_t y, const std::vector<Elem>& h) const {
    Mat<F> out(field(), dims_[x], dims_[y]);
    for (std::size_t i = 0; i < h.size(); ++i)
      if (!field().is_zero(h[i])) out = out + scale(h[i], action(x, y, i));
    return out;
  }

  std::string dim_vector() const {
    std::string s = "(";
    for (std::size_t i = 0; i < dims_.size(); ++i) s += (i ? "," : "") + std::to_string(dims_[i]);
    return s + ")";
  }

  /// Structural equality: same category, dimensions and action matrices.
  bool operator==(const CModule& o) const {
    return same_category(cat_, o.cat_) && dims_ == o.dims_ && action_ == o.action_;
  }

 private:
  void verify_functoriality() const {
    const auto& c = *cat_;
    const std::size_t n = size();
    for (std::size_t x = 0; x < n; ++x)
      if (act(x, x, c.unit(x)) != Mat<F>::identity(field(), dims_[x]))
        throw VerificationError("module does not send 1_" + c.object(x) + " to the identity");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (c.dim(x, y) == 0) continue;
        for (std::size_t z = 0; z < n; ++z) {
          if (c.dim(y, z) == 0) continue;
          for (std::size_t fi = 0; fi < c.dim(x, y); ++fi)
            for (std::size_t gi = 0; gi < c.dim(y, z); ++gi) {
              auto gf = c.compose(x, y, z, c.basis_vector(y, z, gi), c.basis_vector(x, y, fi));
              if (act(x, z, gf) != action(x, y, fi) * action(y, z, gi))
                throw VerificationError("module is not functorial on " + c.labels(y, z)[gi] +
                                        " ∘ " + c.labels(x, y)[fi]);
            }
        }
      }
  }

  CategoryPtr<F> cat_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Mat<F>>> action_;
};

template <class F>
void require_same_category(const CModule<F>& a, const CModule<F>& b) {
  if (!same_category(a.cat(), b.cat()))
    throw PreconditionError("modules live over different categories (" + a.cat()->name() + ", " +
                            b.cat()->name() + ")");
}

/// A natural transformation: components[x] maps source(x) to target(x).
template <class F>
struct ModuleMap {
  CModule<F> source;
  CModule<F> target;
  std::vector<Mat<F>> components;

  const Mat<F>& at(std::size_t x) const { return components[x]; }
  bool is_zero() const {
    for (const auto& c : components)
      if (!c.is_zero()) return false;
    return true;
  }
  std::vector<typename F::Elem> flatten() const {
    std::vector<typename F::Elem> v;
    for (const auto& c : components) v.insert(v.end(), c.data().begin(), c.data().end());
    return v;
  }
  bool operator==(const ModuleMap& o) const {
    return source == o.source && target == o.target && components == o.components;
  }
};

template <class F>
bool is_natural(const ModuleMap<F>& f) {
  const auto& c = *f.source.cat();
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < c.dim(x, y); ++i)
        if (f.target.action(x, y, i) * f.at(y) != f.at(x) * f.source.action(x, y, i)) return false;
  return true;
}

/// Builds a map and verifies naturality.
template <class F>
ModuleMap<F> module_map(const CModule<F>& s, const CModule<F>& t, std::vector<Mat<F>> comps) {
  require_same_category(s, t);
  if (comps.size() != s.size()) throw PreconditionError("module map needs one component per object");
  for (std::size_t x = 0; x < s.size(); ++x)
    if (comps[x].rows() != t.dim(x) || comps[x].cols() != s.dim(x))
      throw PreconditionError("module map component at " + s.cat()->object(x) +
                              " has the wrong shape");
  ModuleMap<F> f{s, t, std::move(comps)};
  if (!is_natural(f)) throw VerificationError("module map is not natural");
  return f;
}

template <class F>
ModuleMap<F> zero_map(const CModule<F>& s, const CModule<F>& t) {
  std::vector<Mat<F>> comps;
  for (std::size_t x = 0; x < s.size(); ++x) comps.emplace_back(s.field(), t.dim(x), s.dim(x));
  return {s, t, std::move(comps)};
}

template <class F>
ModuleMap<F> identity_map(const CModule<F>& m) {
  std::vector<Mat<F>> comps;
  for (std::size_t x = 0; x < m.size(); ++x) comps.push_back(Mat<F>::identity(m.field(), m.dim(x)));
  return {m, m, std::move(comps)};
}

/// g ∘ f.
template <class F>
ModuleMap<F> compose(const ModuleMap<F>& g, const ModuleMap<F>& f) {
  if (g.source.dims() != f.target.dims()) throw PreconditionError("module maps do not compose");
  std::vector<Mat<F>> comps;
  for (std::size_t x = 0; x < f.components.size(); ++x) comps.push_back(g.at(x) * f.at(x));
  return {f.source, g.target, std::move(comps)};
}

template <class F>
ModuleMap<F> operator+(const ModuleMap<F>& a, const ModuleMap<F>& b) {
  ModuleMap<F> out = a;
  for (std::size_t x = 0; x < a.components.size(); ++x) out.components[x] = a.at(x) + b.at(x);
  return out;
}

template <class F>
ModuleMap<F> scale(const typename F::Elem& s, ModuleMap<F> a) {
  for (auto& c : a.components) c = scale(s, c);
  return a;
}

template <class F>
std::size_t map_rank(const ModuleMap<F>& f) {
  std::size_t r = 0;
  for (const auto& c : f.components) r += rank(c);
  return r;
}
template <class F>
bool is_surjective(const ModuleMap<F>& f) {
  return map_rank(f) == f.target.total_dim();
}
template <class F>
bool is_injective(const ModuleMap<F>& f) {
  return map_rank(f) == f.source.total_dim();
}
template <class F>
bool is_isomorphism(const ModuleMap<F>& f) {
  return is_injective(f) && is_surjective(f);
}

/// Componentwise inverse of an isomorphism.
template <class F>
ModuleMap<F> inverse_map(const ModuleMap<F>& f) {
  std::vector<Mat<F>> comps;
  for (const auto& c : f.components) {
    auto inv = inverse(c);
    if (!inv) throw PreconditionError("module map is not invertible");
    comps.push_back(std::move(*inv));
  }
  return {f.target, f.source, std::move(comps)};
}

/// The submodule spanned at each object by the columns of basis[x] (assumed closed under the
/// action, which is verified), with its inclusion.
template <class F>
ModuleMap<F> submodule(const CModule<F>& m, const std::vector<Mat<F>>& spanning) {
  const auto& c = *m.cat();
  const std::size_t n = m.size();
  std::vector<Mat<F>> basis;
  std::vector<Coordinates<F>> coords;
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < n; ++x) {
    basis.push_back(spanning[x].cols() ? image_basis(spanning[x]) : Mat<F>(m.field(), m.dim(x), 0));
    coords.emplace_back(basis.back());
    dims.push_back(basis.back().cols());
  }
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < c.dim(x, y); ++i) {
        Mat<F> img = m.action(x, y, i) * basis[y];
        Mat<F> a(m.field(), dims[x], dims[y]);
        for (std::size_t j = 0; j < dims[y]; ++j) {
          auto co = coords[x].of(img.column(j));
          if (!co) throw VerificationError("subspace is not a submodule");
          for (std::size_t r = 0; r < dims[x]; ++r) a(r, j) = (*co)[r];
        }
        action[x * n + y].push_back(std::move(a));
      }
  CModule<F> sub(m.cat(), std::move(dims), std::move(action));
  return {sub, m, std::move(basis)};
}

/// The quotient by the submodule spanned by `spanning`, with its projection.
template <class F>
ModuleMap<F> quotient(const CModule<F>& m, const std::vector<Mat<F>>& spanning) {
  const auto& c = *m.cat();
  const std::size_t n = m.size();
  std::vector<Mat<F>> proj, sect;
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < n; ++x) {
    Mat<F> p = spanning[x].cols() ? cokernel_projection(spanning[x])
                                  : Mat<F>::identity(m.field(), m.dim(x));
    dims.push_back(p.rows());
    sect.push_back(*solve(p, Mat<F>::identity(m.field(), p.rows())));
    proj.push_back(std::move(p));
  }
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < c.dim(x, y); ++i)
        action[x * n + y].push_back(proj[x] * m.action(x, y, i) * sect[y]);
  CModule<F> q(m.cat(), std::move(dims), std::move(action));
  ModuleMap<F> out{m, q, std::move(proj)};
  if (!is_natural(out)) throw VerificationError("subspace is not a submodule");
  return out;
}

template <class F>
ModuleMap<F> kernel(const ModuleMap<F>& f) {
  std::vector<Mat<F>> spans;
  for (const auto& c : f.components) spans.push_back(kernel_basis(c));
  return submodule(f.source, spans);
}

template <class F>
ModuleMap<F> cokernel(const ModuleMap<F>& f) {
  std::vector<Mat<F>> spans;
  for (const auto& c : f.components) spans.push_back(c);
  return quotient(f.target, spans);
}

template <class F>
ModuleMap<F> image(const ModuleMap<F>& f) {
  std::vector<Mat<F>> spans;
  for (const auto& c : f.components) spans.push_back(c);
  return submodule(f.target, spans);
}

/// A direct sum with its structure maps.
template <class F>
struct DirectSum {
  CModule<F> sum;
  std::vector<ModuleMap<F>> inclusions;
  std::vector<ModuleMap<F>> projections;
};

template <class F>
DirectSum<F> direct_sum(const CategoryPtr<F>& cat, const std::vector<CModule<F>>& parts) {
  const auto& c = *cat;
  const std::size_t n = c.size();
  const F& f = c.field();
  std::vector<std::size_t> dims(n, 0);
  for (const auto& p : parts) {
    if (!same_category(p.cat(), cat)) throw PreconditionError("direct sum over different categories");
    for (std::size_t x = 0; x < n; ++x) dims[x] += p.dim(x);
  }
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < c.dim(x, y); ++i) {
        Mat<F> a(f, dims[x], dims[y]);
        std::size_t rx = 0, ry = 0;
        for (const auto& p : parts) {
          a.set_block(rx, ry, p.action(x, y, i));
          rx += p.dim(x);
          ry += p.dim(y);
        }
        action[x * n + y].push_back(std::move(a));
      }
  CModule<F> sum(cat, dims, std::move(action), false);
  DirectSum<F> out{sum, {}, {}};
  std::vector<std::size_t> offset(n, 0);
  for (const auto& p : parts) {
    std::vector<Mat<F>> inc, pr;
    for (std::size_t x = 0; x < n; ++x) {
      Mat<F> i(f, dims[x], p.dim(x));
      for (std::size_t k = 0; k < p.dim(x); ++k) i(offset[x] + k, k) = f.one();
      pr.push_back(transpose(i));
      inc.push_back(std::move(i));
      offset[x] += p.dim(x);
    }
    out.inclusions.push_back({p, sum, std::move(inc)});
    out.projections.push_back({sum, p, std::move(pr)});
  }
  return out;
}

/// The map X⊕... -> Y given by a row of maps out of each summand.
template <class F>
ModuleMap<F> from_sum(const DirectSum<F>& s, const std::vector<ModuleMap<F>>& maps,
                      const CModule<F>& target) {
  ModuleMap<F> out = zero_map(s.sum, target);
  for (std::size_t k = 0; k < maps.size(); ++k) out = out + compose(maps[k], s.projections[k]);
  return out;
}

/// The map X -> ⊕... given by a column of maps into each summand.
template <class F>
ModuleMap<F> to_sum(const DirectSum<F>& s, const std::vector<ModuleMap<F>>& maps,
                    const CModule<F>& source) {
  ModuleMap<F> out = zero_map(source, s.sum);
  for (std::size_t k = 0; k < maps.size(); ++k) out = out + compose(s.inclusions[k], maps[k]);
  return out;
}

/// A basis of Hom(M, N) with coordinates.
template <class F>
struct HomSpace {
  CModule<F> source;
  CModule<F> target;
  std::vector<ModuleMap<F>> basis;
  Coordinates<F> coords;

  std::size_t dim() const { return basis.size(); }
  std::vector<typename F::Elem> coordinates(const ModuleMap<F>& f) const {
    return coords.of_unchecked(f.flatten());
  }
  std::optional<std::vector<typename F::Elem>> try_coordinates(const ModuleMap<F>& f) const {
    return coords.of(f.flatten());
  }
  ModuleMap<F> combine(const std::vector<typename F::Elem>& c) const {
    ModuleMap<F> out = zero_map(source, target);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!source.field().is_zero(c[i])) out = out + scale(c[i], basis[i]);
    return out;
  }
};

/// Hom(M, N) as the kernel of the naturality system N(b)·φ_y − φ_x·M(b) = 0 over all basis
/// morphisms b: x -> y. Unknowns are the entries of all components, row-major, object by object.
template <class F>
HomSpace<F> hom_space(const CModule<F>& m, const CModule<F>& nmod) {
  require_same_category(m, nmod);
  const auto& c = *m.cat();
  const F& f = m.field();
  const std::size_t n = c.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) offset[x + 1] = offset[x] + nmod.dim(x) * m.dim(x);
  const std::size_t unknowns = offset[n];
  std::size_t rows = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y || c.dim(x, x) > 1) rows += c.dim(x, y) * nmod.dim(x) * m.dim(y);
  Mat<F> sys(f, rows, unknowns);
  std::size_t r = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < c.dim(x, y); ++i) {
        if (x == y && c.dim(x, x) == 1) continue;  // only the unit: no constraint
        const Mat<F>& nb = nmod.action(x, y, i);  // N(y) -> N(x)
        const Mat<F>& mb = m.action(x, y, i);     // M(y) -> M(x)
        // entry (a, b) of N(b)φ_y − φ_x M(b), a < dimN(x), b < dimM(y)
        for (std::size_t a = 0; a < nmod.dim(x); ++a)
          for (std::size_t b = 0; b < m.dim(y); ++b, ++r) {
            for (std::size_t k = 0; k < nmod.dim(y); ++k)
              if (!f.is_zero(nb(a, k)))
                sys(r, offset[y] + k * m.dim(y) + b) = f.add(sys(r, offset[y] + k * m.dim(y) + b), nb(a, k));
            for (std::size_t k = 0; k < m.dim(x); ++k)
              if (!f.is_zero(mb(k, b)))
                sys(r, offset[x] + a * m.dim(x) + k) = f.sub(sys(r, offset[x] + a * m.dim(x) + k), mb(k, b));
          }
      }
  Mat<F> ker = kernel_basis(sys);
  HomSpace<F> out{m, nmod, {}, Coordinates<F>(ker)};
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    std::vector<Mat<F>> comps;
    for (std::size_t x = 0; x < n; ++x) {
      Mat<F> cx(f, nmod.dim(x), m.dim(x));
      for (std::size_t t = 0; t < cx.data().size(); ++t) cx.data()[t] = ker(offset[x] + t, j);
      comps.push_back(std::move(cx));
    }
    out.basis.push_back({m, nmod, std::move(comps)});
  }
  return out;
}

/// The representable module C(−, x): dims(w) = dim Hom(w, x), action by precomposition.
template <class F>
CModule<F> yoneda_projective(const CategoryPtr<F>& cat, std::size_t x) {
  const auto& c = *cat;
  const std::size_t n = c.size();
  std::vector<std::size_t> dims;
  for (std::size_t w = 0; w < n; ++w) dims.push_back(c.dim(w, x));
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v) {
      const auto& t = c.comp_table(w, v, x);  // h ∈ Hom(v,x), b ∈ Hom(w,v) -> h∘b ∈ Hom(w,x)
      const std::size_t db = c.dim(w, v), dh = c.dim(v, x), dk = c.dim(w, x);
      for (std::size_t b = 0; b < db; ++b) {
        Mat<F> a(c.field(), dk, dh);
        for (std::size_t h = 0; h < dh; ++h)
          for (std::size_t k = 0; k < dk; ++k) a(k, h) = t[(h * db + b) * dk + k];
        action[w * n + v].push_back(std::move(a));
      }
    }
  return CModule<F>(cat, std::move(dims), std::move(action), false);
}

/// Yoneda: the map C(−, x) -> M sending 1_x to the vector v ∈ M(x).
template <class F>
ModuleMap<F> yoneda_map(const CModule<F>& px, std::size_t x, const CModule<F>& m,
                        const std::vector<typename F::Elem>& v) {
  const auto& c = *m.cat();
  std::vector<Mat<F>> comps;
  Mat<F> col = Mat<F>::column_vector(m.field(), v);
  for (std::size_t w = 0; w < c.size(); ++w) {
    Mat<F> a(m.field(), m.dim(w), c.dim(w, x));
    for (std::size_t h = 0; h < c.dim(w, x); ++h) {
      Mat<F> img = m.action(w, x, h) * col;
      for (std::size_t k = 0; k < m.dim(w); ++k) a(k, h) = img(k, 0);
    }
    comps.push_back(std::move(a));
  }
  return {px, m, std::move(comps)};
}

/// The simple top of C(−, x): k at x, radical morphisms act by zero.
template <class F>
CModule<F> simple_module(const CategoryPtr<F>& cat, std::size_t x) {
  const auto& c = *cat;
  const std::size_t n = c.size();
  const F& f = c.field();
  Mat<F> span = hstack(Mat<F>::column_vector(f, c.unit(x)), c.radical(x));
  std::vector<std::size_t> dims(n, 0);
  dims[x] = 1;
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < c.dim(w, v); ++i) {
        Mat<F> a(f, dims[w], dims[v]);
        if (w == x && v == x) a(0, 0) = (*solve(span, Mat<F>::column_vector(f, c.basis_vector(x, x, i))))(0, 0);
        action[w * n + v].push_back(std::move(a));
      }
  return CModule<F>(cat, std::move(dims), std::move(action));
}

}  // namespace arcat
