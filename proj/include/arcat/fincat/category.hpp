#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/fincat/algebra.hpp"
#include "arcat/linalg/mat.hpp"
#include "arcat/quiver/quiver.hpp"

namespace arcat {

/// A Hom-finite k-category given by hom-space bases and structure constants.
///
/// For objects x, y, z the composite of the g-th basis element of Hom(y,z) with the f-th basis
/// element of Hom(x,y) has coordinates comp(x,y,z)[(g*dim(x,y) + f)*dim(x,z) + k].
///
/// Covers, transposes and AR sequences additionally need the category to be "split basic":
/// every End(x) is local with End(x)/rad = k and distinct objects are non-isomorphic. Then
/// rad(x,y) = Hom(x,y) for x != y and rad(x,x) is stored per object.
template <class F>
class FinCategory {
 public:
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  struct Radicals {
    std::vector<Mat<F>> per_object;  // columns: coordinates of a basis of rad End(x)
  };

  FinCategory(F field, std::string name, std::vector<std::string> objects,
              std::vector<std::vector<std::string>> labels, std::vector<Vec> comp,
              std::vector<Vec> units, std::optional<Radicals> radicals = std::nullopt)
      : f_(std::move(field)),
        name_(std::move(name)),
        objects_(std::move(objects)),
        labels_(std::move(labels)),
        comp_(std::move(comp)),
        units_(std::move(units)) {
    const std::size_t n = objects_.size();
    for (std::size_t i = 0; i < n; ++i)
      if (!index_.emplace(objects_[i], i).second)
        throw PreconditionError("duplicate object '" + objects_[i] + "'");
    if (labels_.size() != n * n || comp_.size() != n * n * n || units_.size() != n)
      throw PreconditionError("category tables have the wrong size");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (comp_[(x * n + y) * n + z].size() != dim(y, z) * dim(x, y) * dim(x, z))
            throw PreconditionError("composition table for (" + objects_[x] + "," + objects_[y] +
                                    "," + objects_[z] + ") has the wrong size");
    verify_laws();
    if (radicals) {
      radicals_ = std::move(radicals->per_object);
      split_basic_ = true;
    } else {
      compute_local_structure();
    }
  }

  const F& field() const { return f_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return objects_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& object(std::size_t i) const { return objects_[i]; }
  std::size_t index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw PreconditionError("unknown object '" + id + "' in " + name_);
    return it->second;
  }
  bool has_object(const std::string& id) const { return index_.count(id) > 0; }

  std::size_t dim(std::size_t x, std::size_t y) const { return labels_[x * size() + y].size(); }
  const std::vector<std::string>& labels(std::size_t x, std::size_t y) const {
    return labels_[x * size() + y];
  }
  const Vec& unit(std::size_t x) const { return units_[x]; }
  const Vec& comp_table(std::size_t x, std::size_t y, std::size_t z) const {
    return comp_[(x * size() + y) * size() + z];
  }

  Vec zero(std::size_t x, std::size_t y) const { return Vec(dim(x, y), f_.zero()); }
  Vec basis_vector(std::size_t x, std::size_t y, std::size_t i) const {
    Vec v = zero(x, y);
    v[i] = f_.one();
    return v;
  }

  /// g ∘ f for g in Hom(y,z), f in Hom(x,y), both as coordinate vectors.
  Vec compose(std::size_t x, std::size_t y, std::size_t z, const Vec& g, const Vec& f) const {
    const std::size_t dxy = dim(x, y), dxz = dim(x, z);
    const Vec& t = comp_table(x, y, z);
    Vec out(dxz, f_.zero());
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      if (f_.is_zero(g[gi])) continue;
      for (std::size_t fi = 0; fi < dxy; ++fi) {
        if (f_.is_zero(f[fi])) continue;
        auto c = f_.mul(g[gi], f[fi]);
        const Elem* row = &t[(gi * dxy + fi) * dxz];
        for (std::size_t k = 0; k < dxz; ++k)
          if (!f_.is_zero(row[k])) out[k] = f_.add(out[k], f_.mul(c, row[k]));
      }
    }
    return out;
  }

  bool split_basic() const { return split_basic_; }
  const std::string& local_structure_problem() const { return local_problem_; }
  void require_split_basic() const {
    if (!split_basic_)
      throw PreconditionError("category " + name_ + " is not split basic: " + local_problem_);
  }
  /// Coordinates (as columns) of a basis of rad End(x).
  const Mat<F>& radical(std::size_t x) const {
    require_split_basic();
    return radicals_[x];
  }
  /// Coordinates (as columns) of a basis of rad(x, y).
  Mat<F> radical(std::size_t x, std::size_t y) const {
    if (x == y) return radical(x);
    return Mat<F>::identity(f_, dim(x, y));
  }

  /// Cache slot used by opposite(CategoryPtr); holds no ownership.
  std::shared_ptr<const FinCategory> cached_opposite() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return opposite_cache_.lock();
  }
  void set_cached_opposite(const std::shared_ptr<const FinCategory>& op) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    opposite_cache_ = op;
  }

  bool operator==(const FinCategory& o) const {
    return f_ == o.f_ && objects_ == o.objects_ && labels_ == o.labels_ && comp_ == o.comp_ &&
           units_ == o.units_;
  }

 private:
  void verify_laws() const {
    const std::size_t n = size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t i = 0; i < dim(x, y); ++i) {
          Vec b = basis_vector(x, y, i);
          if (compose(x, y, y, unit(y), b) != b || compose(x, x, y, b, unit(x)) != b)
            throw VerificationError("unit law fails for " + labels(x, y)[i] + " in " + name_);
        }
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            for (std::size_t a = 0; a < dim(w, x); ++a)
              for (std::size_t b = 0; b < dim(x, y); ++b)
                for (std::size_t c = 0; c < dim(y, z); ++c) {
                  Vec va = basis_vector(w, x, a), vb = basis_vector(x, y, b),
                      vc = basis_vector(y, z, c);
                  if (compose(w, y, z, vc, compose(w, x, y, vb, va)) !=
                      compose(w, x, z, compose(x, y, z, vc, vb), va))
                    throw VerificationError("associativity fails in " + name_);
                }
  }

  void compute_local_structure() {
    const std::size_t n = size();
    try {
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t d = dim(x, x);
        std::vector<Mat<F>> left;
        for (std::size_t i = 0; i < d; ++i) {
          Mat<F> l(f_, d, d);
          for (std::size_t j = 0; j < d; ++j) {
            Vec c = compose(x, x, x, basis_vector(x, x, i), basis_vector(x, x, j));
            for (std::size_t k = 0; k < d; ++k) l(k, j) = c[k];
          }
          left.push_back(std::move(l));
        }
        MatrixAlgebra<F> end(f_, d, left, Mat<F>::identity(f_, d));
        auto rad = end.radical();
        if (d - rad.size() != 1) {
          local_problem_ = "End(" + objects_[x] + ")/rad has dimension " +
                           std::to_string(d - rad.size());
          return;
        }
        Mat<F> cols(f_, d, rad.size());
        for (std::size_t j = 0; j < rad.size(); ++j) {
          // a left multiplication matrix applied to the unit recovers the element
          auto v = (rad[j] * Mat<F>::column_vector(f_, unit(x))).column(0);
          for (std::size_t k = 0; k < d; ++k) cols(k, j) = v[k];
        }
        radicals_.push_back(std::move(cols));
      }
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (x == y) continue;
          for (std::size_t i = 0; i < dim(x, y); ++i)
            for (std::size_t j = 0; j < dim(y, x); ++j) {
              Vec gf = compose(x, y, x, basis_vector(y, x, j), basis_vector(x, y, i));
              if (!solve(radicals_[x], Mat<F>::column_vector(f_, gf))) {
                local_problem_ = "objects " + objects_[x] + " and " + objects_[y] + " are isomorphic";
                radicals_.clear();
                return;
              }
            }
        }
      split_basic_ = true;
    } catch (const FieldTooSmall& e) {
      radicals_.clear();
      local_problem_ = e.what();
    }
  }

  F f_;
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<Vec> comp_;
  std::vector<Vec> units_;
  std::map<std::string, std::size_t> index_;
  std::vector<Mat<F>> radicals_;
  bool split_basic_ = false;
  std::string local_problem_;
  mutable std::mutex cache_mutex_;
  mutable std::weak_ptr<const FinCategory> opposite_cache_;
};

template <class F>
using CategoryPtr = std::shared_ptr<const FinCategory<F>>;

template <class F>
bool same_category(const CategoryPtr<F>& a, const CategoryPtr<F>& b) {
  return a == b || (a && b && *a == *b);
}

/// kQ/I: objects are vertices, Hom(v,w) has the surviving paths v -> w as basis.
template <class F>
CategoryPtr<F> category_of(const F& field, const BoundQuiver& bq, std::string name = "kQ/I") {
  const auto& verts = bq.quiver().vertices();
  const std::size_t n = verts.size();
  std::vector<std::vector<Path>> paths(n * n);
  std::vector<std::vector<std::string>> labels(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    auto from = bq.paths_from(verts[x]);
    for (auto& p : from) paths[x * n + bq.quiver().vertex_index(p.target)].push_back(p);
  }
  for (std::size_t k = 0; k < n * n; ++k)
    for (const auto& p : paths[k]) labels[k].push_back(p.to_string());
  std::vector<std::vector<typename F::Elem>> comp(n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const auto& pxy = paths[x * n + y];
        const auto& pyz = paths[y * n + z];
        const auto& pxz = paths[x * n + z];
        auto& t = comp[(x * n + y) * n + z];
        t.assign(pyz.size() * pxy.size() * pxz.size(), field.zero());
        for (std::size_t g = 0; g < pyz.size(); ++g)
          for (std::size_t f = 0; f < pxy.size(); ++f) {
            Path c = Path::compose(pyz[g], pxy[f]);
            if (!bq.survives(c)) continue;
            auto it = std::find(pxz.begin(), pxz.end(), c);
            t[(g * pxy.size() + f) * pxz.size() + (it - pxz.begin())] = field.one();
          }
      }
  std::vector<std::vector<typename F::Elem>> units(n);
  typename FinCategory<F>::Radicals rad;
  for (std::size_t x = 0; x < n; ++x) {
    const auto& end = paths[x * n + x];
    units[x].assign(end.size(), field.zero());
    units[x][0] = field.one();  // the trivial path sorts first
    Mat<F> r(field, end.size(), end.size() - 1);
    for (std::size_t j = 1; j < end.size(); ++j) r(j, j - 1) = field.one();
    rad.per_object.push_back(std::move(r));
  }
  return std::make_shared<const FinCategory<F>>(field, std::move(name), verts, std::move(labels),
                                                std::move(comp), std::move(units), std::move(rad));
}

/// The one-object category with End = k.
template <class F>
CategoryPtr<F> ground_field_category(const F& field) {
  Quiver q({"*"}, {});
  return category_of(field, BoundQuiver(q, MonomialIdeal()), "k");
}

inline std::string opposite_name(const std::string& name) {
  const std::string suffix = "^op";
  if (name.size() > suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return name.substr(0, name.size() - suffix.size());
  return name + suffix;
}

/// The opposite category: Hom_op(x,y) = Hom(y,x) with the same basis labels.
/// opposite(opposite(c)) is structurally equal to c.
template <class F>
CategoryPtr<F> opposite(const FinCategory<F>& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<std::string>> labels(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) labels[x * n + y] = c.labels(y, x);
  std::vector<std::vector<typename F::Elem>> comp(n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        // g in Hom_op(y,z) = Hom(z,y), f in Hom_op(x,y) = Hom(y,x); g ∘op f = f ∘ g
        const auto& src = c.comp_table(z, y, x);
        const std::size_t dg = c.dim(z, y), df = c.dim(y, x), dk = c.dim(z, x);
        auto& t = comp[(x * n + y) * n + z];
        t.assign(dg * df * dk, c.field().zero());
        for (std::size_t g = 0; g < dg; ++g)
          for (std::size_t f = 0; f < df; ++f)
            for (std::size_t k = 0; k < dk; ++k) t[(g * df + f) * dk + k] = src[(f * dg + g) * dk + k];
      }
  std::vector<std::vector<typename F::Elem>> units;
  for (std::size_t x = 0; x < n; ++x) units.push_back(c.unit(x));
  std::optional<typename FinCategory<F>::Radicals> rad;
  if (c.split_basic()) {
    rad.emplace();
    for (std::size_t x = 0; x < n; ++x) rad->per_object.push_back(c.radical(x));
  }
  return std::make_shared<const FinCategory<F>>(c.field(), opposite_name(c.name()), c.objects(),
                                                std::move(labels), std::move(comp),
                                                std::move(units), std::move(rad));
}

/// Same as opposite(*c), but repeated calls (and opposite(opposite(c))) return the same pointer
/// while the result is alive.
template <class F>
CategoryPtr<F> opposite(const CategoryPtr<F>& c) {
  if (auto op = c->cached_opposite()) return op;
  auto op = opposite(*c);
  c->set_cached_opposite(op);
  op->set_cached_opposite(c);
  return op;
}

/// b ⊗ a: objects are pairs (B,A) in b-major order; Hom((B,A),(B',A')) = b(B,B') ⊗ a(A,A') with
/// basis pairs in Kronecker order.
template <class F>
CategoryPtr<F> tensor_product(const FinCategory<F>& b, const FinCategory<F>& a) {
  if (!(b.field() == a.field()))
    throw PreconditionError("tensor product of categories over different fields (" +
                            b.field().name() + ", " + a.field().name() + ")");
  const F& field = b.field();
  const std::size_t nb = b.size(), na = a.size(), n = nb * na;
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < na; ++j) objects.push_back("(" + b.object(i) + "," + a.object(j) + ")");
  auto bi = [&](std::size_t x) { return x / na; };
  auto ai = [&](std::size_t x) { return x % na; };
  std::vector<std::vector<std::string>> labels(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& lb : b.labels(bi(x), bi(y)))
        for (const auto& la : a.labels(ai(x), ai(y))) labels[x * n + y].push_back(lb + "⊗" + la);
  std::vector<std::vector<typename F::Elem>> comp(n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t dbxy = b.dim(bi(x), bi(y)), daxy = a.dim(ai(x), ai(y));
        const std::size_t dbyz = b.dim(bi(y), bi(z)), dayz = a.dim(ai(y), ai(z));
        const std::size_t dbxz = b.dim(bi(x), bi(z)), daxz = a.dim(ai(x), ai(z));
        const auto& tb = b.comp_table(bi(x), bi(y), bi(z));
        const auto& ta = a.comp_table(ai(x), ai(y), ai(z));
        const std::size_t dxy = dbxy * daxy, dyz = dbyz * dayz, dxz = dbxz * daxz;
        auto& t = comp[(x * n + y) * n + z];
        t.assign(dyz * dxy * dxz, field.zero());
        for (std::size_t g1 = 0; g1 < dbyz; ++g1)
          for (std::size_t f1 = 0; f1 < dbxy; ++f1) {
            const auto* rb = &tb[(g1 * dbxy + f1) * dbxz];
            for (std::size_t g2 = 0; g2 < dayz; ++g2)
              for (std::size_t f2 = 0; f2 < daxy; ++f2) {
                const auto* ra = &ta[(g2 * daxy + f2) * daxz];
                const std::size_t g = g1 * dayz + g2, f = f1 * daxy + f2;
                auto* out = &t[(g * dxy + f) * dxz];
                for (std::size_t k1 = 0; k1 < dbxz; ++k1) {
                  if (field.is_zero(rb[k1])) continue;
                  for (std::size_t k2 = 0; k2 < daxz; ++k2)
                    out[k1 * daxz + k2] = field.mul(rb[k1], ra[k2]);
                }
              }
          }
      }
  std::vector<std::vector<typename F::Elem>> units;
  for (std::size_t x = 0; x < n; ++x) {
    auto u = kron(Mat<F>::column_vector(field, b.unit(bi(x))),
                  Mat<F>::column_vector(field, a.unit(ai(x))));
    units.push_back(u.column(0));
  }
  std::optional<typename FinCategory<F>::Radicals> rad;
  if (b.split_basic() && a.split_basic()) {
    // rad(E_B ⊗ E_A) = rad E_B ⊗ E_A + E_B ⊗ rad E_A when both tops are k
    rad.emplace();
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t db = b.dim(bi(x), bi(x)), da = a.dim(ai(x), ai(x));
      Mat<F> span = hstack(kron(b.radical(bi(x)), Mat<F>::identity(field, da)),
                           kron(Mat<F>::identity(field, db), a.radical(ai(x))));
      rad->per_object.push_back(image_basis(span));
    }
  }
  return std::make_shared<const FinCategory<F>>(field, b.name() + "⊗" + a.name(),
                                                std::move(objects), std::move(labels),
                                                std::move(comp), std::move(units), std::move(rad));
}

}  // namespace arcat
