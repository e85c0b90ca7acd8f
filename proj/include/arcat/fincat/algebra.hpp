#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/linalg/mat.hpp"
#include "arcat/linalg/poly.hpp"
#include "arcat/linalg/subspace.hpp"

namespace arcat {

/// A finite-dimensional semisimple algebra given by structure constants:
/// table[(i*dim + j)*dim + k] is the coefficient of b_k in b_i*b_j.
template <class F>
class SemisimpleAlgebra {
 public:
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  SemisimpleAlgebra(F field, std::size_t dim, std::vector<Elem> table, Vec unit)
      : f_(std::move(field)), dim_(dim), table_(std::move(table)), unit_(std::move(unit)) {}

  const F& field() const { return f_; }
  std::size_t dim() const { return dim_; }
  const Vec& unit() const { return unit_; }

  Vec basis(std::size_t i) const {
    Vec v(dim_, f_.zero());
    v[i] = f_.one();
    return v;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec c(dim_, f_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
      if (f_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (f_.is_zero(b[j])) continue;
        auto ab = f_.mul(a[i], b[j]);
        const Elem* row = &table_[(i * dim_ + j) * dim_];
        for (std::size_t k = 0; k < dim_; ++k)
          if (!f_.is_zero(row[k])) c[k] = f_.add(c[k], f_.mul(ab, row[k]));
      }
    }
    return c;
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec c(dim_);
    for (std::size_t k = 0; k < dim_; ++k) c[k] = f_.add(a[k], b[k]);
    return c;
  }
  Vec scaled(const Elem& s, const Vec& a) const {
    Vec c(dim_);
    for (std::size_t k = 0; k < dim_; ++k) c[k] = f_.mul(s, a[k]);
    return c;
  }

  Vec power(Vec a, std::uint64_t e) const {
    Vec r = unit_;
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (!f_.equal(table_[(i * dim_ + j) * dim_ + k], table_[(j * dim_ + i) * dim_ + k]))
            return false;
    return true;
  }

  /// Monic minimal polynomial, lowest coefficient first.
  Vec minimal_polynomial(const Vec& a) const {
    std::vector<Vec> powers{unit_};
    while (true) {
      Vec next = mul(powers.back(), a);
      Mat<F> span(f_, dim_, powers.size());
      for (std::size_t j = 0; j < powers.size(); ++j)
        for (std::size_t i = 0; i < dim_; ++i) span(i, j) = powers[j][i];
      auto c = solve(span, Mat<F>::column_vector(f_, next));
      if (c) {
        Vec mu(powers.size() + 1, f_.zero());
        for (std::size_t j = 0; j < powers.size(); ++j) mu[j] = f_.neg((*c)(j, 0));
        mu.back() = f_.one();
        return mu;
      }
      powers.push_back(std::move(next));
    }
  }

  Vec evaluate(const Vec& poly, const Vec& a) const {
    Vec r(dim_, f_.zero());
    for (std::size_t i = poly.size(); i-- > 0;) r = add(mul(r, a), scaled(poly[i], unit_));
    return r;
  }

  /// Division-algebra test. Over F_p a finite division algebra is a field, and a commutative
  /// semisimple algebra is a field iff its Frobenius-fixed subalgebra is one-dimensional.
  /// Over Q only the one-dimensional case is certified.
  bool is_division() const {
    if (dim_ == 1) return true;
    if (f_.characteristic() == 0) return false;
    if (!is_commutative()) return false;
    Mat<F> frob(f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Vec bp = power(basis(j), f_.characteristic());
      for (std::size_t i = 0; i < dim_; ++i) frob(i, j) = bp[i];
    }
    return kernel_basis(frob - Mat<F>::identity(f_, dim_)).cols() == 1;
  }

  /// A left identity of the right ideal zS; for a zero divisor z this is an idempotent
  /// different from 0 and 1.
  std::optional<Vec> left_identity_of_right_ideal(const Vec& z) const {
    Mat<F> lz(f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Vec c = mul(z, basis(j));
      for (std::size_t i = 0; i < dim_; ++i) lz(i, j) = c[i];
    }
    Mat<F> w = image_basis(lz);
    std::size_t r = w.cols();
    if (r == 0) return std::nullopt;
    Mat<F> sys(f_, dim_ * r, r), rhs(f_, dim_ * r, 1);
    for (std::size_t i = 0; i < r; ++i) {
      Vec wi = w.column(i);
      for (std::size_t k = 0; k < r; ++k) {
        Vec prod = mul(w.column(k), wi);
        for (std::size_t t = 0; t < dim_; ++t) sys(i * dim_ + t, k) = prod[t];
      }
      for (std::size_t t = 0; t < dim_; ++t) rhs(i * dim_ + t, 0) = wi[t];
    }
    auto c = solve(sys, rhs);
    if (!c) return std::nullopt;
    return (w * *c).column(0);
  }

  /// A nontrivial idempotent, searched through zero divisors f(x) where f is a proper factor
  /// of the minimal polynomial of x. Deterministic for a fixed algebra.
  std::optional<Vec> nontrivial_idempotent() const {
    std::mt19937_64 rng(0x5eed1dea);
    std::vector<Vec> candidates;
    for (std::size_t i = 0; i < dim_; ++i) candidates.push_back(basis(i));
    for (std::size_t i = 0; i + 1 < dim_; ++i) candidates.push_back(add(basis(i), basis(i + 1)));
    const std::size_t random_attempts = 200;
    for (std::size_t t = 0; t < candidates.size() + random_attempts; ++t) {
      Vec x;
      if (t < candidates.size()) {
        x = candidates[t];
      } else {
        x.assign(dim_, f_.zero());
        for (auto& c : x) c = f_.from_int(static_cast<long long>(rng() % 97) - 48);
      }
      Vec mu = minimal_polynomial(x);
      if (mu.size() <= 2) continue;
      auto g = proper_factor(f_, mu, rng);
      if (!g) continue;
      Vec z = evaluate(*g, x);
      auto e = left_identity_of_right_ideal(z);
      if (!e) continue;
      if (mul(*e, *e) != *e || *e == unit_ || *e == Vec(dim_, f_.zero())) continue;
      return e;
    }
    return std::nullopt;
  }

 private:
  F f_;
  std::size_t dim_;
  std::vector<Elem> table_;
  Vec unit_;
};

/// A subalgebra of n x n matrices with its own unit (an idempotent, not necessarily I_n).
/// Elements are handled as matrices; a basis gives coordinates.
template <class F>
class MatrixAlgebra {
 public:
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  /// Spanning set must be closed under products and contain `unit` in its span.
  MatrixAlgebra(const F& field, std::size_t n, const std::vector<Mat<F>>& spanning, Mat<F> unit)
      : f_(field), n_(n), unit_(std::move(unit)) {
    Mat<F> flat(f_, n * n, spanning.size());
    for (std::size_t j = 0; j < spanning.size(); ++j)
      for (std::size_t k = 0; k < n * n; ++k) flat(k, j) = spanning[j].data()[k];
    Mat<F> b = image_basis(flat);
    coords_ = Coordinates<F>(b);
    for (std::size_t j = 0; j < b.cols(); ++j) basis_.push_back(unflatten(b.column(j)));
  }

  const F& field() const { return f_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t matrix_size() const { return n_; }
  const Mat<F>& unit() const { return unit_; }
  const std::vector<Mat<F>>& basis() const { return basis_; }

  Vec coordinates(const Mat<F>& m) const { return coords_.of_unchecked(m.data()); }
  bool contains(const Mat<F>& m) const { return coords_.of(m.data()).has_value(); }
  Mat<F> element(const Vec& c) const { return unflatten(coords_.combine(c)); }

  /// The corner algebra e A e with unit e.
  MatrixAlgebra corner(const Mat<F>& e) const {
    std::vector<Mat<F>> span;
    for (const auto& b : basis_) span.push_back(e * b * e);
    return MatrixAlgebra(f_, n_, span, e);
  }

  /// Basis of the Jacobson radical as matrices, from the kernel of a trace form. The natural
  /// representation is used when p > n; otherwise the regular one when p > dim.
  std::vector<Mat<F>> radical() const {
    const std::size_t d = dim();
    const auto p = f_.characteristic();
    Mat<F> gram(f_, d, d);
    if (p == 0 || p > n_) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
          Elem t = f_.zero();
          for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
              t = f_.add(t, f_.mul(basis_[i](a, b), basis_[j](b, a)));
          gram(i, j) = t;
          gram(j, i) = t;
        }
    } else if (p > d) {
      std::vector<Mat<F>> left;
      for (std::size_t i = 0; i < d; ++i) left.push_back(left_regular(basis_[i]));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          Mat<F> prod = left[i] * left[j];
          Elem t = f_.zero();
          for (std::size_t k = 0; k < d; ++k) t = f_.add(t, prod(k, k));
          gram(i, j) = t;
        }
    } else {
      throw FieldTooSmall(p, std::min(n_, d));
    }
    Mat<F> ker = kernel_basis(gram);
    std::vector<Mat<F>> rad;
    for (std::size_t j = 0; j < ker.cols(); ++j) rad.push_back(element(ker.column(j)));
    return rad;
  }

  /// Left multiplication by x in coordinates.
  Mat<F> left_regular(const Mat<F>& x) const {
    Mat<F> l(f_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec c = coordinates(x * basis_[j]);
      for (std::size_t i = 0; i < dim(); ++i) l(i, j) = c[i];
    }
    return l;
  }

  struct Quotient {
    SemisimpleAlgebra<F> algebra;
    std::vector<Mat<F>> lifts;  // matrices representing the quotient basis
    std::size_t radical_dim;
  };

  /// A / rad A together with matrix lifts of its basis.
  Quotient semisimple_quotient() const {
    const std::size_t d = dim();
    auto rad = radical();
    Mat<F> radc(f_, d, rad.size());
    for (std::size_t j = 0; j < rad.size(); ++j) {
      Vec c = coordinates(rad[j]);
      for (std::size_t i = 0; i < d; ++i) radc(i, j) = c[i];
    }
    auto r = rref(transpose(radc));
    std::vector<bool> pivot(d, false);
    for (auto p : r.pivots) pivot[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < d; ++i)
      if (!pivot[i]) comp.push_back(i);
    const std::size_t s = comp.size();
    Mat<F> full(f_, d, d);
    for (std::size_t j = 0; j < s; ++j) full(comp[j], j) = f_.one();
    full.set_block(0, s, radc);
    Mat<F> finv = *inverse(full);
    auto project = [&](const Mat<F>& m) {
      Vec c = coordinates(m);
      Vec out(s, f_.zero());
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < d; ++k)
          if (!f_.is_zero(c[k])) out[i] = f_.add(out[i], f_.mul(finv(i, k), c[k]));
      return out;
    };
    std::vector<Mat<F>> lifts;
    for (auto i : comp) lifts.push_back(basis_[i]);
    std::vector<Elem> table(s * s * s, f_.zero());
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        Vec c = project(lifts[i] * lifts[j]);
        for (std::size_t k = 0; k < s; ++k) table[(i * s + j) * s + k] = c[k];
      }
    return {SemisimpleAlgebra<F>(f_, s, std::move(table), project(unit_)), std::move(lifts),
            rad.size()};
  }

  Mat<F> lift(const Quotient& q, const Vec& x) const {
    Mat<F> m(f_, n_, n_);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!f_.is_zero(x[i])) m = m + scale(x[i], q.lifts[i]);
    return m;
  }

  /// Lifts an idempotent modulo the radical: e <- 3e^2 - 2e^3 until e^2 = e.
  Mat<F> refine_idempotent(Mat<F> e) const {
    auto three = f_.from_int(3), two = f_.from_int(2);
    for (int it = 0; it < 64; ++it) {
      Mat<F> e2 = e * e;
      if (e2 == e) return e;
      e = scale(three, e2) - scale(two, e2 * e);
    }
    throw VerificationError("idempotent lifting did not converge");
  }

  /// Pairwise orthogonal primitive idempotents summing to the unit, in a deterministic order.
  std::vector<Mat<F>> primitive_idempotents() const {
    std::vector<Mat<F>> out;
    std::vector<Mat<F>> stack{unit_};
    while (!stack.empty()) {
      Mat<F> e = std::move(stack.back());
      stack.pop_back();
      if (e.is_zero()) continue;
      MatrixAlgebra c = corner(e);
      auto q = c.semisimple_quotient();
      if (q.algebra.is_division()) {
        out.push_back(std::move(e));
        continue;
      }
      auto idem = q.algebra.nontrivial_idempotent();
      if (!idem)
        throw PreconditionError("could not split a non-local endomorphism algebra over " +
                                f_.name() + " (End/rad of dimension " +
                                std::to_string(q.algebra.dim()) + ")");
      Mat<F> first = c.refine_idempotent(c.lift(q, *idem));
      Mat<F> second = e - first;
      stack.push_back(std::move(second));
      stack.push_back(std::move(first));
    }
    return out;
  }

  /// True when the algebra is local, i.e. its quotient by the radical is a division algebra.
  bool is_local() const {
    auto q = semisimple_quotient();
    if (q.algebra.is_division()) return true;
    if (q.algebra.nontrivial_idempotent()) return false;
    throw PreconditionError("cannot decide locality over " + f_.name());
  }

 private:
  Mat<F> unflatten(const Vec& v) const {
    Mat<F> m(f_, n_, n_);
    m.data() = v;
    return m;
  }

  F f_;
  std::size_t n_;
  Mat<F> unit_;
  Coordinates<F> coords_;
  std::vector<Mat<F>> basis_;
};

}  // namespace arcat
