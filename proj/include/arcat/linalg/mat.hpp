#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/linalg/field.hpp"

namespace arcat {

/// Dense row-major matrix over an exact field.
template <class F>
class Mat {
 public:
  using Field = F;
  using Elem = typename F::Elem;

  Mat() = default;
  Mat(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Mat identity(const F& field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Mat from_rows(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    Mat m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  static Mat from_ints(const F& field, std::size_t rows, std::size_t cols,
                       const std::vector<long long>& entries) {
    if (entries.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
    Mat m(field, rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) m.data_[k] = field.from_int(entries[k]);
    return m;
  }

  /// A single column built from a coordinate vector.
  static Mat column_vector(const F& field, const std::vector<Elem>& v) {
    Mat m(field, v.size(), 1);
    m.data_ = v;
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Elem>& data() const { return data_; }
  std::vector<Elem>& data() { return data_; }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!field_.equal(data_[k], o.data_[k])) return false;
    return true;
  }

  std::vector<Elem> column(std::size_t j) const {
    std::vector<Elem> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Mat m(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Mat columns(const std::vector<std::size_t>& idx) const {
    Mat m(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << ',';
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ',';
        os << field_.to_string((*this)(i, j));
      }
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

template <class F>
Mat<F> operator*(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
  const F& f = a.field();
  Mat<F> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

template <class F>
Mat<F> operator+(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum: shape mismatch");
  Mat<F> c = a;
  for (std::size_t k = 0; k < c.data().size(); ++k)
    c.data()[k] = a.field().add(a.data()[k], b.data()[k]);
  return c;
}

template <class F>
Mat<F> operator-(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  Mat<F> c = a;
  for (std::size_t k = 0; k < c.data().size(); ++k)
    c.data()[k] = a.field().sub(a.data()[k], b.data()[k]);
  return c;
}

template <class F>
Mat<F> scale(const typename F::Elem& s, const Mat<F>& a) {
  Mat<F> c = a;
  for (auto& e : c.data()) e = a.field().mul(s, e);
  return c;
}

template <class F>
Mat<F> transpose(const Mat<F>& a) {
  Mat<F> t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class F>
Mat<F> hstack(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  Mat<F> c(a.field(), a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

template <class F>
Mat<F> vstack(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  Mat<F> c(a.field(), a.rows() + b.rows(), a.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

/// Block-diagonal sum.
template <class F>
Mat<F> direct_sum(const Mat<F>& a, const Mat<F>& b) {
  Mat<F> c(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

/// Kronecker product; row (i,k) -> i*b.rows()+k, column (j,l) -> j*b.cols()+l.
template <class F>
Mat<F> kron(const Mat<F>& a, const Mat<F>& b) {
  const F& f = a.field();
  Mat<F> c(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& aij = a(i, j);
      if (f.is_zero(aij)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = f.mul(aij, b(k, l));
    }
  return c;
}

template <class F>
struct RrefResult {
  Mat<F> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. Pivot search is restricted to the first `ncols` columns
/// (all columns by default), so augmented systems can be reduced in one pass.
template <class F>
RrefResult<F> rref(Mat<F> m, std::size_t ncols = static_cast<std::size_t>(-1)) {
  const F& f = m.field();
  ncols = std::min(ncols, m.cols());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    auto inv = f.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(inv, m(row, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m(i, col))) continue;
      auto factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Mat<F>& m) {
  return rref(m).rank();
}

/// Some x with a*x = b, free variables set to zero; nullopt when inconsistent.
template <class F>
std::optional<Mat<F>> solve(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("solve: a has " + std::to_string(a.rows()) + " rows, b has " +
                                std::to_string(b.rows()));
  auto r = rref(hstack(a, b), a.cols());
  const F& f = a.field();
  // inconsistent iff some zero row of the coefficient part has a nonzero right-hand side
  for (std::size_t i = r.rank(); i < r.reduced.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!f.is_zero(r.reduced(i, a.cols() + j))) return std::nullopt;
  Mat<F> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < r.rank(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, a.cols() + j);
  return x;
}

/// Columns form the canonical null-space basis read off the rref (one per free column).
template <class F>
Mat<F> kernel_basis(const Mat<F>& m) {
  const F& f = m.field();
  auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Mat<F> k(f, m.cols(), m.cols() - r.rank());
  std::size_t c = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    k(free, c) = f.one();
    for (std::size_t i = 0; i < r.rank(); ++i) k(r.pivots[i], c) = f.neg(r.reduced(i, free));
    ++c;
  }
  return k;
}

/// Basis (as columns) of the column space, taken from the pivot columns of m.
template <class F>
Mat<F> image_basis(const Mat<F>& m) {
  return m.columns(rref(m).pivots);
}

/// Rows of the result span the complement-free left null space: q*m = 0 and q has full row rank
/// m.rows() - rank(m). Used as a cokernel projection.
template <class F>
Mat<F> cokernel_projection(const Mat<F>& m) {
  return transpose(kernel_basis(transpose(m)));
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto r = rref(hstack(m, Mat<F>::identity(m.field(), m.rows())), m.cols());
  if (r.rank() != m.rows()) return std::nullopt;
  return r.reduced.block(0, m.cols(), m.rows(), m.cols());
}

template <class F>
bool is_invertible(const Mat<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

}  // namespace arcat
