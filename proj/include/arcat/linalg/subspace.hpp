#pragma once

#include <optional>
#include <vector>

#include "arcat/linalg/mat.hpp"

namespace arcat {

/// Coordinates with respect to a fixed basis (columns of a full-column-rank matrix).
/// A set of independent rows is chosen once, so each coordinate query is an r x r product.
template <class F>
class Coordinates {
 public:
  using Elem = typename F::Elem;

  Coordinates() = default;
  explicit Coordinates(Mat<F> basis) : basis_(std::move(basis)) {
    auto r = rref(transpose(basis_));
    if (r.rank() != basis_.cols()) throw std::invalid_argument("Coordinates: basis is dependent");
    rows_ = r.pivots;
    Mat<F> square(basis_.field(), rows_.size(), rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < rows_.size(); ++j) square(i, j) = basis_(rows_[i], j);
    inv_ = *inverse(square);
  }

  const Mat<F>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient() const { return basis_.rows(); }

  /// Coordinates of v assuming v lies in the span (not checked).
  std::vector<Elem> of_unchecked(const std::vector<Elem>& v) const {
    const F& f = basis_.field();
    std::vector<Elem> out(dim(), f.zero());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t k = 0; k < dim(); ++k) {
        const auto& w = v[rows_[k]];
        if (!f.is_zero(w)) out[i] = f.add(out[i], f.mul(inv_(i, k), w));
      }
    return out;
  }

  /// Coordinates, or nullopt when v is outside the span.
  std::optional<std::vector<Elem>> of(const std::vector<Elem>& v) const {
    auto c = of_unchecked(v);
    if (combine(c) != v) return std::nullopt;
    return c;
  }

  std::vector<Elem> combine(const std::vector<Elem>& coords) const {
    const F& f = basis_.field();
    std::vector<Elem> v(ambient(), f.zero());
    for (std::size_t j = 0; j < dim(); ++j) {
      if (f.is_zero(coords[j])) continue;
      for (std::size_t i = 0; i < ambient(); ++i)
        v[i] = f.add(v[i], f.mul(coords[j], basis_(i, j)));
    }
    return v;
  }

 private:
  Mat<F> basis_;
  std::vector<std::size_t> rows_;
  Mat<F> inv_;
};

}  // namespace arcat
