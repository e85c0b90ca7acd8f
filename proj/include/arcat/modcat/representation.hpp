#pragma once

#include <map>
#include <string>
#include <vector>

#include "arcat/error.hpp"
#include "arcat/fincat/category.hpp"
#include "arcat/modcat/module.hpp"
#include "arcat/quiver/quiver.hpp"

namespace arcat {

/// Representations of a bound quiver are modules over the opposite of its path category:
/// a path p: v -> w is a morphism w -> v there, acting by R(p): R(v) -> R(w).
template <class F>
CategoryPtr<F> representation_category(const F& field, const BoundQuiver& bq) {
  return opposite(category_of(field, bq));
}

/// The module of a representation given by vertex dimensions and one matrix per arrow
/// (shape dims(target) x dims(source)). Relations are checked through functoriality.
template <class F>
CModule<F> module_from_representation(const CategoryPtr<F>& cat, const BoundQuiver& bq,
                                      const std::vector<std::size_t>& dims,
                                      const std::map<std::string, Mat<F>>& arrows) {
  const auto& q = bq.quiver();
  const auto& verts = q.vertices();
  const std::size_t n = verts.size();
  if (cat->size() != n) throw PreconditionError("category does not match the quiver");
  if (dims.size() != n) throw PreconditionError("representation needs one dimension per vertex");
  const F& f = cat->field();
  for (const auto& [id, m] : arrows) {
    if (!q.has_arrow(id)) throw PreconditionError("unknown arrow '" + id + "'");
    const auto& a = q.arrow(id);
    if (m.rows() != dims[q.vertex_index(a.target)] || m.cols() != dims[q.vertex_index(a.source)])
      throw PreconditionError("matrix for arrow '" + id + "' has the wrong shape");
  }
  auto arrow_matrix = [&](const std::string& id) {
    auto it = arrows.find(id);
    if (it != arrows.end()) return it->second;
    const auto& a = q.arrow(id);
    return Mat<F>(f, dims[q.vertex_index(a.target)], dims[q.vertex_index(a.source)]);
  };
  std::vector<std::vector<Mat<F>>> action(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& p : enumerate_paths(bq, verts[y], verts[x])) {
        Mat<F> r = Mat<F>::identity(f, dims[y]);
        for (const auto& a : p.arrows) r = arrow_matrix(a) * r;
        action[x * n + y].push_back(std::move(r));
      }
  return CModule<F>(cat, dims, std::move(action));
}

}  // namespace arcat
