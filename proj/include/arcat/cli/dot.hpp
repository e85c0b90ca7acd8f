#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "arcat/modcat/ar_quiver.hpp"

namespace arcat::cli {

/// Graphviz text for an AR quiver: nodes labeled by dimension vectors, irreducible maps as
/// solid edges labeled by multiplicity, translates as dashed edges from Z to τZ.
/// Comment lines are emitted first, prefixed with "// ".
template <class F>
std::string export_dot(const ARQuiver<F>& q, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  for (const auto& c : comments) os << "// " << c << "\n";
  os << "digraph ar_quiver {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box];\n";
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const auto& v = q.vertices[i];
    os << "  n" << i << " [label=\"" << v.label() << "\"";
    if (v.projective && v.injective)
      os << ", peripheries=3";
    else if (v.projective || v.injective)
      os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& e : q.edges) os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.multiplicity << "\"];\n";
  for (const auto& [z, t] : q.tau) os << "  n" << z << " -> n" << t << " [style=dashed, constraint=false];\n";
  os << "}\n";
  return os.str();
}

}  // namespace arcat::cli
