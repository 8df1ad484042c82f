#include "trellis_lab/render.hpp"

#include <algorithm>
#include <sstream>

#include "trellis_lab/errors.hpp"

namespace trellis_lab {

namespace {

std::string label(const Field& f, std::span<const Elem> v) { return v.empty() ? "()" : to_digits(f, v); }

std::string node(std::size_t time, std::span<const Elem> v) {
  std::string id = "s" + std::to_string(time) + "_";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) id += '_';
    id += std::to_string(v[k]);
  }
  return id;
}

}  // namespace

std::string render_dot(const Trellis& t, std::size_t cap) {
  const Field& f = t.field();
  const std::size_t m = t.length();
  const bool binary_lines = f.p() == 2 && std::all_of(t.symbol_dims().begin(), t.symbol_dims().end(),
                                                       [](std::size_t d) { return d == 1; });
  std::ostringstream out;
  out << "digraph trellis {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle, fontsize=10, width=0.3];\n";
  out << "  edge [arrowhead=none];\n";
  for (std::size_t time = 0; time <= m; ++time) {
    const std::size_t n = t.state_dim(time % m);
    const auto states = Subspace::full(f, n).elements(cap);
    out << "  subgraph rank" << time << " {\n    rank=same;\n";
    for (const Vec& s : states) {
      out << "    " << node(time, s) << " [label=\"" << label(f, s) << "\"];\n";
    }
    out << "  }\n";
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n_in = t.state_dim(i), a = t.symbol_dim(i);
    for (const Vec& b : t.constraint(i).elements(cap)) {
      const std::span<const Elem> v(b);
      const auto sym = v.subspan(n_in, a);
      out << "  " << node(i, v.subspan(0, n_in)) << " -> " << node(i + 1, v.subspan(n_in + a));
      if (binary_lines) {
        out << " [style=" << (sym[0] == 0 ? "dashed" : "solid") << "]";
      } else {
        const bool zero = std::all_of(sym.begin(), sym.end(), [](Elem e) { return e == 0; });
        out << " [style=" << (zero ? "dashed" : "solid") << ", label=\"" << label(f, sym) << "\"]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace trellis_lab
