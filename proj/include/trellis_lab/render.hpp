#pragma once

#include <cstddef>
#include <string>

#include "trellis_lab/trellis.hpp"

namespace trellis_lab {

/// Graphviz diagram: one rank per time 0..m (time m repeats time 0), states as
/// nodes, one edge per branch. With one symbol coordinate over GF(2), symbol 0
/// is dashed and 1 solid; otherwise edges carry the symbol as a label.
/// Throws UndecidedError if some constraint has more than `cap` branches.
std::string render_dot(const Trellis& t, std::size_t cap = 4096);

}  // namespace trellis_lab
