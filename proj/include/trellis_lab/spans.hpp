#pragma once

// Minimum span length, shortest spans and KV-trellises.
//
// Lengths count positions: the circular interval [a, b] has length b - a + 1 (mod m).

#include <cstddef>
#include <optional>
#include <vector>

#include "trellis_lab/trellis.hpp"

namespace trellis_lab {

struct SpanProfile {
  std::size_t chi = 0;  // 0 for the zero code
  /// shortest[a]: least length of an interval starting at a that covers the
  /// support of some codeword nonzero at a; 0 if every codeword vanishes at a.
  std::vector<std::size_t> shortest;
};

/// Symbol dims default to one coordinate per position.
SpanProfile span_profile(const Subspace& code, std::vector<std::size_t> symbol_dims = {});

/// Length of the shortest circular interval covering the support of word (0 for the zero word).
std::size_t span_length(const Vec& word, const std::vector<std::size_t>& symbol_dims);

/// Product trellis on shortest-span generators starting at the given positions.
/// Throws PreconditionError when no such generator set exists.
Trellis kv_trellis(const Subspace& code, const std::vector<std::size_t>& starts,
                   std::vector<std::size_t> symbol_dims = {});

/// First start assignment (lexicographic) that admits a KV-trellis.
std::optional<Trellis> find_kv_trellis(const Subspace& code, std::vector<std::size_t> symbol_dims = {});

/// Searches the KV-trellises of t's code for one isomorphic to t. Undecided when
/// the number of candidate trellises exceeds `cap`.
Verdict is_kv(const Trellis& t, std::size_t cap = 20000);

}  // namespace trellis_lab
