#pragma once

// Fragments R^{[j,k)}: the trellis cut open at S_j and S_k.

#include <cstddef>
#include <vector>

#include "trellis_lab/trellis.hpp"

namespace trellis_lab {

struct Fragment {
  Span interval;
  /// Symbol dimensions of the constraints j, j+1, ..., k-1.
  std::vector<std::size_t> symbol_dims;
  std::size_t in_dim = 0;   // dim S_j
  std::size_t out_dim = 0;  // dim S_k
  /// Symbols, then state slots for times j, j+1, ..., j+len (slot len is S_k).
  /// For the empty interval: two copies of S_j tied by equality.
  Subspace internal{Field(2), 0};
  /// Symbols, then S_j, then S_k.
  Subspace external{Field(2), 0};

  std::size_t symbol_total() const;
  std::vector<std::size_t> state_coords() const;
};

Fragment fragment(const Trellis& t, const Span& iv);

struct TransitionSpaces {
  Subspace T{Field(2), 0};  // projection of the external behavior on S_j x S_k
  Subspace U{Field(2), 0};  // cross-section on S_j x S_k
};

/// Direct solve from the fragment's external behavior.
TransitionSpaces transition_spaces(const Fragment& f);
/// Same spaces, composed constraint by constraint (no symbol coordinates carried).
TransitionSpaces transition_spaces(const Trellis& t, const Span& iv);

/// Relational composition: {(x, z) : (x, y) in r, (y, z) in q for some y}.
Subspace compose(const Subspace& r, std::size_t nx, std::size_t ny, const Subspace& q, std::size_t nz);
/// (x, y) -> (y, x).
Subspace swap_blocks(const Subspace& s, std::size_t nx, std::size_t ny);

enum class ObservabilityMode { plain, generalized };

/// Plain: U == {0}. Generalized: U equals the projection of S^u onto S_j x S_k,
/// which makes the notion meaningful for unobservable trellises.
bool is_jk_observable(const Trellis& t, const Span& iv, ObservabilityMode mode = ObservabilityMode::plain);
bool is_jk_controllable(const Trellis& t, const Span& iv);

struct TProfile {
  /// Entry t-1 holds the flag for interval length t, 1 <= t <= m.
  std::vector<bool> observable;
  std::vector<bool> controllable;
  std::vector<bool> dual_observable;
  std::vector<bool> dual_controllable;

  bool observable_at(std::size_t len) const { return observable.at(len - 1); }
  bool controllable_at(std::size_t len) const { return controllable.at(len - 1); }
};

TProfile t_observability_profile(const Trellis& t);
bool is_t_observable(const Trellis& t, std::size_t len);
bool is_t_controllable(const Trellis& t, std::size_t len);

/// Every valid [j,k)-path lies on a valid trajectory: T^{[j,k)} inside the swapped T^{[k,j)}.
bool is_fragment_trim(const Trellis& t, const Span& iv);

struct FragmentDuality {
  Subspace dual_side{Field(2), 0};  // {(x, y) : (x, -y) in T of the dual fragment}
  Subspace primal_side{Field(2), 0};  // U^perp
  bool equal = false;
};

FragmentDuality fragment_duality(const Trellis& t, const Span& iv);
/// As above, throwing InternalError when the two sides differ.
FragmentDuality check_fragment_duality(const Trellis& t, const Span& iv);

}  // namespace trellis_lab
