#pragma once

// Linear tail-biting trellis realizations.
//
// A trellis of length m carries symbol spaces A_i = F^{a_i}, state spaces
// S_i = F^{n_i} and constraint codes C_i in S_i x A_i x S_{i+1}, all indices
// taken mod m. Constraint coordinates are ordered (state-in | symbol | state-out).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trellis_lab/galois.hpp"

namespace trellis_lab {

/// Circular interval [start, start+len) on Z_m. len == m is the whole axis
/// starting at `start`; len == 0 is the empty interval (the edge at `start`).
struct Span {
  std::size_t start = 0;
  std::size_t len = 0;
  std::size_t m = 1;

  /// Throws std::invalid_argument if m == 0 or len > m.
  static Span make(std::size_t start, std::size_t len, std::size_t m);
  /// Inclusive circular interval [first, last].
  static Span closed(std::size_t first, std::size_t last, std::size_t m);

  std::size_t end() const noexcept { return (start + len) % m; }
  std::size_t at(std::size_t offset) const noexcept { return (start + offset) % m; }
  bool covers(std::size_t i) const noexcept { return ((i + m - start) % m) < len; }
  Span complement() const noexcept { return {end(), m - len, m}; }
  std::string str() const;

  friend bool operator==(const Span&, const Span&) = default;
};

/// A nonzero codeword (symbols flattened block by block) and a span covering its support.
struct Generator {
  Vec word;
  Span span;
};

class Trellis {
 public:
  /// Throws std::invalid_argument when m == 0 or the per-index lists disagree in length.
  /// Ambient dimensions of the constraints are checked by validate(), not here.
  Trellis(Field field, std::vector<std::size_t> symbol_dims, std::vector<std::size_t> state_dims,
          std::vector<Subspace> constraints);

  std::size_t length() const noexcept { return symbol_dims_.size(); }
  const Field& field() const noexcept { return field_; }

  std::size_t symbol_dim(std::size_t i) const { return symbol_dims_[i % length()]; }
  std::size_t state_dim(std::size_t i) const { return state_dims_[i % length()]; }
  const Subspace& constraint(std::size_t i) const { return constraints_[i % length()]; }

  const std::vector<std::size_t>& symbol_dims() const noexcept { return symbol_dims_; }
  const std::vector<std::size_t>& state_dims() const noexcept { return state_dims_; }
  const std::vector<Subspace>& constraints() const noexcept { return constraints_; }
  std::vector<std::size_t> constraint_dims() const;

  std::size_t constraint_ambient(std::size_t i) const;
  std::vector<std::size_t> in_state_coords(std::size_t i) const;
  std::vector<std::size_t> symbol_coords(std::size_t i) const;
  std::vector<std::size_t> out_state_coords(std::size_t i) const;

  std::size_t total_symbol_dim() const;
  std::size_t total_state_dim() const;
  /// Behavior coordinates: all symbol blocks a_0..a_{m-1}, then all state blocks s_0..s_{m-1}.
  std::size_t behavior_ambient() const { return total_symbol_dim() + total_state_dim(); }
  std::size_t symbol_offset(std::size_t i) const;
  std::size_t state_offset(std::size_t i) const;
  /// Behavior coordinates feeding constraint i, in constraint order (duplicates when m == 1).
  std::vector<std::size_t> branch_coords(std::size_t i) const;
  std::vector<std::size_t> all_symbol_coords() const;
  std::vector<std::size_t> all_state_coords() const;

  Trellis with_constraint(std::size_t i, Subspace c) const;

  friend bool operator==(const Trellis&, const Trellis&) = default;

 private:
  Field field_;
  std::vector<std::size_t> symbol_dims_;
  std::vector<std::size_t> state_dims_;
  std::vector<Subspace> constraints_;
};

/// Human-readable invariant violations; empty iff the trellis is well formed.
std::vector<std::string> validate(const Trellis& t);
/// Throws PreconditionError listing the violations.
void require_valid(const Trellis& t);

/// One-dimensional trellis carrying g: unit states strictly inside the span,
/// leaving the zero state at span.start and returning at span.end().
Trellis elementary(const Field& f, const Generator& g, const std::vector<std::size_t>& symbol_dims);
/// Direct-sum state spaces; constraint codes are the sums of the embedded constituents.
Trellis product(const std::vector<Trellis>& ts);
Trellis product_of_generators(const Field& f, const std::vector<std::size_t>& symbol_dims,
                              const std::vector<Generator>& gens);

/// Valid trajectories, as a subspace of A x S in behavior coordinates.
Subspace behavior(const Trellis& t);
Subspace realized_code(const Trellis& t);
/// S^u: states of the unobservable trajectories (0, s).
Subspace unobservable_states(const Trellis& t);

/// Sign-adjusted orthogonal constraint {(x, a, y) : (x, a, -y) in C^perp}.
Subspace dual_constraint(const Subspace& c, std::size_t in_dim, std::size_t symbol_dim, std::size_t out_dim);
Trellis dualize(const Trellis& t);

/// t re-indexed so that index i of the result is index i + shift of t.
Trellis rotate(const Trellis& t, std::size_t shift);
/// Time reversal: S'_i = S_{-i}, C'_i = C_{-i-1} with its state blocks swapped.
Trellis reverse(const Trellis& t);

enum class Verdict { yes, no, undecided };
const char* to_string(Verdict v);

struct Isomorphism {
  Verdict verdict = Verdict::no;
  /// phi_i as n_i x n_i matrices acting on row vectors, when verdict == yes.
  std::vector<Mat> maps;
  std::string reason;
};

/// Exhaustive search for state-space isomorphisms; gives up (undecided) when
/// some |GL(n_i, p)| exceeds `gl_cap`.
Isomorphism is_isomorphic(const Trellis& a, const Trellis& b, std::size_t gl_cap = 12000);

/// Image of t under per-index state maps (each n_i x n'_i, applied to both state occurrences).
Trellis apply_state_maps(const Trellis& t, const std::vector<Mat>& maps);

}  // namespace trellis_lab
