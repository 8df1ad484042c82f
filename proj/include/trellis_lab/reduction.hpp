#pragma once

// Constructive reductions: trimming, merging, branch trimming/expansion,
// unobservable trims, the two-step reduction for non-(m-1)-observable
// trellises, and the zero-run reduction.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trellis_lab/trellis.hpp"

namespace trellis_lab {

/// Restrict S_i to Y and re-coordinatize it by Y's pivot coordinates.
/// The realized code may shrink; callers that need preservation check it.
Trellis trim_to(const Trellis& t, std::size_t i, const Subspace& y);
/// Replace S_i by S_i / Y, using the section given by complement(Y, S_i).
Trellis merge_to(const Trellis& t, std::size_t i, const Subspace& y);

/// B|S_i, the states of S_i that lie on valid trajectories.
Subspace used_states(const Trellis& t, std::size_t i);
/// B restricted to the branch coordinates of C_i.
Subspace used_branches(const Trellis& t, std::size_t i);

/// C_i := B|C_i. Throws PreconditionError if C_i is already branch-trim.
Trellis branch_trim(const Trellis& t, std::size_t i);
/// C_i := C_i + extra. Throws PreconditionError if the realized code changes.
Trellis branch_expand(const Trellis& t, std::size_t i, const Subspace& extra);

struct UnobsTrim {
  Trellis result;
  std::size_t index = 0;
  Vec state;        // the unobservable state s_i that was cut away
  Subspace kept{Field(2), 0};  // T_i, with T_i + <s_i> = S_i
};

/// Trims S_i to a complement of <s_i> for an unobservable trajectory (0, s).
/// Without an index, takes the first RREF basis vector of S^u, i.e. the one
/// whose first nonzero state coordinate is earliest.
UnobsTrim unobs_trim(const Trellis& t, std::optional<std::size_t> index = std::nullopt);

struct TwoReduction {
  std::size_t index = 0;     // constraint index that was branch-trimmed on the dual side
  Trellis dual_trimmed;      // dual after branch trimming
  Trellis expanded;          // primal after the mirrored branch expansion
  Trellis primal;            // primal after the unobservable trim
  Trellis dual;              // dual side after the mirrored merge
};

/// Requires an observable trellis that is not (m-1)-observable.
TwoReduction two_reduction_m1(const Trellis& t);

enum class ZeroRunStage { expand, conservative, strict };
const char* to_string(ZeroRunStage s);

struct ZeroRun {
  std::size_t start = 0;          // j: the unobservable fragment is [j, j+m-tlen)
  std::size_t tlen = 0;
  bool reversed = false;          // witness satisfied only Condition A'
  Vec witness_in;                 // s_j
  Vec witness_out;                // s_{j+m-tlen}
  Subspace x{Field(2), 0};        // X inside S+ at the time before the fragment start (working view)
  Trellis expanded;
  Trellis conservative;           // conservative tlen-reduction (same profiles as the input)
  Trellis strict;                 // strict conservative (tlen+1)-reduction
};

/// Conditions for a nonzero unobservable path (s_0, s_L) of the fragment
/// [0, L), L = m - tlen, of t:
///   A:  (s_L, 0) is not a transition of [L, m-1)
///   A': (0, s_0) is not a transition of [L+1, m)
bool condition_a(const Trellis& t, std::size_t tlen, const Vec& s_in, const Vec& s_out);
bool condition_a_prime(const Trellis& t, std::size_t tlen, const Vec& s_in, const Vec& s_out);

/// The zero-run reduction on [j+L, j) for the unobservable fragment [j, j+L).
/// Requires a TPOC input, 2 <= tlen <= m-1, and a witness satisfying A or A'.
ZeroRun zero_run_reduce(const Trellis& t, std::size_t j, std::size_t tlen);
/// First j (from 0) for which zero_run_reduce(t, j, tlen) applies.
std::optional<ZeroRun> find_zero_run(const Trellis& t, std::size_t tlen);

// ---- step records and replay -------------------------------------------

struct Op {
  std::string name;  // trim, merge, set-constraint, state-trim, branch-trim, unobs-trim,
                     // two-reduction, zero-run
  bool dual = false;
  std::optional<std::size_t> index;
  std::vector<Vec> rows;  // subspace generators for trim, merge and set-constraint
  std::size_t start = 0;  // zero-run fragment start
  std::size_t len = 0;    // zero-run fragment length (m - tlen)
  ZeroRunStage stage = ZeroRunStage::strict;
};

/// Applies one operation; `dual` means dualize, apply, dualize back.
Trellis apply_op(const Trellis& t, const Op& op);

struct DimProfile {
  std::vector<std::size_t> states;
  std::vector<std::size_t> constraints;
  friend bool operator==(const DimProfile&, const DimProfile&) = default;
};
DimProfile dim_profile(const Trellis& t);

struct ReductionStep {
  Op op;
  Span interval;  // smallest circular interval holding every changed constraint
  DimProfile before;
  DimProfile after;
  bool strict = false;        // some state dimension dropped
  bool conservative = false;  // no constraint dimension grew
  bool reduction = false;     // no state dimension grew
  std::string witness;
};

/// Applies op, asserts that the realized code is unchanged (InternalError
/// otherwise), and records the dimension profiles and flags.
ReductionStep record_step(const Trellis& before, const Trellis& after, const Op& op, std::string witness = {});
/// Changed-constraint interval between two trellises of the same length.
Span changed_interval(const Trellis& before, const Trellis& after);

}  // namespace trellis_lab
