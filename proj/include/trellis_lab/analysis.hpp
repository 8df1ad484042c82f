#pragma once

#include <cstddef>
#include <vector>

#include "trellis_lab/trellis.hpp"

namespace trellis_lab {

struct LocalFlags {
  bool trim = false;
  bool proper = false;
};

/// Trim at S_i: both adjacent constraints project onto all of S_i.
/// Proper at S_i: both adjacent constraints have trivial cross-section on S_i.
LocalFlags local_flags(const Trellis& t, std::size_t i);

struct TrimDetail {
  std::vector<bool> state_trim_at;
  std::vector<bool> branch_trim_at;
  bool state_trim = false;
  bool branch_trim = false;
};

TrimDetail global_trim_flags(const Trellis& t);
TrimDetail global_trim_flags(const Trellis& t, const Subspace& behavior);

bool observable(const Trellis& t);

struct ControllabilityAudit {
  std::size_t sum_constraint_dims = 0;
  std::size_t behavior_dim = 0;
  std::size_t sum_state_dims = 0;
  bool controllable = false;
};

/// Dimension test, cross-checked against observability of the dual; a
/// disagreement throws InternalError.
ControllabilityAudit controllability(const Trellis& t);
bool controllable(const Trellis& t);

struct Connectivity {
  bool connected = false;
  /// Components among states that touch at least one branch.
  std::size_t components = 0;
  /// Per time index, the number of states that lie on no branch at all.
  std::vector<std::size_t> isolated_states;
};

/// Union-find over the explicit trellis diagram. Throws UndecidedError when a
/// state or constraint space is too large to enumerate.
Connectivity connectivity(const Trellis& t);
bool connected(const Trellis& t);

struct MergeTrimStatus {
  bool nontrimmable = false;
  bool nonmergeable = false;
};
MergeTrimStatus merge_trim_status(const Trellis& t);

struct PropertyReport {
  std::vector<bool> trim_at;
  std::vector<bool> proper_at;
  std::vector<bool> state_trim_at;
  std::vector<bool> branch_trim_at;
  bool trim = false;
  bool proper = false;
  bool state_trim = false;
  bool branch_trim = false;
  bool observable = false;
  bool controllable = false;
  bool connected = false;
  bool connectivity_known = false;
  bool tpoc = false;
  bool reduced = false;
  bool nonmergeable = false;
  bool nontrimmable = false;
  std::size_t behavior_dim = 0;
  std::size_t code_dim = 0;
  ControllabilityAudit audit;
  Connectivity connectivity;
  Subspace unobservable_states{Field(2), 0};
};

PropertyReport analyze(const Trellis& t);

/// Trim, proper, observable and controllable, without the connectivity pass.
bool is_tpoc(const Trellis& t);

/// tpoc && some S_j == {0}.
bool is_conventional_tpoc(const PropertyReport& r, const Trellis& t);

}  // namespace trellis_lab
