#pragma once

// t-irreducibility decisions and the class chain
//   {minimal} < {KV} < {t-irreducible TsbPOC} < {NTsbPOC} < {TsbPOC}
// where Tsb is state- and branch-trim and N is nonmergeable.

#include <cstddef>
#include <optional>
#include <string>

#include "trellis_lab/trellis.hpp"

namespace trellis_lab {

enum class Decision { irreducible, reducible, undecided };
const char* to_string(Decision d);

struct IrreducibilityReport {
  Decision decision = Decision::undecided;
  std::size_t tparam = 0;
  std::size_t chi = 0;
  std::size_t chi_dual = 0;
  bool in_window = false;    // tparam == 1, or min(chi, chi_dual) > tparam > 1
  bool observable = false;   // (m - tparam)-observable
  bool controllable = false; // (m - tparam)-controllable
  std::string action = "none";  // none, two-reduction, zero-run
  bool on_dual = false;
  std::size_t start = 0;     // zero-run fragment start
  std::size_t tlen = 0;      // zero-run parameter
  std::optional<Trellis> conservative;  // non-strict conservative reduction, if one was built
  std::optional<Trellis> strict;        // strict conservative reduction, if one was built
};

/// Needs a TPOC trellis and 1 <= tparam <= m-1.
IrreducibilityReport t_irreducibility(const Trellis& t, std::size_t tparam);

struct ChainMembership {
  std::size_t tparam = 0;
  bool in_window = false;
  bool tsb_poc = false;
  bool ntsb_poc = false;
  bool irreducible_tsb_poc = false;  // TsbPOC and (m-t)-observable and (m-t)-controllable
  Verdict kv = Verdict::undecided;
};

/// Needs a code and dual code with full support.
ChainMembership classify_chain(const Trellis& t, std::size_t tparam);

}  // namespace trellis_lab
