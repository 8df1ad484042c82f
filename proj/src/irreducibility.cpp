#include "trellis_lab/irreducibility.hpp"

#include <algorithm>

#include "trellis_lab/analysis.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/fragments.hpp"
#include "trellis_lab/reduction.hpp"
#include "trellis_lab/spans.hpp"

namespace trellis_lab {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::irreducible:
      return "irreducible";
    case Decision::reducible:
      return "reducible";
    case Decision::undecided:
      return "undecided";
  }
  return "undecided";
}

namespace {

// Tries a reduction with zero-run parameter tlen (two-reduction for tlen == 1) on t or its dual.
bool try_reduce(const Trellis& t, std::size_t tlen, bool dual_side, IrreducibilityReport& rep) {
  const Trellis side = dual_side ? dualize(t) : t;
  auto back = [&](const Trellis& r) { return dual_side ? dualize(r) : r; };
  const std::size_t m = t.length();
  if (tlen == 1) {
    if (is_t_observable(side, m - 1)) return false;
    rep.action = "two-reduction";
    rep.on_dual = dual_side;
    rep.tlen = 1;
    rep.strict = back(two_reduction_m1(side).primal);
    return true;
  }
  auto z = find_zero_run(side, tlen);
  if (!z) return false;
  rep.action = "zero-run";
  rep.on_dual = dual_side;
  rep.start = z->start;
  rep.tlen = tlen;
  rep.conservative = back(z->conservative);
  rep.strict = back(z->strict);
  return true;
}

}  // namespace

IrreducibilityReport t_irreducibility(const Trellis& t, std::size_t tparam) {
  if (!is_tpoc(t)) throw PreconditionError("t-irreducibility needs a trim, proper, observable, controllable trellis");
  const std::size_t m = t.length();
  if (tparam == 0 || tparam >= m) throw PreconditionError("t must lie in 1..m-1");
  IrreducibilityReport rep;
  rep.tparam = tparam;
  const Subspace code = realized_code(t);
  rep.chi = span_profile(code, t.symbol_dims()).chi;
  rep.chi_dual = span_profile(orthogonal(code), t.symbol_dims()).chi;
  rep.in_window = tparam == 1 || std::min(rep.chi, rep.chi_dual) > tparam;
  rep.observable = is_t_observable(t, m - tparam);
  rep.controllable = is_t_controllable(t, m - tparam);
  if (rep.observable && rep.controllable) {
    rep.decision = Decision::irreducible;
    return rep;
  }

  if (tparam == 1) {
    try_reduce(t, 1, rep.observable, rep);
    rep.decision = Decision::reducible;
    return rep;
  }

  // Preferred route first: a strict t-reduction when (m-t+1)-unobservable or
  // uncontrollable, otherwise a conservative t-reduction followed by a strict (t+1)-one.
  const bool obs1 = is_t_observable(t, m - tparam + 1);
  const bool ctl1 = is_t_controllable(t, m - tparam + 1);
  std::vector<std::pair<std::size_t, bool>> plan;
  if (!obs1 || !ctl1) plan.push_back({tparam - 1, obs1});
  plan.push_back({tparam, rep.observable});
  plan.push_back({tparam, !rep.observable});
  if (obs1 && ctl1) {
    plan.push_back({tparam - 1, false});
    plan.push_back({tparam - 1, true});
  }
  for (const auto& [tlen, dual_side] : plan) {
    if (try_reduce(t, tlen, dual_side, rep)) {
      rep.decision = Decision::reducible;
      return rep;
    }
  }
  if (rep.in_window) throw InternalError("reducible trellis in the span window without a constructive reduction");
  rep.decision = Decision::undecided;
  return rep;
}

ChainMembership classify_chain(const Trellis& t, std::size_t tparam) {
  const std::size_t m = t.length();
  if (tparam == 0 || tparam >= m) throw PreconditionError("t must lie in 1..m-1");
  const Subspace code = realized_code(t);
  const auto mine = span_profile(code, t.symbol_dims());
  const auto dual = span_profile(orthogonal(code), t.symbol_dims());
  for (std::size_t a = 0; a < m; ++a) {
    if (mine.shortest[a] == 0 || dual.shortest[a] == 0) {
      throw PreconditionError("class chain needs a code and dual code with full support");
    }
  }
  ChainMembership out;
  out.tparam = tparam;
  out.in_window = tparam == 1 || std::min(mine.chi, dual.chi) > tparam;
  const auto r = analyze(t);
  out.tsb_poc = r.state_trim && r.branch_trim && r.tpoc;
  out.ntsb_poc = out.tsb_poc && r.nonmergeable;
  out.irreducible_tsb_poc = out.tsb_poc && is_t_observable(t, m - tparam) && is_t_controllable(t, m - tparam);
  out.kv = out.tsb_poc ? is_kv(t) : Verdict::no;
  return out;
}

}  // namespace trellis_lab
