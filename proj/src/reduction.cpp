#include "trellis_lab/reduction.hpp"

#include <algorithm>
#include <numeric>

#include "trellis_lab/analysis.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/fragments.hpp"

namespace trellis_lab {

namespace {

constexpr std::size_t kUnobsComplementCap = 4096;

std::vector<std::size_t> range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), first);
  return v;
}

Mat block_diag(const Mat& in, std::size_t symbol_dim, const Mat& out) {
  Mat m(in.rows() + symbol_dim + out.rows(), in.cols() + symbol_dim + out.cols());
  for (std::size_t r = 0; r < in.rows(); ++r) {
    for (std::size_t c = 0; c < in.cols(); ++c) m.at(r, c) = in.at(r, c);
  }
  for (std::size_t k = 0; k < symbol_dim; ++k) m.at(in.rows() + k, in.cols() + k) = 1;
  const std::size_t r0 = in.rows() + symbol_dim, c0 = in.cols() + symbol_dim;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) m.at(r0 + r, c0 + c) = out.at(r, c);
  }
  return m;
}

// Restricts every occurrence of S_i to `keep` and maps it by `map` (n_i x n').
Trellis rework_state(const Trellis& t, std::size_t i, const Subspace& keep, const Mat& map) {
  const std::size_t m = t.length();
  i %= m;
  const Field& f = t.field();
  std::vector<std::size_t> n = t.state_dims();
  n[i] = map.cols();
  std::vector<Subspace> cs;
  for (std::size_t j = 0; j < m; ++j) {
    const bool in_hit = j == i, out_hit = (j + 1) % m == i;
    if (!in_hit && !out_hit) {
      cs.push_back(t.constraint(j));
      continue;
    }
    const std::size_t nx = t.state_dim(j), na = t.symbol_dim(j), ny = t.state_dim(j + 1);
    const std::size_t amb = nx + na + ny;
    Subspace allowed = embed(in_hit ? keep : Subspace::full(f, nx), amb, range(0, nx));
    allowed = sum(allowed, embed(Subspace::full(f, na), amb, range(nx, na)));
    allowed = sum(allowed, embed(out_hit ? keep : Subspace::full(f, ny), amb, range(nx + na, ny)));
    const Subspace restricted = intersection(t.constraint(j), allowed);
    cs.push_back(image(restricted, block_diag(in_hit ? map : Mat::identity(nx), na, out_hit ? map : Mat::identity(ny))));
  }
  return Trellis(f, t.symbol_dims(), std::move(n), std::move(cs));
}

void require_state_subspace(const Trellis& t, std::size_t i, const Subspace& y) {
  if (!(y.field() == t.field()) || y.ambient() != t.state_dim(i)) {
    throw PreconditionError("subspace does not live in S_" + std::to_string(i % t.length()));
  }
}

Subspace state_block(const Trellis& t, const Subspace& all_states, std::size_t i) {
  const std::size_t off = t.state_offset(i) - t.total_symbol_dim();
  return project(all_states, range(off, t.state_dim(i)));
}

void require_same_code(const Trellis& a, const Trellis& b, const char* what) {
  if (!(realized_code(a) == realized_code(b))) throw InternalError(std::string(what) + " changed the realized code");
}

}  // namespace

Trellis trim_to(const Trellis& t, std::size_t i, const Subspace& y) {
  require_valid(t);
  require_state_subspace(t, i, y);
  Mat pick(y.ambient(), y.dim());
  const auto piv = y.pivots();
  for (std::size_t r = 0; r < piv.size(); ++r) pick.at(piv[r], r) = 1;
  return rework_state(t, i, y, pick);
}

Trellis merge_to(const Trellis& t, std::size_t i, const Subspace& y) {
  require_valid(t);
  require_state_subspace(t, i, y);
  const Field& f = t.field();
  const std::size_t n = y.ambient();
  const Subspace w = complement(y, Subspace::full(f, n));
  const Mat q = y.basis().stacked(w.basis());
  const Mat qinv = inverse(f, q.rows() == 0 ? Mat(0, 0) : q);
  Mat map(n, n - y.dim());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) map.at(r, c) = qinv.at(r, y.dim() + c);
  }
  return rework_state(t, i, Subspace::full(f, n), map);
}

Subspace used_states(const Trellis& t, std::size_t i) {
  return project(behavior(t), range(t.state_offset(i), t.state_dim(i)));
}

Subspace used_branches(const Trellis& t, std::size_t i) { return project(behavior(t), t.branch_coords(i)); }

Trellis branch_trim(const Trellis& t, std::size_t i) {
  const Subspace used = used_branches(t, i);
  if (used == t.constraint(i)) {
    throw PreconditionError("constraint " + std::to_string(i % t.length()) + " is already branch-trim");
  }
  return t.with_constraint(i, used);
}

Trellis branch_expand(const Trellis& t, std::size_t i, const Subspace& extra) {
  if (extra.ambient() != t.constraint_ambient(i)) throw PreconditionError("expansion has the wrong ambient dimension");
  Trellis out = t.with_constraint(i, sum(t.constraint(i), extra));
  if (!(realized_code(out) == realized_code(t))) throw PreconditionError("branch expansion changes the realized code");
  return out;
}

UnobsTrim unobs_trim(const Trellis& t, std::optional<std::size_t> index) {
  require_valid(t);
  const Field& f = t.field();
  const std::size_t m = t.length();
  const Subspace su = unobservable_states(t);
  if (su.is_zero()) throw PreconditionError("unobservable trim needs an unobservable trellis");
  std::size_t time = 0;
  Vec s;
  if (!index) {
    const std::size_t pivot = su.pivots().front();
    const std::size_t base = t.total_symbol_dim();
    while (pivot >= t.state_offset(time) - base + t.state_dim(time)) ++time;
    const auto row = su.basis().row(0);
    const std::size_t off = t.state_offset(time) - base;
    s.assign(row.begin() + static_cast<std::ptrdiff_t>(off),
             row.begin() + static_cast<std::ptrdiff_t>(off + t.state_dim(time)));
  } else {
    time = *index % m;
    const Subspace at = state_block(t, su, time);
    if (at.is_zero()) {
      throw PreconditionError("no unobservable trajectory passes a nonzero state at time " + std::to_string(time));
    }
    // first S^u basis vector that is nonzero at this time
    const std::size_t off = t.state_offset(time) - t.total_symbol_dim();
    for (std::size_t r = 0; r < su.dim() && s.empty(); ++r) {
      const auto row = su.basis().row(r);
      Vec cand(row.begin() + static_cast<std::ptrdiff_t>(off),
               row.begin() + static_cast<std::ptrdiff_t>(off + t.state_dim(time)));
      if (std::any_of(cand.begin(), cand.end(), [](Elem e) { return e != 0; })) s = cand;
    }
  }
  const Subspace line = Subspace::span(f, s.size(), std::vector<Vec>{s});
  Subspace kept = complement(line, Subspace::full(f, s.size()));
  Trellis result = trim_to(t, time, kept);
  // Different complements can give different trellises. Prefer one whose
  // result is state-trim; the hyperplanes are ker(g) with g.s = 1.
  const Subspace whole = Subspace::full(f, s.size());
  if (!global_trim_flags(result).state_trim && whole.cardinality() <= kUnobsComplementCap) {
    for (const Vec& g : whole.elements(kUnobsComplementCap)) {
      Elem d = 0;
      for (std::size_t k = 0; k < s.size(); ++k) d = f.add(d, f.mul(g[k], s[k]));
      if (d != 1) continue;
      Subspace cand = orthogonal(Subspace::span(f, s.size(), std::vector<Vec>{g}));
      Trellis r = trim_to(t, time, cand);
      if (global_trim_flags(r).state_trim) {
        kept = std::move(cand);
        result = std::move(r);
        break;
      }
    }
  }
  require_same_code(t, result, "unobservable trim");
  if (m >= 2) {
    const std::size_t prev = (time + m - 1) % m;
    if (result.constraint(prev).dim() + 1 != t.constraint(prev).dim() ||
        result.constraint(time).dim() + 1 != t.constraint(time).dim()) {
      throw InternalError("unobservable trim did not lower both adjacent constraint dimensions by one");
    }
  }
  return {std::move(result), time, s, kept};
}

TwoReduction two_reduction_m1(const Trellis& t) {
  require_valid(t);
  const std::size_t m = t.length();
  if (!observable(t)) throw PreconditionError("two-reduction needs an observable trellis");
  if (m < 2 || is_t_observable(t, m - 1)) throw PreconditionError("two-reduction needs a trellis that is not (m-1)-observable");
  const Trellis d = dualize(t);
  std::size_t i = m;
  const Subspace b = behavior(d);
  for (std::size_t k = 0; k < m && i == m; ++k) {
    if (!(project(b, d.branch_coords(k)) == d.constraint(k))) i = k;
  }
  if (i == m) throw InternalError("dual of a non-(m-1)-observable trellis is branch-trim");
  Trellis dual_trimmed = branch_trim(d, i);
  Trellis expanded = dualize(dual_trimmed);
  require_same_code(t, expanded, "mirrored branch expansion");
  if (!expanded.constraint(i).contains(t.constraint(i)) || expanded.constraint(i).dim() != t.constraint(i).dim() + 1) {
    throw InternalError("mirrored branch expansion is not a one-dimensional supercode");
  }
  const Subspace su = unobservable_states(expanded);
  const bool at_i = !state_block(expanded, su, i).is_zero();
  UnobsTrim u = unobs_trim(expanded, at_i ? std::optional<std::size_t>(i) : std::nullopt);
  Trellis dual = merge_to(dual_trimmed, u.index, orthogonal(u.kept));
  const auto iso = is_isomorphic(dualize(u.result), dual);
  if (iso.verdict == Verdict::no) throw InternalError("two-reduction: primal and dual results are not dual to each other");
  return {i, std::move(dual_trimmed), std::move(expanded), std::move(u.result), std::move(dual)};
}

const char* to_string(ZeroRunStage s) {
  switch (s) {
    case ZeroRunStage::expand:
      return "expand";
    case ZeroRunStage::conservative:
      return "conservative";
    case ZeroRunStage::strict:
      return "strict";
  }
  return "strict";
}

bool condition_a(const Trellis& t, std::size_t tlen, const Vec& s_in, const Vec& s_out) {
  (void)s_in;
  const std::size_t m = t.length();
  const std::size_t L = m - tlen;
  const Subspace T = transition_spaces(t, Span::make(L, tlen - 1, m)).T;
  Vec x = s_out;
  x.resize(x.size() + t.state_dim(m - 1), 0);
  return !T.contains(x);
}

bool condition_a_prime(const Trellis& t, std::size_t tlen, const Vec& s_in, const Vec& s_out) {
  (void)s_out;
  const std::size_t m = t.length();
  const std::size_t L = m - tlen;
  const Subspace T = transition_spaces(t, Span::make(L + 1, tlen - 1, m)).T;
  Vec x(t.state_dim(L + 1), 0);
  x.insert(x.end(), s_in.begin(), s_in.end());
  return !T.contains(x);
}

namespace {

struct Core {
  Trellis expanded;
  Subspace x;
  Trellis conservative;
  Trellis strict;
};

// Working view: the unobservable fragment is [0, L) and Condition A holds for (s_in, s_out).
Core zero_run_core(const Trellis& t, std::size_t tlen, const Vec& s_in, const Vec& s_out) {
  const Field& f = t.field();
  const std::size_t m = t.length();
  const std::size_t L = m - tlen;
  auto interior = [&](std::size_t i) { return i > L && i < m; };

  // Step 1: adjoin a new coordinate at times L+1..m-1 and the path through it.
  std::vector<std::size_t> n(m);
  for (std::size_t i = 0; i < m; ++i) n[i] = t.state_dim(i) + (interior(i) ? 1 : 0);
  std::vector<Subspace> cs;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const std::size_t nx = t.state_dim(i), na = t.symbol_dim(i), ny = t.state_dim(next);
    const std::size_t amb = n[i] + na + n[next];
    std::vector<std::size_t> pos = range(0, nx);
    for (std::size_t k = 0; k < na; ++k) pos.push_back(n[i] + k);
    for (std::size_t k = 0; k < ny; ++k) pos.push_back(n[i] + na + k);
    Subspace c = embed(t.constraint(i), amb, pos);
    if (i >= L) {
      Vec extra(amb, 0);
      if (i == L) {
        std::copy(s_out.begin(), s_out.end(), extra.begin());
      } else {
        extra[n[i] - 1] = 1;
      }
      if (next == 0) {
        std::copy(s_in.begin(), s_in.end(), extra.begin() + static_cast<std::ptrdiff_t>(n[i] + na));
      } else {
        extra[amb - 1] = 1;
      }
      c = sum(c, Subspace::span(f, amb, std::vector<Vec>{extra}));
    }
    cs.push_back(std::move(c));
  }
  Trellis expanded(f, t.symbol_dims(), n, std::move(cs));
  require_same_code(t, expanded, "zero-run expansion");
  if (behavior(expanded).dim() != behavior(t).dim() + 1) throw InternalError("zero-run expansion did not add one trajectory");
  for (std::size_t i = L + 1; i + 1 < m; ++i) {
    const auto& c = expanded.constraint(i);
    const std::size_t in_new = n[i] - 1, out_new = c.ambient() - 1;
    for (std::size_t r = 0; r < c.dim(); ++r) {
      if (c.basis().at(r, in_new) != c.basis().at(r, out_new)) {
        throw InternalError("expanded constraint " + std::to_string(i) + " mixes the adjoined coordinate unevenly");
      }
    }
  }

  // Step 2: X = Y + Z inside S+_{m-1}, avoiding the adjoined state.
  const std::size_t last = m - 1;
  const Subspace T = transition_spaces(expanded, Span::make(L, tlen - 1, m)).T;
  const Subspace y = cross_section(T, range(n[L], n[last]));
  Vec tilde(n[last], 0);
  tilde.back() = 1;
  if (y.contains(tilde)) throw InternalError("adjoined state is reachable from zero; Condition A is violated");
  const Subspace y_plus = sum(y, Subspace::span(f, n[last], std::vector<Vec>{tilde}));
  const Subspace z = complement(y_plus, Subspace::full(f, n[last]));
  const Subspace x = sum(y, z);
  Trellis cur = trim_to(expanded, last, x);
  require_same_code(t, cur, "zero-run trim of the last state space");

  // Step 3: cascade trims back to L+1.
  for (std::size_t i = last; i-- > L + 1;) {
    const Subspace reach = project(cur.constraint(i), cur.in_state_coords(i));
    if (reach.dim() >= cur.state_dim(i)) throw InternalError("zero-run cascade did not shrink S_" + std::to_string(i));
    cur = trim_to(cur, i, reach);
    require_same_code(t, cur, "zero-run cascade trim");
  }
  Trellis conservative = cur;

  // Final trim at the fragment end.
  const Subspace reach = project(cur.constraint(L), cur.in_state_coords(L));
  if (reach.dim() >= cur.state_dim(L)) throw InternalError("zero-run result is trim at the fragment end");
  Trellis strict = trim_to(cur, L, reach);
  require_same_code(t, strict, "zero-run final trim");
  return {std::move(expanded), x, std::move(conservative), std::move(strict)};
}

}  // namespace

ZeroRun zero_run_reduce(const Trellis& t, std::size_t j, std::size_t tlen) {
  require_valid(t);
  const std::size_t m = t.length();
  if (tlen < 2 || tlen + 1 > m) throw PreconditionError("zero-run reduction needs 2 <= t <= m-1");
  if (!is_tpoc(t)) throw PreconditionError("zero-run reduction needs a trim, proper, observable, controllable trellis");
  j %= m;
  const std::size_t L = m - tlen;
  const Trellis r0 = rotate(t, j);
  const Subspace u = transition_spaces(r0, Span::make(0, L, m)).U;
  if (u.is_zero()) {
    throw PreconditionError("fragment " + Span::make(j, L, m).str() + " is observable");
  }
  const std::size_t n0 = r0.state_dim(0);
  std::vector<std::pair<Vec, Vec>> witnesses;
  for (const auto& e : u.elements()) {
    if (std::all_of(e.begin(), e.end(), [](Elem x) { return x == 0; })) continue;
    witnesses.emplace_back(Vec(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n0)),
                           Vec(e.begin() + static_cast<std::ptrdiff_t>(n0), e.end()));
  }
  std::optional<std::pair<Vec, Vec>> chosen;
  bool reversed = false;
  for (const auto& w : witnesses) {
    if (condition_a(r0, tlen, w.first, w.second)) {
      chosen = w;
      break;
    }
  }
  if (!chosen) {
    for (const auto& w : witnesses) {
      if (condition_a_prime(r0, tlen, w.first, w.second)) {
        chosen = w;
        reversed = true;
        break;
      }
    }
  }
  if (!chosen) {
    throw PreconditionError("no unobservable path on " + Span::make(j, L, m).str() + " satisfies Condition A or A'");
  }
  const Trellis view = reversed ? rotate(reverse(r0), tlen) : r0;
  const Vec& s_in = reversed ? chosen->second : chosen->first;
  const Vec& s_out = reversed ? chosen->first : chosen->second;
  if (!condition_a(view, tlen, s_in, s_out)) throw InternalError("time reversal did not turn Condition A' into A");
  Core core = zero_run_core(view, tlen, s_in, s_out);
  auto back = [&](const Trellis& w) {
    const Trellis r = reversed ? reverse(rotate(w, m - tlen)) : w;
    return rotate(r, (m - j) % m);
  };
  ZeroRun out{j, tlen, reversed, chosen->first, chosen->second, core.x, back(core.expanded), back(core.conservative),
              back(core.strict)};
  return out;
}

std::optional<ZeroRun> find_zero_run(const Trellis& t, std::size_t tlen) {
  const std::size_t m = t.length();
  if (tlen < 2 || tlen + 1 > m || !is_tpoc(t)) return std::nullopt;
  for (std::size_t j = 0; j < m; ++j) {
    if (is_jk_observable(t, Span::make(j, m - tlen, m))) continue;
    try {
      return zero_run_reduce(t, j, tlen);
    } catch (const PreconditionError&) {
    }
  }
  return std::nullopt;
}

Trellis apply_op(const Trellis& t, const Op& op) {
  const Trellis base = op.dual ? dualize(t) : t;
  auto idx = [&]() {
    if (!op.index) throw PreconditionError("operation '" + op.name + "' needs an index");
    return *op.index % t.length();
  };
  auto rows_in = [&](std::size_t amb) { return Subspace::span(t.field(), amb, op.rows); };
  Trellis r = [&]() -> Trellis {
    if (op.name == "trim") return trim_to(base, idx(), rows_in(base.state_dim(idx())));
    if (op.name == "merge") return merge_to(base, idx(), rows_in(base.state_dim(idx())));
    if (op.name == "set-constraint") return base.with_constraint(idx(), rows_in(base.constraint_ambient(idx())));
    if (op.name == "state-trim") return trim_to(base, idx(), used_states(base, idx()));
    if (op.name == "branch-trim") return branch_trim(base, idx());
    if (op.name == "unobs-trim") return unobs_trim(base, op.index).result;
    if (op.name == "two-reduction") return two_reduction_m1(base).primal;
    if (op.name == "zero-run") {
      if (op.len == 0 || op.len >= base.length()) throw PreconditionError("zero-run fragment length out of range");
      auto z = zero_run_reduce(base, op.start, base.length() - op.len);
      switch (op.stage) {
        case ZeroRunStage::expand:
          return z.expanded;
        case ZeroRunStage::conservative:
          return z.conservative;
        case ZeroRunStage::strict:
          return z.strict;
      }
    }
    throw PreconditionError("unknown operation '" + op.name + "'");
  }();
  return op.dual ? dualize(r) : r;
}

DimProfile dim_profile(const Trellis& t) { return {t.state_dims(), t.constraint_dims()}; }

Span changed_interval(const Trellis& before, const Trellis& after) {
  const std::size_t m = before.length();
  if (after.length() != m) throw std::invalid_argument("changed_interval: lengths differ");
  std::vector<std::size_t> changed;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(before.constraint(i) == after.constraint(i))) changed.push_back(i);
  }
  if (changed.empty()) return Span::make(0, 0, m);
  // drop the largest circular run of unchanged constraints
  std::size_t best_gap = 0, best_start = changed.front();
  for (std::size_t r = 0; r < changed.size(); ++r) {
    const std::size_t here = changed[r], next = changed[(r + 1) % changed.size()];
    const std::size_t gap = (next + m - here - 1) % m;
    if (changed.size() == 1) {
      best_gap = m - 1;
      best_start = here;
      break;
    }
    if (gap > best_gap) {
      best_gap = gap;
      best_start = next;
    }
  }
  return Span::make(best_start, m - best_gap, m);
}

ReductionStep record_step(const Trellis& before, const Trellis& after, const Op& op, std::string witness) {
  require_same_code(before, after, ("step '" + op.name + "'").c_str());
  ReductionStep s;
  s.op = op;
  s.interval = changed_interval(before, after);
  s.before = dim_profile(before);
  s.after = dim_profile(after);
  s.strict = false;
  s.reduction = s.conservative = true;
  for (std::size_t i = 0; i < before.length(); ++i) {
    if (s.after.states[i] < s.before.states[i]) s.strict = true;
    if (s.after.states[i] > s.before.states[i]) s.reduction = false;
    if (s.after.constraints[i] > s.before.constraints[i]) s.conservative = false;
  }
  s.witness = std::move(witness);
  return s;
}

}  // namespace trellis_lab
