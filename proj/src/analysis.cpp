#include "trellis_lab/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "trellis_lab/errors.hpp"

namespace trellis_lab {

LocalFlags local_flags(const Trellis& t, std::size_t i) {
  const std::size_t m = t.length();
  i %= m;
  const std::size_t prev = (i + m - 1) % m;
  const auto& before = t.constraint(prev);
  const auto& after = t.constraint(i);
  const auto out = t.out_state_coords(prev);
  const auto in = t.in_state_coords(i);
  LocalFlags f;
  f.trim = project(before, out).is_full() && project(after, in).is_full();
  f.proper = cross_section(before, out).is_zero() && cross_section(after, in).is_zero();
  return f;
}

TrimDetail global_trim_flags(const Trellis& t, const Subspace& b) {
  TrimDetail d;
  d.state_trim = d.branch_trim = true;
  for (std::size_t i = 0; i < t.length(); ++i) {
    std::vector<std::size_t> coords(t.state_dim(i));
    std::iota(coords.begin(), coords.end(), t.state_offset(i));
    const bool st = project(b, coords).is_full();
    const bool bt = project(b, t.branch_coords(i)) == t.constraint(i);
    d.state_trim_at.push_back(st);
    d.branch_trim_at.push_back(bt);
    d.state_trim = d.state_trim && st;
    d.branch_trim = d.branch_trim && bt;
  }
  return d;
}

TrimDetail global_trim_flags(const Trellis& t) { return global_trim_flags(t, behavior(t)); }

bool observable(const Trellis& t) {
  const Subspace b = behavior(t);
  return b.dim() == project(b, t.all_symbol_coords()).dim();
}

ControllabilityAudit controllability(const Trellis& t) {
  ControllabilityAudit a;
  for (const auto& c : t.constraints()) a.sum_constraint_dims += c.dim();
  a.behavior_dim = behavior(t).dim();
  a.sum_state_dims = t.total_state_dim();
  a.controllable = a.sum_constraint_dims == a.behavior_dim + a.sum_state_dims;
  if (a.controllable != observable(dualize(t))) {
    throw InternalError("controllability dimension test disagrees with dual observability");
  }
  return a;
}

bool controllable(const Trellis& t) { return controllability(t).controllable; }

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

constexpr std::size_t kEnumerationCap = std::size_t{1} << 16;

}  // namespace

Connectivity connectivity(const Trellis& t) {
  require_valid(t);
  const std::size_t m = t.length();
  UnionFind uf;
  std::vector<std::map<Vec, std::size_t>> ids(m);
  auto vertex = [&](std::size_t i, Vec s) {
    auto [it, fresh] = ids[i].try_emplace(std::move(s), 0);
    if (fresh) it->second = uf.add();
    return it->second;
  };
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t nx = t.state_dim(i), na = t.symbol_dim(i);
    for (const auto& e : t.constraint(i).elements(kEnumerationCap)) {
      const std::size_t x = vertex(i, Vec(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nx)));
      const std::size_t y = vertex((i + 1) % m, Vec(e.begin() + static_cast<std::ptrdiff_t>(nx + na), e.end()));
      uf.unite(x, y);
    }
  }
  Connectivity c;
  std::vector<bool> root(uf.parent.size(), false);
  for (std::size_t v = 0; v < uf.parent.size(); ++v) root[uf.find(v)] = true;
  c.components = static_cast<std::size_t>(std::count(root.begin(), root.end(), true));
  c.connected = c.components <= 1;
  for (std::size_t i = 0; i < m; ++i) {
    const Subspace full = Subspace::full(t.field(), t.state_dim(i));
    const std::size_t total = full.cardinality();
    if (total > kEnumerationCap) throw UndecidedError("state space too large to enumerate");
    c.isolated_states.push_back(total - ids[i].size());
  }
  return c;
}

bool connected(const Trellis& t) { return connectivity(t).connected; }

MergeTrimStatus merge_trim_status(const Trellis& t) {
  const Trellis d = dualize(t);
  MergeTrimStatus s;
  s.nontrimmable = observable(t) && global_trim_flags(t).state_trim;
  s.nonmergeable = observable(d) && global_trim_flags(d).state_trim;
  return s;
}

PropertyReport analyze(const Trellis& t) {
  require_valid(t);
  PropertyReport r;
  const Subspace b = behavior(t);
  r.behavior_dim = b.dim();
  r.code_dim = project(b, t.all_symbol_coords()).dim();
  r.trim = r.proper = true;
  for (std::size_t i = 0; i < t.length(); ++i) {
    const auto f = local_flags(t, i);
    r.trim_at.push_back(f.trim);
    r.proper_at.push_back(f.proper);
    r.trim = r.trim && f.trim;
    r.proper = r.proper && f.proper;
  }
  const auto d = global_trim_flags(t, b);
  r.state_trim_at = d.state_trim_at;
  r.branch_trim_at = d.branch_trim_at;
  r.state_trim = d.state_trim;
  r.branch_trim = d.branch_trim;
  r.observable = r.behavior_dim == r.code_dim;
  r.audit = controllability(t);
  r.controllable = r.audit.controllable;
  try {
    r.connectivity = connectivity(t);
    r.connected = r.connectivity.connected;
    r.connectivity_known = true;
  } catch (const UndecidedError&) {
    r.connectivity_known = false;
  }
  r.tpoc = r.trim && r.proper && r.observable && r.controllable;
  r.reduced = r.state_trim && r.branch_trim;
  const auto mt = merge_trim_status(t);
  r.nontrimmable = mt.nontrimmable;
  r.nonmergeable = mt.nonmergeable;
  r.unobservable_states = cross_section(b, t.all_state_coords());
  if ((r.unobservable_states.dim() == 0) != r.observable) {
    throw InternalError("unobservable state space disagrees with the dimension test");
  }
  return r;
}

bool is_tpoc(const Trellis& t) {
  for (std::size_t i = 0; i < t.length(); ++i) {
    const auto f = local_flags(t, i);
    if (!f.trim || !f.proper) return false;
  }
  return observable(t) && controllable(t);
}

bool is_conventional_tpoc(const PropertyReport& r, const Trellis& t) {
  if (!r.tpoc) return false;
  for (auto n : t.state_dims()) {
    if (n == 0) return true;
  }
  return false;
}

}  // namespace trellis_lab
