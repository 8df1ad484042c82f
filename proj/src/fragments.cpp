#include "trellis_lab/fragments.hpp"

#include <numeric>

#include "trellis_lab/errors.hpp"

namespace trellis_lab {

namespace {

std::vector<std::size_t> range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), first);
  return v;
}

Subspace equality(const Field& f, std::size_t n) {
  Mat m(n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    m.at(k, k) = 1;
    m.at(k, n + k) = 1;
  }
  return Subspace::span(f, 2 * n, m);
}

Subspace state_projection(const Trellis& t, std::size_t i) {
  auto coords = t.in_state_coords(i);
  const auto out = t.out_state_coords(i);
  coords.insert(coords.end(), out.begin(), out.end());
  return project(t.constraint(i), coords);
}

Subspace state_cross_section(const Trellis& t, std::size_t i) {
  auto coords = t.in_state_coords(i);
  const auto out = t.out_state_coords(i);
  coords.insert(coords.end(), out.begin(), out.end());
  return cross_section(t.constraint(i), coords);
}

Subspace negate_second_block(const Subspace& s, std::size_t nx) {
  const Field& f = s.field();
  Mat m = Mat::identity(s.ambient());
  for (std::size_t k = nx; k < s.ambient(); ++k) m.at(k, k) = f.neg(1);
  return image(s, m);
}

}  // namespace

std::size_t Fragment::symbol_total() const {
  return std::accumulate(symbol_dims.begin(), symbol_dims.end(), std::size_t{0});
}

std::vector<std::size_t> Fragment::state_coords() const { return range(symbol_total(), in_dim + out_dim); }

Fragment fragment(const Trellis& t, const Span& iv) {
  require_valid(t);
  if (iv.m != t.length() || iv.len > iv.m) throw PreconditionError("interval does not fit the trellis length");
  const Field& f = t.field();
  Fragment fr;
  fr.interval = iv;
  fr.in_dim = t.state_dim(iv.start);
  fr.out_dim = t.state_dim(iv.end());
  if (iv.len == 0) {
    fr.internal = equality(f, fr.in_dim);
    fr.external = fr.internal;
    return fr;
  }
  std::vector<std::size_t> sym_off, slot_off;
  std::size_t total_sym = 0;
  for (std::size_t r = 0; r < iv.len; ++r) {
    sym_off.push_back(total_sym);
    fr.symbol_dims.push_back(t.symbol_dim(iv.at(r)));
    total_sym += fr.symbol_dims.back();
  }
  std::size_t off = total_sym;
  for (std::size_t r = 0; r <= iv.len; ++r) {
    slot_off.push_back(off);
    off += t.state_dim(iv.start + r);
  }
  const std::size_t n = off;
  Mat checks(0, n);
  for (std::size_t r = 0; r < iv.len; ++r) {
    const std::size_t i = iv.at(r);
    std::vector<std::size_t> coords;
    for (std::size_t k = 0; k < t.state_dim(i); ++k) coords.push_back(slot_off[r] + k);
    for (std::size_t k = 0; k < t.symbol_dim(i); ++k) coords.push_back(sym_off[r] + k);
    for (std::size_t k = 0; k < t.state_dim(i + 1); ++k) coords.push_back(slot_off[r + 1] + k);
    const Subspace h = orthogonal(t.constraint(i));
    for (std::size_t q = 0; q < h.dim(); ++q) {
      Vec row(n, 0);
      for (std::size_t c = 0; c < coords.size(); ++c) row[coords[c]] = f.add(row[coords[c]], h.basis().at(q, c));
      checks.append_row(row);
    }
  }
  fr.internal = kernel(f, checks);
  auto ext = range(0, total_sym);
  for (std::size_t k = 0; k < fr.in_dim; ++k) ext.push_back(slot_off[0] + k);
  for (std::size_t k = 0; k < fr.out_dim; ++k) ext.push_back(slot_off[iv.len] + k);
  fr.external = project(fr.internal, ext);
  return fr;
}

TransitionSpaces transition_spaces(const Fragment& f) {
  const auto coords = f.state_coords();
  return {project(f.external, coords), cross_section(f.external, coords)};
}

Subspace compose(const Subspace& r, std::size_t nx, std::size_t ny, const Subspace& q, std::size_t nz) {
  if (r.ambient() != nx + ny || q.ambient() != ny + nz) throw std::invalid_argument("compose: block sizes");
  const Field& f = r.field();
  const std::size_t n = nx + ny + nz;
  Subspace left = embed(r, n, range(0, nx + ny));
  left = sum(left, embed(Subspace::full(f, nz), n, range(nx + ny, nz)));
  Subspace right = embed(q, n, range(nx, ny + nz));
  right = sum(right, embed(Subspace::full(f, nx), n, range(0, nx)));
  auto keep = range(0, nx);
  for (std::size_t k = 0; k < nz; ++k) keep.push_back(nx + ny + k);
  return project(intersection(left, right), keep);
}

Subspace swap_blocks(const Subspace& s, std::size_t nx, std::size_t ny) {
  if (s.ambient() != nx + ny) throw std::invalid_argument("swap_blocks: block sizes");
  std::vector<std::size_t> pos;
  for (std::size_t k = 0; k < nx; ++k) pos.push_back(ny + k);
  for (std::size_t k = 0; k < ny; ++k) pos.push_back(k);
  return embed(s, nx + ny, pos);
}

TransitionSpaces transition_spaces(const Trellis& t, const Span& iv) {
  require_valid(t);
  if (iv.m != t.length() || iv.len > iv.m) throw PreconditionError("interval does not fit the trellis length");
  const std::size_t nj = t.state_dim(iv.start);
  if (iv.len == 0) {
    const Subspace eq = equality(t.field(), nj);
    return {eq, eq};
  }
  TransitionSpaces ts{state_projection(t, iv.start), state_cross_section(t, iv.start)};
  for (std::size_t r = 1; r < iv.len; ++r) {
    const std::size_t i = iv.at(r);
    ts.T = compose(ts.T, nj, t.state_dim(i), state_projection(t, i), t.state_dim(i + 1));
    ts.U = compose(ts.U, nj, t.state_dim(i), state_cross_section(t, i), t.state_dim(i + 1));
  }
  return ts;
}

bool is_jk_observable(const Trellis& t, const Span& iv, ObservabilityMode mode) {
  const auto ts = transition_spaces(t, iv);
  if (mode == ObservabilityMode::plain) return ts.U.is_zero();
  const Subspace su = unobservable_states(t);
  const std::size_t base = t.total_symbol_dim();
  std::vector<std::size_t> coords;
  for (std::size_t k = 0; k < t.state_dim(iv.start); ++k) coords.push_back(t.state_offset(iv.start) - base + k);
  for (std::size_t k = 0; k < t.state_dim(iv.end()); ++k) coords.push_back(t.state_offset(iv.end()) - base + k);
  return ts.U == project(su, coords);
}

bool is_jk_controllable(const Trellis& t, const Span& iv) { return transition_spaces(t, iv).T.is_full(); }

namespace {

void profile_into(const Trellis& t, std::vector<bool>& obs, std::vector<bool>& ctl) {
  const std::size_t m = t.length();
  obs.assign(m, true);
  ctl.assign(m, true);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t nj = t.state_dim(j);
    TransitionSpaces ts{state_projection(t, j), state_cross_section(t, j)};
    for (std::size_t len = 1; len <= m; ++len) {
      if (len > 1) {
        const std::size_t i = (j + len - 1) % m;
        ts.T = compose(ts.T, nj, t.state_dim(i), state_projection(t, i), t.state_dim(i + 1));
        ts.U = compose(ts.U, nj, t.state_dim(i), state_cross_section(t, i), t.state_dim(i + 1));
      }
      if (!ts.U.is_zero()) obs[len - 1] = false;
      if (!ts.T.is_full()) ctl[len - 1] = false;
    }
  }
}

}  // namespace

TProfile t_observability_profile(const Trellis& t) {
  require_valid(t);
  TProfile p;
  profile_into(t, p.observable, p.controllable);
  profile_into(dualize(t), p.dual_observable, p.dual_controllable);
  return p;
}

bool is_t_observable(const Trellis& t, std::size_t len) {
  for (std::size_t j = 0; j < t.length(); ++j) {
    if (!is_jk_observable(t, Span::make(j, len, t.length()))) return false;
  }
  return true;
}

bool is_t_controllable(const Trellis& t, std::size_t len) {
  for (std::size_t j = 0; j < t.length(); ++j) {
    if (!is_jk_controllable(t, Span::make(j, len, t.length()))) return false;
  }
  return true;
}

bool is_fragment_trim(const Trellis& t, const Span& iv) {
  const Subspace here = transition_spaces(t, iv).T;
  const Span other = iv.complement();
  const Subspace there = transition_spaces(t, other).T;
  const Subspace swapped = swap_blocks(there, t.state_dim(other.start), t.state_dim(other.end()));
  return swapped.contains(here);
}

FragmentDuality fragment_duality(const Trellis& t, const Span& iv) {
  FragmentDuality fd;
  const Subspace dual_T = transition_spaces(dualize(t), iv).T;
  fd.dual_side = negate_second_block(dual_T, t.state_dim(iv.start));
  fd.primal_side = orthogonal(transition_spaces(t, iv).U);
  fd.equal = fd.dual_side == fd.primal_side;
  return fd;
}

FragmentDuality check_fragment_duality(const Trellis& t, const Span& iv) {
  auto fd = fragment_duality(t, iv);
  if (!fd.equal) throw InternalError("fragment duality fails on interval " + iv.str());
  return fd;
}

}  // namespace trellis_lab
