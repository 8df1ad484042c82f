#include "trellis_lab/trellis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "trellis_lab/errors.hpp"

namespace trellis_lab {

Span Span::make(std::size_t start, std::size_t len, std::size_t m) {
  if (m == 0) throw std::invalid_argument("span on an empty index set");
  if (len > m) throw std::invalid_argument("span length " + std::to_string(len) + " exceeds " + std::to_string(m));
  return {start % m, len, m};
}

Span Span::closed(std::size_t first, std::size_t last, std::size_t m) {
  if (m == 0) throw std::invalid_argument("span on an empty index set");
  first %= m;
  last %= m;
  return {first, (last + m - first) % m + 1, m};
}

std::string Span::str() const { return std::to_string(start) + ":" + std::to_string(len); }

Trellis::Trellis(Field field, std::vector<std::size_t> symbol_dims, std::vector<std::size_t> state_dims,
                 std::vector<Subspace> constraints)
    : field_(field),
      symbol_dims_(std::move(symbol_dims)),
      state_dims_(std::move(state_dims)),
      constraints_(std::move(constraints)) {
  if (symbol_dims_.empty()) throw std::invalid_argument("trellis length must be positive");
  if (state_dims_.size() != symbol_dims_.size() || constraints_.size() != symbol_dims_.size()) {
    throw std::invalid_argument("trellis: per-index lists have different lengths");
  }
}

std::vector<std::size_t> Trellis::constraint_dims() const {
  std::vector<std::size_t> out;
  for (const auto& c : constraints_) out.push_back(c.dim());
  return out;
}

std::size_t Trellis::constraint_ambient(std::size_t i) const {
  return state_dim(i) + symbol_dim(i) + state_dim(i + 1);
}

namespace {

std::vector<std::size_t> iota_from(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), first);
  return v;
}

}  // namespace

std::vector<std::size_t> Trellis::in_state_coords(std::size_t i) const { return iota_from(0, state_dim(i)); }

std::vector<std::size_t> Trellis::symbol_coords(std::size_t i) const {
  return iota_from(state_dim(i), symbol_dim(i));
}

std::vector<std::size_t> Trellis::out_state_coords(std::size_t i) const {
  return iota_from(state_dim(i) + symbol_dim(i), state_dim(i + 1));
}

std::size_t Trellis::total_symbol_dim() const {
  return std::accumulate(symbol_dims_.begin(), symbol_dims_.end(), std::size_t{0});
}

std::size_t Trellis::total_state_dim() const {
  return std::accumulate(state_dims_.begin(), state_dims_.end(), std::size_t{0});
}

std::size_t Trellis::symbol_offset(std::size_t i) const {
  i %= length();
  return std::accumulate(symbol_dims_.begin(), symbol_dims_.begin() + static_cast<std::ptrdiff_t>(i), std::size_t{0});
}

std::size_t Trellis::state_offset(std::size_t i) const {
  i %= length();
  return total_symbol_dim() +
         std::accumulate(state_dims_.begin(), state_dims_.begin() + static_cast<std::ptrdiff_t>(i), std::size_t{0});
}

std::vector<std::size_t> Trellis::branch_coords(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < state_dim(i); ++k) out.push_back(state_offset(i) + k);
  for (std::size_t k = 0; k < symbol_dim(i); ++k) out.push_back(symbol_offset(i) + k);
  for (std::size_t k = 0; k < state_dim(i + 1); ++k) out.push_back(state_offset(i + 1) + k);
  return out;
}

std::vector<std::size_t> Trellis::all_symbol_coords() const { return iota_from(0, total_symbol_dim()); }

std::vector<std::size_t> Trellis::all_state_coords() const {
  return iota_from(total_symbol_dim(), total_state_dim());
}

Trellis Trellis::with_constraint(std::size_t i, Subspace c) const {
  Trellis out = *this;
  out.constraints_[i % length()] = std::move(c);
  return out;
}

std::vector<std::string> validate(const Trellis& t) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < t.length(); ++i) {
    const auto& c = t.constraint(i);
    if (!(c.field() == t.field())) problems.push_back("constraint " + std::to_string(i) + " is over a different field");
    if (c.ambient() != t.constraint_ambient(i)) {
      problems.push_back("constraint " + std::to_string(i) + " has ambient dimension " + std::to_string(c.ambient()) +
                         ", expected " + std::to_string(t.constraint_ambient(i)));
    }
  }
  return problems;
}

void require_valid(const Trellis& t) {
  const auto problems = validate(t);
  if (problems.empty()) return;
  std::string msg = "invalid trellis:";
  for (const auto& p : problems) msg += " " + p + ";";
  throw PreconditionError(msg);
}

Trellis elementary(const Field& f, const Generator& g, const std::vector<std::size_t>& symbol_dims) {
  const std::size_t m = symbol_dims.size();
  if (m == 0) throw PreconditionError("elementary trellis of length 0");
  if (g.span.m != m) throw PreconditionError("generator span is on Z_" + std::to_string(g.span.m));
  if (g.span.len == 0) throw PreconditionError("generator span must be nonempty");
  const std::size_t total = std::accumulate(symbol_dims.begin(), symbol_dims.end(), std::size_t{0});
  if (g.word.size() != total) throw PreconditionError("generator word has the wrong length");

  std::vector<std::size_t> offsets(m, 0);
  for (std::size_t i = 1; i < m; ++i) offsets[i] = offsets[i - 1] + symbol_dims[i - 1];
  bool nonzero = false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < symbol_dims[i]; ++k) {
      if (g.word[offsets[i] + k] % f.p() == 0) continue;
      nonzero = true;
      if (!g.span.covers(i)) {
        throw PreconditionError("generator support leaves span " + g.span.str() + " at index " + std::to_string(i));
      }
    }
  }
  if (!nonzero) throw PreconditionError("generator word is zero");

  std::vector<std::size_t> state_dims(m, 0);
  for (std::size_t r = 1; r < g.span.len; ++r) state_dims[g.span.at(r)] = 1;

  std::vector<Subspace> constraints;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const std::size_t amb = state_dims[i] + symbol_dims[i] + state_dims[next];
    if (!g.span.covers(i)) {
      constraints.emplace_back(f, amb);
      continue;
    }
    Vec v;
    if (state_dims[i] == 1) v.push_back(1);
    for (std::size_t k = 0; k < symbol_dims[i]; ++k) v.push_back(g.word[offsets[i] + k] % f.p());
    if (state_dims[next] == 1) v.push_back(1);
    constraints.push_back(Subspace::span(f, amb, std::vector<Vec>{v}));
  }
  return Trellis(f, symbol_dims, std::move(state_dims), std::move(constraints));
}

Trellis product(const std::vector<Trellis>& ts) {
  if (ts.empty()) throw PreconditionError("product of no trellises");
  const Field f = ts.front().field();
  const std::size_t m = ts.front().length();
  const auto& symbol_dims = ts.front().symbol_dims();
  for (const auto& t : ts) {
    if (!(t.field() == f) || t.length() != m || t.symbol_dims() != symbol_dims) {
      throw PreconditionError("product constituents disagree on field, length or symbol dimensions");
    }
  }
  std::vector<std::size_t> state_dims(m, 0);
  for (const auto& t : ts) {
    for (std::size_t i = 0; i < m; ++i) state_dims[i] += t.state_dim(i);
  }
  std::vector<Subspace> constraints;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const std::size_t amb = state_dims[i] + symbol_dims[i] + state_dims[next];
    Subspace c(f, amb);
    std::size_t off_in = 0, off_out = 0;
    for (const auto& t : ts) {
      std::vector<std::size_t> pos;
      for (std::size_t k = 0; k < t.state_dim(i); ++k) pos.push_back(off_in + k);
      for (std::size_t k = 0; k < symbol_dims[i]; ++k) pos.push_back(state_dims[i] + k);
      for (std::size_t k = 0; k < t.state_dim(next); ++k) pos.push_back(state_dims[i] + symbol_dims[i] + off_out + k);
      c = sum(c, embed(t.constraint(i), amb, pos));
      off_in += t.state_dim(i);
      off_out += t.state_dim(next);
    }
    constraints.push_back(std::move(c));
  }
  return Trellis(f, symbol_dims, std::move(state_dims), std::move(constraints));
}

Trellis product_of_generators(const Field& f, const std::vector<std::size_t>& symbol_dims,
                              const std::vector<Generator>& gens) {
  if (gens.empty()) {
    std::vector<Subspace> constraints;
    for (auto a : symbol_dims) constraints.emplace_back(f, a);
    return Trellis(f, symbol_dims, std::vector<std::size_t>(symbol_dims.size(), 0), std::move(constraints));
  }
  std::vector<Trellis> parts;
  for (const auto& g : gens) parts.push_back(elementary(f, g, symbol_dims));
  return product(parts);
}

Subspace behavior(const Trellis& t) {
  require_valid(t);
  const Field& f = t.field();
  const std::size_t n = t.behavior_ambient();
  Mat checks(0, n);
  for (std::size_t i = 0; i < t.length(); ++i) {
    const auto coords = t.branch_coords(i);
    const Subspace h = orthogonal(t.constraint(i));
    for (std::size_t r = 0; r < h.dim(); ++r) {
      Vec row(n, 0);
      for (std::size_t c = 0; c < coords.size(); ++c) row[coords[c]] = f.add(row[coords[c]], h.basis().at(r, c));
      checks.append_row(row);
    }
  }
  return kernel(f, checks);
}

Subspace realized_code(const Trellis& t) { return project(behavior(t), t.all_symbol_coords()); }

Subspace unobservable_states(const Trellis& t) { return cross_section(behavior(t), t.all_state_coords()); }

Subspace dual_constraint(const Subspace& c, std::size_t in_dim, std::size_t symbol_dim, std::size_t out_dim) {
  if (c.ambient() != in_dim + symbol_dim + out_dim) throw std::invalid_argument("dual_constraint: block sizes");
  const Field& f = c.field();
  const Subspace perp = orthogonal(c);
  Mat m = perp.basis();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = in_dim + symbol_dim; k < c.ambient(); ++k) m.at(r, k) = f.neg(m.at(r, k));
  }
  return Subspace::span(f, c.ambient(), m);
}

Trellis dualize(const Trellis& t) {
  require_valid(t);
  std::vector<Subspace> constraints;
  for (std::size_t i = 0; i < t.length(); ++i) {
    constraints.push_back(dual_constraint(t.constraint(i), t.state_dim(i), t.symbol_dim(i), t.state_dim(i + 1)));
  }
  return Trellis(t.field(), t.symbol_dims(), t.state_dims(), std::move(constraints));
}

Trellis rotate(const Trellis& t, std::size_t shift) {
  const std::size_t m = t.length();
  std::vector<std::size_t> a, n;
  std::vector<Subspace> c;
  for (std::size_t i = 0; i < m; ++i) {
    a.push_back(t.symbol_dim(i + shift));
    n.push_back(t.state_dim(i + shift));
    c.push_back(t.constraint(i + shift));
  }
  return Trellis(t.field(), std::move(a), std::move(n), std::move(c));
}

Trellis reverse(const Trellis& t) {
  const std::size_t m = t.length();
  std::vector<std::size_t> a, n;
  std::vector<Subspace> c;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t src = (2 * m - i - 1) % m;  // -i-1 mod m
    n.push_back(t.state_dim((m - i) % m));
    a.push_back(t.symbol_dim(src));
    // swap the state blocks of C_src: (x, a, y) -> (y, a, x)
    const std::size_t nx = t.state_dim(src), na = t.symbol_dim(src), ny = t.state_dim(src + 1);
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k < nx; ++k) pos.push_back(ny + na + k);
    for (std::size_t k = 0; k < na; ++k) pos.push_back(ny + k);
    for (std::size_t k = 0; k < ny; ++k) pos.push_back(k);
    c.push_back(embed(t.constraint(src), nx + na + ny, pos));
  }
  return Trellis(t.field(), std::move(a), std::move(n), std::move(c));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::undecided:
      return "undecided";
  }
  return "undecided";
}

namespace {

Mat block_map(const Mat& in, std::size_t symbol_dim, const Mat& out) {
  const std::size_t rows = in.rows() + symbol_dim + out.rows();
  const std::size_t cols = in.cols() + symbol_dim + out.cols();
  Mat m(rows, cols);
  for (std::size_t r = 0; r < in.rows(); ++r) {
    for (std::size_t c = 0; c < in.cols(); ++c) m.at(r, c) = in.at(r, c);
  }
  for (std::size_t k = 0; k < symbol_dim; ++k) m.at(in.rows() + k, in.cols() + k) = 1;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) m.at(in.rows() + symbol_dim + r, in.cols() + symbol_dim + c) = out.at(r, c);
  }
  return m;
}

std::size_t gl_order(std::size_t n, std::uint32_t p, std::size_t cap) {
  std::size_t pn = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (pn > cap) return cap + 1;
    pn *= p;
  }
  std::size_t order = 1, pk = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t factor = pn - pk;
    if (factor != 0 && order > cap / factor) return cap + 1;
    order *= factor;
    pk *= p;
  }
  return order;
}

std::vector<Mat> general_linear(const Field& f, std::size_t n) {
  std::vector<Mat> out;
  const std::size_t cells = n * n;
  std::vector<Elem> digits(cells, 0);
  while (true) {
    Mat m(n, n);
    for (std::size_t k = 0; k < cells; ++k) m.at(k / n, k % n) = digits[k];
    if (rank(f, m) == n) out.push_back(std::move(m));
    std::size_t k = cells;
    while (k > 0) {
      --k;
      if (++digits[k] < f.p()) break;
      digits[k] = 0;
      if (k == 0) return out;
    }
    if (cells == 0) return out;
  }
}

// Cheap necessary conditions before the search.
std::string invariant_mismatch(const Trellis& a, const Trellis& b) {
  if (!(a.field() == b.field())) return "different fields";
  if (a.length() != b.length()) return "different lengths";
  if (a.symbol_dims() != b.symbol_dims()) return "different symbol dimensions";
  if (a.state_dims() != b.state_dims()) return "different state dimensions";
  if (a.constraint_dims() != b.constraint_dims()) return "different branch dimensions";
  for (std::size_t i = 0; i < a.length(); ++i) {
    const auto in = a.in_state_coords(i), out = a.out_state_coords(i);
    if (project(a.constraint(i), in).dim() != project(b.constraint(i), in).dim() ||
        project(a.constraint(i), out).dim() != project(b.constraint(i), out).dim() ||
        cross_section(a.constraint(i), in).dim() != cross_section(b.constraint(i), in).dim() ||
        cross_section(a.constraint(i), out).dim() != cross_section(b.constraint(i), out).dim()) {
      return "constraint " + std::to_string(i) + " has different projection or cross-section dimensions";
    }
  }
  if (!(realized_code(a) == realized_code(b))) return "different realized codes";
  return {};
}

}  // namespace

Trellis apply_state_maps(const Trellis& t, const std::vector<Mat>& maps) {
  const std::size_t m = t.length();
  if (maps.size() != m) throw std::invalid_argument("apply_state_maps: one map per index required");
  std::vector<std::size_t> n;
  for (std::size_t i = 0; i < m; ++i) {
    if (maps[i].rows() != t.state_dim(i)) throw std::invalid_argument("apply_state_maps: map has wrong row count");
    n.push_back(maps[i].cols());
  }
  std::vector<Subspace> c;
  for (std::size_t i = 0; i < m; ++i) {
    c.push_back(image(t.constraint(i), block_map(maps[i], t.symbol_dim(i), maps[(i + 1) % m])));
  }
  return Trellis(t.field(), t.symbol_dims(), std::move(n), std::move(c));
}

Isomorphism is_isomorphic(const Trellis& a, const Trellis& b, std::size_t gl_cap) {
  require_valid(a);
  require_valid(b);
  Isomorphism result;
  if (auto why = invariant_mismatch(a, b); !why.empty()) {
    result.reason = why;
    return result;
  }
  const Field& f = a.field();
  const std::size_t m = a.length();
  for (std::size_t i = 0; i < m; ++i) {
    if (gl_order(a.state_dim(i), f.p(), gl_cap) > gl_cap) {
      result.verdict = Verdict::undecided;
      result.reason = "state space " + std::to_string(i) + " has too many automorphisms to search";
      return result;
    }
  }
  std::vector<std::vector<Mat>> candidates(m);
  {
    std::vector<std::vector<Mat>> by_dim;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t n = a.state_dim(i);
      if (by_dim.size() <= n) by_dim.resize(n + 1);
      if (by_dim[n].empty()) by_dim[n] = general_linear(f, n);
      candidates[i] = by_dim[n];
    }
  }

  std::vector<std::size_t> choice(m, 0);
  std::size_t budget = 5'000'000;
  auto fits = [&](std::size_t i, const Mat& in, const Mat& out) {
    return image(a.constraint(i), block_map(in, a.symbol_dim(i), out)) == b.constraint(i);
  };
  // depth-first: pick phi_0, phi_1, ... checking C_{i-1} as soon as phi_i is fixed
  std::size_t depth = 0;
  while (true) {
    if (choice[depth] == candidates[depth].size()) {
      if (depth == 0) {
        result.reason = "no state isomorphism exists";
        return result;
      }
      choice[depth] = 0;
      --depth;
      ++choice[depth];
      continue;
    }
    if (budget-- == 0) {
      result.verdict = Verdict::undecided;
      result.reason = "isomorphism search budget exhausted";
      return result;
    }
    const Mat& phi = candidates[depth][choice[depth]];
    bool ok = depth == 0 || fits(depth - 1, candidates[depth - 1][choice[depth - 1]], phi);
    if (ok && depth == m - 1) ok = fits(m - 1, phi, candidates[0][choice[0]]);
    if (!ok) {
      ++choice[depth];
      continue;
    }
    if (depth == m - 1) break;
    ++depth;
  }
  result.verdict = Verdict::yes;
  for (std::size_t i = 0; i < m; ++i) result.maps.push_back(candidates[i][choice[i]]);
  if (!(apply_state_maps(a, result.maps) == b)) throw InternalError("isomorphism search returned a non-isomorphism");
  return result;
}

}  // namespace trellis_lab
