#include "trellis_lab/spans.hpp"

#include <algorithm>
#include <numeric>

#include "trellis_lab/errors.hpp"

namespace trellis_lab {

namespace {

std::vector<std::size_t> unit_dims(const Subspace& code, std::vector<std::size_t> dims) {
  if (dims.empty()) dims.assign(code.ambient(), 1);
  if (std::accumulate(dims.begin(), dims.end(), std::size_t{0}) != code.ambient()) {
    throw std::invalid_argument("symbol dims do not add up to the code length");
  }
  return dims;
}

std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> off(dims.size() + 1, 0);
  for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
  return off;
}

// Coordinates of positions a, a+1, ..., a+len-1 (mod m), in that order.
std::vector<std::size_t> window(const std::vector<std::size_t>& off, std::size_t a, std::size_t len) {
  const std::size_t m = off.size() - 1;
  std::vector<std::size_t> c;
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t pos = (a + k) % m;
    for (std::size_t x = off[pos]; x < off[pos + 1]; ++x) c.push_back(x);
  }
  return c;
}

bool block_nonzero(const Vec& w, const std::vector<std::size_t>& off, std::size_t pos) {
  for (std::size_t x = off[pos]; x < off[pos + 1]; ++x) {
    if (w[x] != 0) return true;
  }
  return false;
}

// Codewords supported on [a, a+len) that are nonzero at a, sorted.
std::vector<Vec> shortest_words(const Subspace& code, const std::vector<std::size_t>& off, std::size_t a,
                                std::size_t len) {
  const auto coords = window(off, a, len);
  const Subspace local = cross_section(code, coords);
  std::vector<Vec> out;
  for (const Vec& e : local.elements()) {
    Vec w(code.ambient(), 0);
    for (std::size_t k = 0; k < coords.size(); ++k) w[coords[k]] = e[k];
    if (block_nonzero(w, off, a)) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_full_support(const Subspace& code, const std::vector<std::size_t>& dims) {
  const auto mine = span_profile(code, dims);
  const auto dual = span_profile(orthogonal(code), dims);
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (mine.shortest[a] == 0 || dual.shortest[a] == 0) {
      throw PreconditionError("KV-trellises need a code and dual code with full support");
    }
  }
}

std::vector<std::size_t> ends_of(const std::vector<std::size_t>& starts, const SpanProfile& sp, std::size_t m) {
  std::vector<std::size_t> ends;
  for (std::size_t a : starts) ends.push_back((a + sp.shortest[a] - 1) % m);
  return ends;
}

bool all_distinct(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

// Calls visit(generators) for each linearly independent choice; stops when visit returns false.
template <class Visit>
bool for_each_choice(const Field& f, std::size_t ambient, const std::vector<std::vector<Vec>>& cands,
                     std::vector<Vec>& chosen, Visit&& visit) {
  if (chosen.size() == cands.size()) return visit(chosen);
  for (const Vec& w : cands[chosen.size()]) {
    chosen.push_back(w);
    const bool independent = rank(f, Mat::from_rows(ambient, chosen)) == chosen.size();
    const bool go_on = !independent || for_each_choice(f, ambient, cands, chosen, visit);
    chosen.pop_back();
    if (!go_on) return false;
  }
  return true;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Trellis build(const Field& f, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& starts,
              const SpanProfile& sp, const std::vector<Vec>& words) {
  const std::size_t m = dims.size();
  std::vector<Generator> gens;
  for (std::size_t g = 0; g < words.size(); ++g) {
    gens.push_back({words[g], Span::make(starts[g], sp.shortest[starts[g]], m)});
  }
  return product_of_generators(f, dims, gens);
}

}  // namespace

std::size_t span_length(const Vec& word, const std::vector<std::size_t>& symbol_dims) {
  const auto off = offsets_of(symbol_dims);
  const std::size_t m = symbol_dims.size();
  std::vector<bool> nz(m);
  bool any = false;
  for (std::size_t p = 0; p < m; ++p) any |= (nz[p] = block_nonzero(word, off, p));
  if (!any) return 0;
  std::size_t best = m;
  for (std::size_t a = 0; a < m; ++a) {
    if (!nz[a]) continue;
    // the cover starting at a ends at the last nonzero position going around
    std::size_t last = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (nz[(a + k) % m]) last = k;
    }
    best = std::min(best, last + 1);
  }
  return best;
}

SpanProfile span_profile(const Subspace& code, std::vector<std::size_t> symbol_dims) {
  const auto dims = unit_dims(code, std::move(symbol_dims));
  const auto off = offsets_of(dims);
  const std::size_t m = dims.size();
  SpanProfile out;
  out.shortest.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::size_t> first(dims[a]);
    std::iota(first.begin(), first.end(), std::size_t{0});
    for (std::size_t len = 1; len <= m; ++len) {
      const Subspace local = cross_section(code, window(off, a, len));
      if (!project(local, first).is_zero()) {
        out.shortest[a] = len;
        break;
      }
    }
    if (out.shortest[a] != 0 && (out.chi == 0 || out.shortest[a] < out.chi)) out.chi = out.shortest[a];
  }
  return out;
}

Trellis kv_trellis(const Subspace& code, const std::vector<std::size_t>& starts, std::vector<std::size_t> symbol_dims) {
  const auto dims = unit_dims(code, std::move(symbol_dims));
  const std::size_t m = dims.size();
  if (code.is_zero()) throw PreconditionError("the zero code has no generators");
  require_full_support(code, dims);
  if (starts.size() != code.dim()) throw PreconditionError("need one start position per dimension of the code");
  for (std::size_t a : starts) {
    if (a >= m) throw PreconditionError("start position out of range");
  }
  if (!all_distinct(starts)) throw PreconditionError("start positions must be distinct");
  const auto sp = span_profile(code, dims);
  if (!all_distinct(ends_of(starts, sp, m))) throw PreconditionError("shortest spans for these starts share an end");
  const auto off = offsets_of(dims);
  std::vector<std::vector<Vec>> cands;
  for (std::size_t a : starts) cands.push_back(shortest_words(code, off, a, sp.shortest[a]));
  std::optional<std::vector<Vec>> found;
  std::vector<Vec> chosen;
  for_each_choice(code.field(), code.ambient(), cands, chosen, [&](const std::vector<Vec>& words) {
    found = words;
    return false;
  });
  if (!found) throw PreconditionError("shortest-span codewords for these starts are linearly dependent");
  return build(code.field(), dims, starts, sp, *found);
}

std::optional<Trellis> find_kv_trellis(const Subspace& code, std::vector<std::size_t> symbol_dims) {
  const auto dims = unit_dims(code, std::move(symbol_dims));
  const std::size_t m = dims.size();
  const std::size_t k = code.dim();
  if (k == 0 || k > m) return std::nullopt;
  try {
    require_full_support(code, dims);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
  std::vector<std::size_t> starts(k);
  std::iota(starts.begin(), starts.end(), std::size_t{0});
  do {
    try {
      return kv_trellis(code, starts, dims);
    } catch (const PreconditionError&) {
    }
  } while (next_combination(starts, m));
  return std::nullopt;
}

Verdict is_kv(const Trellis& t, std::size_t cap) {
  const Subspace code = realized_code(t);
  const auto& dims = t.symbol_dims();
  const std::size_t m = t.length();
  const std::size_t k = code.dim();
  if (k == 0) throw PreconditionError("the zero code has no generators");
  require_full_support(code, dims);
  if (k > m) return Verdict::no;
  const auto sp = span_profile(code, dims);
  const auto off = offsets_of(dims);
  std::vector<std::vector<Vec>> words(m);
  for (std::size_t a = 0; a < m; ++a) words[a] = shortest_words(code, off, a, sp.shortest[a]);

  std::size_t tried = 0;
  bool undecided = false;
  bool found = false;
  std::vector<std::size_t> starts(k);
  std::iota(starts.begin(), starts.end(), std::size_t{0});
  do {
    if (!all_distinct(ends_of(starts, sp, m))) continue;
    // state dims of a product are fixed by the spans alone
    std::vector<std::size_t> prof(m, 0);
    for (std::size_t a : starts) {
      for (std::size_t i = 1; i < sp.shortest[a]; ++i) ++prof[(a + i) % m];
    }
    if (prof != t.state_dims()) continue;
    std::vector<std::vector<Vec>> cands;
    for (std::size_t a : starts) cands.push_back(words[a]);
    std::vector<Vec> chosen;
    for_each_choice(code.field(), code.ambient(), cands, chosen, [&](const std::vector<Vec>& ws) {
      if (++tried > cap) {
        undecided = true;
        return false;
      }
      const auto iso = is_isomorphic(build(code.field(), dims, starts, sp, ws), t);
      if (iso.verdict == Verdict::yes) {
        found = true;
        return false;
      }
      if (iso.verdict == Verdict::undecided) undecided = true;
      return true;
    });
    if (found) return Verdict::yes;
    if (tried > cap) return Verdict::undecided;
  } while (next_combination(starts, m));
  return undecided ? Verdict::undecided : Verdict::no;
}

}  // namespace trellis_lab
