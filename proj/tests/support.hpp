#pragma once

// Shared helpers for the unit and acceptance tests: literal builders,
// random instances, and brute-force oracles that share no code with the
// linear-algebra routines under test.

#include <algorithm>
#include <array>
#include <utility>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trellis_lab/galois.hpp"
#include "trellis_lab/trellis.hpp"

namespace tl_test {

using namespace trellis_lab;

inline Vec v(const std::string& digits) {
  Vec out;
  for (char c : digits) out.push_back(static_cast<Elem>(c - '0'));
  return out;
}

inline Subspace sp(std::uint32_t p, std::size_t n, std::initializer_list<const char*> rows) {
  std::vector<Vec> gens;
  for (auto r : rows) gens.push_back(v(r));
  return Subspace::span(Field(p), n, gens);
}

inline Generator gen(const std::string& word, std::size_t start, std::size_t len) {
  return {v(word), Span::make(start, len, word.size())};
}

inline Trellis binary_product(std::initializer_list<Generator> gens) {
  const std::size_t m = gens.begin()->word.size();
  return product_of_generators(Field(2), std::vector<std::size_t>(m, 1), std::vector<Generator>(gens));
}

// ---- enumeration oracles -------------------------------------------------

inline std::vector<Vec> all_vectors(std::uint32_t p, std::size_t n) {
  std::vector<Vec> out;
  Vec cur(n, 0);
  while (true) {
    out.push_back(cur);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++cur[k] < p) break;
      cur[k] = 0;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

inline Elem dot(std::uint32_t p, const Vec& a, const Vec& b) {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += static_cast<std::uint64_t>(a[k]) * b[k];
  return static_cast<Elem>(acc % p);
}

/// Element set of a subspace, recomputed from its basis by brute force.
inline std::set<Vec> elements_of(const Subspace& s) {
  const auto p = s.field().p();
  std::set<Vec> out;
  for (const auto& coeff : all_vectors(p, s.dim())) {
    Vec x(s.ambient(), 0);
    for (std::size_t r = 0; r < s.dim(); ++r) {
      for (std::size_t k = 0; k < s.ambient(); ++k) x[k] = (x[k] + coeff[r] * s.basis().at(r, k)) % p;
    }
    out.insert(x);
  }
  return out;
}

inline std::set<Vec> brute_orthogonal(const Subspace& s) {
  const auto p = s.field().p();
  const auto elems = elements_of(s);
  std::set<Vec> out;
  for (const auto& x : all_vectors(p, s.ambient())) {
    bool ok = true;
    for (const auto& y : elems) {
      if (dot(p, x, y) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(x);
  }
  return out;
}

struct Trajectory {
  std::vector<Vec> symbols;
  std::vector<Vec> states;
};

/// Every closed path through the trellis, found by walking branch sets.
inline std::vector<Trajectory> brute_paths(const Trellis& t) {
  const std::size_t m = t.length();
  // branch lists: (in-state, symbol, out-state)
  std::vector<std::vector<std::array<Vec, 3>>> branches(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t nx = t.state_dim(i), na = t.symbol_dim(i);
    for (const auto& e : elements_of(t.constraint(i))) {
      branches[i].push_back({Vec(e.begin(), e.begin() + nx), Vec(e.begin() + nx, e.begin() + nx + na),
                             Vec(e.begin() + nx + na, e.end())});
    }
  }
  std::vector<Trajectory> out;
  Trajectory cur;
  std::function<void(std::size_t, const Vec&)> walk = [&](std::size_t i, const Vec& state) {
    if (i == m) {
      if (state == cur.states[0]) out.push_back(cur);
      return;
    }
    for (const auto& b : branches[i]) {
      if (b[0] != state) continue;
      cur.symbols.push_back(b[1]);
      cur.states.push_back(b[0]);
      walk(i + 1, b[2]);
      cur.symbols.pop_back();
      cur.states.pop_back();
    }
  };
  for (const auto& s0 : all_vectors(t.field().p(), t.state_dim(0))) walk(0, s0);
  return out;
}

inline Vec flatten(const std::vector<Vec>& blocks) {
  Vec out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline std::set<Vec> brute_behavior(const Trellis& t) {
  std::set<Vec> out;
  for (const auto& tr : brute_paths(t)) {
    Vec x = flatten(tr.symbols);
    const Vec s = flatten(tr.states);
    x.insert(x.end(), s.begin(), s.end());
    out.insert(x);
  }
  return out;
}

inline std::set<Vec> brute_code(const Trellis& t) {
  std::set<Vec> out;
  for (const auto& tr : brute_paths(t)) out.insert(flatten(tr.symbols));
  return out;
}

/// Branches of C_i that lie on some closed path.
inline std::set<Vec> brute_used_branches(const Trellis& t, std::size_t i) {
  std::set<Vec> out;
  for (const auto& tr : brute_paths(t)) {
    Vec b = tr.states[i];
    b.insert(b.end(), tr.symbols[i].begin(), tr.symbols[i].end());
    const auto& next = tr.states[(i + 1) % t.length()];
    b.insert(b.end(), next.begin(), next.end());
    out.insert(b);
  }
  return out;
}

inline std::set<Vec> brute_used_states(const Trellis& t, std::size_t i) {
  std::set<Vec> out;
  for (const auto& tr : brute_paths(t)) out.insert(tr.states[i]);
  return out;
}

/// Transition spaces of [start, start+len) by walking explicit branch sets:
/// first = all (s_j, s_k) joined by a path, second = those joined by an all-zero-symbol path.
inline std::pair<std::set<Vec>, std::set<Vec>> brute_transitions(const Trellis& t, std::size_t start, std::size_t len) {
  const std::size_t m = t.length();
  std::pair<std::set<Vec>, std::set<Vec>> out;
  const auto states = all_vectors(t.field().p(), t.state_dim(start));
  if (len == 0) {
    for (const auto& s : states) {
      Vec x = s;
      x.insert(x.end(), s.begin(), s.end());
      out.first.insert(x);
      out.second.insert(x);
    }
    return out;
  }
  std::vector<std::vector<Vec>> elems(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto e = elements_of(t.constraint(i));
    elems[i].assign(e.begin(), e.end());
  }
  std::function<void(std::size_t, const Vec&, const Vec&, bool)> walk = [&](std::size_t r, const Vec& first,
                                                                          const Vec& state, bool zero) {
    if (r == len) {
      Vec x = first;
      x.insert(x.end(), state.begin(), state.end());
      out.first.insert(x);
      if (zero) out.second.insert(x);
      return;
    }
    const std::size_t i = (start + r) % m;
    const std::size_t nx = t.state_dim(i), na = t.symbol_dim(i);
    for (const auto& e : elems[i]) {
      if (!std::equal(state.begin(), state.end(), e.begin())) continue;
      bool z = zero;
      for (std::size_t k = 0; k < na; ++k) z = z && e[nx + k] == 0;
      walk(r + 1, first, Vec(e.begin() + nx + na, e.end()), z);
    }
  };
  for (const auto& s : states) walk(0, s, s, true);
  return out;
}

inline bool brute_observable(const Trellis& t) { return brute_behavior(t).size() == brute_code(t).size(); }

// Shortest circular interval covering the support, by trying every start and length.
inline std::size_t brute_span(const Vec& w) {
  const std::size_t m = w.size();
  if (std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; })) return 0;
  for (std::size_t len = 1; len <= m; ++len) {
    for (std::size_t a = 0; a < m; ++a) {
      bool covers = true;
      for (std::size_t i = 0; i < m && covers; ++i) {
        if (w[i] != 0 && (i + m - a) % m >= len) covers = false;
      }
      if (covers) return len;
    }
  }
  return 0;
}

inline std::size_t brute_chi(const Subspace& c) {
  std::size_t best = 0;
  for (const Vec& w : elements_of(c)) {
    const std::size_t s = brute_span(w);
    if (s && (!best || s < best)) best = s;
  }
  return best;
}

// ---- random instances ----------------------------------------------------

inline Subspace random_subspace(std::mt19937& rng, std::uint32_t p, std::size_t n, std::size_t max_gens) {
  std::uniform_int_distribution<std::size_t> count(0, max_gens);
  std::uniform_int_distribution<Elem> digit(0, p - 1);
  const std::size_t k = count(rng);
  Mat m(k, n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = digit(rng);
  }
  return Subspace::span(Field(p), n, m);
}

/// Arbitrary trellis: random state dimensions and random constraint codes.
inline Trellis random_trellis(std::mt19937& rng, std::uint32_t p, std::size_t m, std::size_t max_state,
                              std::size_t max_symbol = 1) {
  std::uniform_int_distribution<std::size_t> sd(0, max_state), ad(1, max_symbol);
  std::vector<std::size_t> a(m), n(m);
  for (auto& x : a) x = ad(rng);
  for (auto& x : n) x = sd(rng);
  std::vector<Subspace> c;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t amb = n[i] + a[i] + n[(i + 1) % m];
    c.push_back(random_subspace(rng, p, amb, amb));
  }
  return Trellis(Field(p), a, n, c);
}

/// Product trellis from random nonzero generators with random (valid) spans.
inline Trellis random_product(std::mt19937& rng, std::uint32_t p, std::size_t m, std::size_t k) {
  std::uniform_int_distribution<std::size_t> pos(0, m - 1), len(1, m);
  std::uniform_int_distribution<Elem> digit(0, p - 1);
  std::vector<Generator> gens;
  while (gens.size() < k) {
    const Span s = Span::make(pos(rng), len(rng), m);
    Vec w(m, 0);
    for (std::size_t r = 0; r < s.len; ++r) w[s.at(r)] = digit(rng);
    if (std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; })) continue;
    gens.push_back({w, s});
  }
  return product_of_generators(Field(p), std::vector<std::size_t>(m, 1), gens);
}

inline std::set<Vec> as_set(const std::vector<Vec>& xs) { return {xs.begin(), xs.end()}; }

}  // namespace tl_test

namespace tl_test {

// Generator sets of the worked examples (binary, one symbol per index).
inline Trellis fig1a() { return binary_product({gen("101", 0, 3), gen("110", 1, 3)}); }
inline Trellis fig3a() { return binary_product({gen("01110", 1, 3), gen("10010", 3, 3), gen("01101", 2, 5)}); }
inline Trellis fig7() {
  return binary_product({gen("110110000", 0, 5), gen("010100000", 1, 3), gen("000011010", 4, 4),
                         gen("100000011", 7, 3), gen("011000001", 8, 4), gen("110001101", 5, 6)});
}
inline Trellis fig10a() { return binary_product({gen("101100", 0, 4), gen("001101", 2, 4), gen("011011", 4, 5)}); }
inline Trellis chain_example() {
  return binary_product({gen("0010100", 2, 3), gen("0001011", 3, 4), gen("1000100", 4, 4), gen("0110001", 6, 4)});
}

}  // namespace tl_test
