#include <doctest.h>

#include "support.hpp"
#include "trellis_lab/analysis.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/fragments.hpp"
#include "trellis_lab/spans.hpp"

using namespace tl_test;

namespace {

std::vector<std::size_t> brute_shortest(const Subspace& c) {
  const std::size_t m = c.ambient();
  std::vector<std::size_t> out(m, 0);
  for (const Vec& w : elements_of(c)) {
    for (std::size_t a = 0; a < m; ++a) {
      if (w[a] == 0) continue;
      std::size_t len = m;
      while (len > 1) {
        bool covers = true;
        for (std::size_t i = 0; i < m && covers; ++i) {
          if (w[i] != 0 && (i + m - a) % m >= len - 1) covers = false;
        }
        if (!covers) break;
        --len;
      }
      if (!out[a] || len < out[a]) out[a] = len;
    }
  }
  return out;
}

bool full_support(const Subspace& c) {
  for (std::size_t i = 0; i < c.ambient(); ++i) {
    bool hit = false;
    for (const Vec& r : c.basis().to_rows()) hit = hit || r[i] != 0;
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("minimum span lengths of the worked codes") {
  CHECK(span_profile(sp(2, 5, {"10110", "11001"})).chi == 3);
  const Subspace c7 = realized_code(fig7());
  CHECK(span_profile(c7).chi == 3);
  CHECK(span_profile(orthogonal(c7)).chi == 6);
  const Subspace c10 = realized_code(fig10a());
  CHECK(c10.contains(v("100001")));
  CHECK(span_profile(c10).chi == 2);
  CHECK(span_profile(orthogonal(c10)).chi == 3);
  CHECK(span_profile(Subspace(Field(2), 4)).chi == 0);
}

TEST_CASE("span profiles agree with enumeration on random codes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t p = trial % 3 == 0 ? 3 : 2;
    const std::size_t m = 2 + trial % 7;
    const Subspace c = random_subspace(rng, p, m, 3);
    const SpanProfile sp_ = span_profile(c);
    CHECK(sp_.chi == brute_chi(c));
    CHECK(sp_.shortest == brute_shortest(c));
    for (const Vec& w : elements_of(c)) CHECK(span_length(w, std::vector<std::size_t>(m, 1)) == brute_span(w));
  }
}

TEST_CASE("KV-trellises of random codes are TPOC and reduced, and so are their duals") {
  std::mt19937 rng(11);
  int built = 0, windowed = 0;
  for (int trial = 0; trial < 400 && built < 60; ++trial) {
    const std::uint32_t p = trial % 4 == 0 ? 3 : 2;
    const std::size_t m = 3 + trial % 5;
    const Subspace c = random_subspace(rng, p, m, m - 1);
    if (c.is_zero() || c.is_full() || !full_support(c) || !full_support(orthogonal(c))) continue;
    const auto kv = find_kv_trellis(c);
    REQUIRE(kv.has_value());
    ++built;
    CHECK(realized_code(*kv) == c);
    const PropertyReport r = analyze(*kv);
    CHECK(r.tpoc);
    CHECK(r.state_trim);
    CHECK(r.branch_trim);
    const Trellis d = dualize(*kv);
    const PropertyReport rd = analyze(d);
    CHECK(rd.state_trim);
    CHECK(rd.branch_trim);
    CHECK(is_t_observable(*kv, m - 1));
    CHECK(is_t_controllable(*kv, m - 1));
    const std::size_t chi = std::min(span_profile(c).chi, span_profile(orthogonal(c)).chi);
    for (std::size_t t = 2; t < chi; ++t) {
      ++windowed;
      CHECK(is_t_observable(*kv, m - t));
      CHECK(is_t_controllable(*kv, m - t));
    }
    CHECK(is_kv(*kv) == Verdict::yes);
  }
  CHECK(built >= 40);
  CHECK(windowed > 0);
}

TEST_CASE("the length-9 example is not a KV-trellis") {
  const Trellis t = fig7();
  CHECK(is_kv(t) == Verdict::no);
  // Sum of the first four generators: span [5,8], shorter than the last generator's [5,1].
  Vec sum(9, 0);
  for (const char* w : {"110110000", "010100000", "000011010", "100000011"}) {
    const Vec x = v(w);
    for (std::size_t i = 0; i < 9; ++i) sum[i] ^= x[i];
  }
  CHECK(sum == v("000001001"));
  CHECK(brute_span(sum) == 4);
  CHECK(span_profile(realized_code(t)).shortest[5] == 4);
  CHECK(is_kv(dualize(t)) == Verdict::no);
  const auto kv = find_kv_trellis(realized_code(t));
  REQUIRE(kv.has_value());
  CHECK(is_kv(dualize(*kv)) == Verdict::yes);
}

TEST_CASE("KV construction preconditions") {
  CHECK_THROWS_AS(kv_trellis(Subspace(Field(2), 4), {}), PreconditionError);
  // <100> vanishes at positions 1 and 2
  CHECK_THROWS_AS(kv_trellis(sp(2, 3, {"100"}), {0}), PreconditionError);
  const Subspace c = realized_code(fig1a());
  CHECK_THROWS_AS(kv_trellis(c, {0, 0}), PreconditionError);
  CHECK_THROWS_AS(kv_trellis(c, {0}), PreconditionError);
}
