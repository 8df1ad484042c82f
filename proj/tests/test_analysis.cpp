#include <doctest.h>

#include "support.hpp"
#include "trellis_lab/analysis.hpp"
#include "trellis_lab/errors.hpp"

using namespace tl_test;

TEST_CASE("three-symbol product trellis and its dual") {
  const Trellis a = fig1a();
  const auto r = analyze(a);
  CHECK(r.tpoc);
  CHECK(r.state_trim);
  CHECK(r.branch_trim);
  CHECK(r.connected);
  CHECK_FALSE(r.nonmergeable);
  CHECK(r.nontrimmable);
  CHECK(r.audit.sum_constraint_dims == 6);
  CHECK(r.audit.behavior_dim == 2);
  CHECK(r.audit.sum_state_dims == 4);

  const Trellis b = dualize(a);
  CHECK(realized_code(b) == sp(2, 3, {"111"}));
  const auto rb = analyze(b);
  CHECK(rb.tpoc);
  CHECK_FALSE(rb.state_trim);
  CHECK(rb.state_trim_at == std::vector<bool>{true, true, false});
  // the two unused states at time 2 are 10 and 01
  CHECK(brute_used_states(b, 2) == std::set<Vec>{v("00"), v("11")});
}

TEST_CASE("five-symbol example: reduced and nonmergeable, dual not branch-trim at C_4") {
  const Trellis a = fig3a();
  CHECK(a.state_dims() == std::vector<std::size_t>{2, 1, 1, 2, 2});
  CHECK(realized_code(a) == sp(2, 5, {"01110", "10010", "01101"}));
  const auto r = analyze(a);
  CHECK(r.tpoc);
  CHECK(r.reduced);
  CHECK(r.nonmergeable);

  const auto rb = analyze(dualize(a));
  CHECK(rb.state_trim);
  CHECK(rb.branch_trim_at == std::vector<bool>{true, true, true, true, false});
  // in the published labeling of S_4 (our 01 is drawn as 11), C_4 of the primal is <10|0|10, 11|1|01>
  std::vector<Mat> relabel{Mat::identity(2), Mat::identity(1), Mat::identity(1), Mat::identity(2),
                           Mat::from_rows(2, {v("10"), v("11")})};
  const Trellis drawn = apply_state_maps(a, relabel);
  CHECK(drawn.constraint(4) == sp(2, 5, {"10010", "11101"}));
  CHECK(dualize(drawn).constraint(4) == sp(2, 5, {"00101", "10110", "11111"}));
}

TEST_CASE("zero trellis is trivially everything") {
  const Field f(2);
  const Trellis z(f, {1, 1}, {0, 0}, {Subspace(f, 1), Subspace(f, 1)});
  const auto r = analyze(z);
  CHECK(r.tpoc);
  CHECK(r.reduced);
  CHECK(r.connected);
  CHECK(r.behavior_dim == 0);
}

TEST_CASE("local trim and proper flags are dual to each other") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t p = trial % 2 ? 3 : 2;
    const Trellis t = trial % 3 ? random_trellis(rng, p, 1 + trial % 5, 2) : random_product(rng, p, 2 + trial % 4, 3);
    const Trellis d = dualize(t);
    for (std::size_t i = 0; i < t.length(); ++i) {
      CHECK(local_flags(t, i).trim == local_flags(d, i).proper);
      CHECK(local_flags(t, i).proper == local_flags(d, i).trim);
    }
  }
}

TEST_CASE("global flags agree with path enumeration") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint32_t p = trial % 2 ? 3 : 2;
    const Trellis t = random_trellis(rng, p, 1 + trial % 5, 2);
    const auto r = analyze(t);
    CHECK(r.observable == brute_observable(t));
    CHECK(r.controllable == brute_observable(dualize(t)));
    CHECK((r.unobservable_states.dim() == 0) == r.observable);
    for (std::size_t i = 0; i < t.length(); ++i) {
      CHECK(r.state_trim_at[i] == (brute_used_states(t, i).size() == Subspace::full(t.field(), t.state_dim(i)).cardinality()));
      CHECK(r.branch_trim_at[i] == (brute_used_branches(t, i) == elements_of(t.constraint(i))));
    }
  }
}

TEST_CASE("state-trim trellises are controllable exactly when connected") {
  std::mt19937 rng(31);
  int seen = 0;
  for (int trial = 0; trial < 600 && seen < 150; ++trial) {
    const std::uint32_t p = trial % 2 ? 3 : 2;
    const Trellis t = random_trellis(rng, p, 1 + trial % 5, 2);
    if (!global_trim_flags(t).state_trim) continue;
    ++seen;
    CHECK(controllable(t) == connected(t));
  }
  CHECK(seen >= 100);
}

TEST_CASE("controllable dual of the small example is connected") {
  const auto c = connectivity(dualize(fig1a()));
  CHECK(c.connected);
  CHECK(c.components == 1);
}
