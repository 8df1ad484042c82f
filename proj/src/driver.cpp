#include "trellis_lab/driver.hpp"

#include "trellis_lab/analysis.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/fragments.hpp"

namespace trellis_lab {

const char* to_string(DriverStatus s) {
  switch (s) {
    case DriverStatus::conventional:
      return "conventional";
    case DriverStatus::reduced:
      return "reduced";
    case DriverStatus::no_applicable_method:
      return "no-applicable-method";
  }
  return "no-applicable-method";
}

namespace {

std::string digits(const Field& f, const Vec& v) { return to_digits(f, v); }

Op make_op(const char* name, bool dual, std::optional<std::size_t> index = std::nullopt) {
  Op op;
  op.name = name;
  op.dual = dual;
  op.index = index;
  return op;
}

Op subspace_op(const char* name, bool dual, std::size_t i, const Subspace& y) {
  Op op = make_op(name, dual, i);
  op.rows = y.basis().to_rows();
  return op;
}

struct Candidate {
  Op op;
  std::string witness;
};

// Trim and proper repairs at one time index, on t itself.
std::optional<Candidate> local_repair(const Trellis& t, bool dual) {
  const std::size_t m = t.length();
  for (std::size_t i = 0; i < m; ++i) {
    const auto fl = local_flags(t, i);
    const std::size_t prev = (i + m - 1) % m;
    if (!fl.trim) {
      const Subspace y = intersection(project(t.constraint(prev), t.out_state_coords(prev)),
                                      project(t.constraint(i), t.in_state_coords(i)));
      return Candidate{subspace_op("trim", dual, i, y), "S_" + std::to_string(i) + " is not trim"};
    }
    if (!fl.proper) {
      const Subspace y = sum(cross_section(t.constraint(prev), t.out_state_coords(prev)),
                             cross_section(t.constraint(i), t.in_state_coords(i)));
      return Candidate{subspace_op("merge", dual, i, y), "S_" + std::to_string(i) + " is not proper"};
    }
  }
  return std::nullopt;
}

std::optional<Candidate> unobs_repair(const Trellis& t, bool dual) {
  if (observable(t)) return std::nullopt;
  const UnobsTrim u = unobs_trim(t);
  Op op = make_op("unobs-trim", dual, u.index);
  return Candidate{op, "unobservable trajectory through " + digits(t.field(), u.state) + " at time " +
                           std::to_string(u.index)};
}

std::optional<Candidate> state_trim_repair(const Trellis& t, bool dual) {
  const auto fl = global_trim_flags(t);
  for (std::size_t i = 0; i < t.length(); ++i) {
    if (!fl.state_trim_at[i]) {
      return Candidate{make_op("state-trim", dual, i), "unused states at time " + std::to_string(i)};
    }
  }
  return std::nullopt;
}

std::optional<Candidate> two_step(const Trellis& t, bool dual) {
  if (is_t_observable(t, t.length() - 1)) return std::nullopt;
  return Candidate{make_op("two-reduction", dual), "not " + std::to_string(t.length() - 1) + "-observable"};
}

std::optional<Candidate> zero_run(const Trellis& t, bool dual, std::size_t tlen) {
  const auto z = find_zero_run(t, tlen);
  if (!z) return std::nullopt;
  const std::size_t m = t.length();
  Op op = make_op("zero-run", dual);
  op.start = z->start;
  op.len = m - tlen;
  const Field& f = t.field();
  std::string w = "unobservable path " + digits(f, z->witness_in) + " -> " + digits(f, z->witness_out) + " on " +
                  Span::make(z->start, m - tlen, m).str() + (z->reversed ? ", condition A'" : ", condition A");
  return Candidate{op, w};
}

}  // namespace

std::optional<ReductionStep> next_step(const Trellis& t, Trellis* out) {
  const Trellis d = dualize(t);
  std::optional<Candidate> c;
  auto both = [&](auto&& method) {
    if (!c) c = method(t, false);
    if (!c) c = method(d, true);
  };
  both(local_repair);
  both(unobs_repair);
  both(state_trim_repair);
  both(two_step);
  if (!c && is_tpoc(t)) {
    for (std::size_t tlen = 2; tlen < t.length() && !c; ++tlen) {
      both([tlen](const Trellis& x, bool dual) { return zero_run(x, dual, tlen); });
    }
  }
  if (!c) return std::nullopt;
  const Trellis after = apply_op(t, c->op);
  ReductionStep step = record_step(t, after, c->op, c->witness);
  if (!step.strict || !step.reduction) throw InternalError("driver step '" + c->op.name + "' was not a strict reduction");
  if (out) *out = after;
  return step;
}

ReductionReport reduce_driver(const Trellis& t, std::size_t max_steps) {
  require_valid(t);
  ReductionReport rep{t, {}, DriverStatus::no_applicable_method};
  for (std::size_t k = 0; k < max_steps; ++k) {
    Trellis after = rep.final;
    auto step = next_step(rep.final, &after);
    if (!step) break;
    rep.steps.push_back(std::move(*step));
    rep.final = std::move(after);
  }
  if (is_conventional_tpoc(analyze(rep.final), rep.final)) {
    rep.status = DriverStatus::conventional;
  } else if (!rep.steps.empty()) {
    rep.status = DriverStatus::reduced;
  }
  return rep;
}

}  // namespace trellis_lab
