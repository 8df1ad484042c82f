#pragma once

// Automatic reduction: applies the available methods, cheapest first, until none applies.
//   1. trim / proper repairs, unobservable trims on the trellis and its dual
//   2. state-trim repairs on the trellis and its dual (trim / merge)
//   3. two-step reductions for (m-1)-unobservable or (m-1)-uncontrollable trellises
//   4. zero-run reductions for tlen = 2 .. m-1, trellis first, then dual

#include <cstddef>
#include <string>
#include <vector>

#include "trellis_lab/reduction.hpp"

namespace trellis_lab {

enum class DriverStatus { conventional, reduced, no_applicable_method };
const char* to_string(DriverStatus s);

struct ReductionReport {
  Trellis final;
  std::vector<ReductionStep> steps;
  DriverStatus status = DriverStatus::no_applicable_method;
};

/// Every step is strict, so the total state dimension drops each time.
ReductionReport reduce_driver(const Trellis& t, std::size_t max_steps = 1000);

/// The first applicable step, if any.
std::optional<ReductionStep> next_step(const Trellis& t, Trellis* out = nullptr);

}  // namespace trellis_lab
