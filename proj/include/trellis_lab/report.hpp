#pragma once

// Structured reports, step records as JSON, and replay of JSON-lines step logs.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "trellis_lab/driver.hpp"
#include "trellis_lab/reduction.hpp"

namespace trellis_lab {

using nlohmann::json;

struct AnalyzeOptions {
  std::optional<Span> fragment;
  bool t_profile = false;
};

json analysis_json(const Trellis& t, const AnalyzeOptions& opts = {});
/// Human-readable rendering of analysis_json.
std::string analysis_text(const json& report);

json op_to_json(const Field& f, const Op& op);
/// Throws ParseError on malformed records.
Op op_from_json(const Field& f, const json& j);

json step_to_json(const Field& f, const ReductionStep& s);
/// One JSON object per line.
std::string step_log(const Field& f, const std::vector<ReductionStep>& steps);
/// Re-applies every logged op in order. Throws ParseError (line number) on
/// malformed lines and Error when a step no longer reproduces its logged profile.
Trellis replay_log(const Trellis& t, std::string_view jsonl);

json reduction_json(const ReductionReport& r);

}  // namespace trellis_lab
