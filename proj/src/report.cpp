#include "trellis_lab/report.hpp"

#include <sstream>

#include "trellis_lab/analysis.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/fragments.hpp"
#include "trellis_lab/spec_file.hpp"

namespace trellis_lab {

namespace {

json rows_json(const Subspace& s) {
  json out = json::array();
  for (const Vec& r : s.basis().to_rows()) out.push_back(to_digits(s.field(), r));
  return out;
}

json bools(const std::vector<bool>& v) {
  json out = json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

json profile_json(const DimProfile& d) { return {{"states", d.states}, {"constraints", d.constraints}}; }

DimProfile profile_from_json(const json& j) {
  return {j.at("states").get<std::vector<std::size_t>>(), j.at("constraints").get<std::vector<std::size_t>>()};
}

std::vector<std::size_t> constraint_dims(const Trellis& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.length(); ++i) out.push_back(t.constraint(i).dim());
  return out;
}

std::string joined(const json& arr) {
  std::string s;
  for (const auto& x : arr) {
    if (!s.empty()) s += ' ';
    s += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return s.empty() ? "-" : s;
}

const char* yes_no(const json& b) { return b.is_null() ? "unknown" : (b.get<bool>() ? "yes" : "no"); }

}  // namespace

json analysis_json(const Trellis& t, const AnalyzeOptions& opts) {
  require_valid(t);
  const PropertyReport r = analyze(t);
  const std::size_t m = t.length();
  json j;
  j["field"] = t.field().p();
  j["length"] = m;
  j["symbol_dims"] = t.symbol_dims();
  j["state_dims"] = t.state_dims();
  j["constraint_dims"] = constraint_dims(t);
  j["behavior_dim"] = r.behavior_dim;
  j["code_dim"] = r.code_dim;
  j["code"] = rows_json(realized_code(t));
  json flags;
  flags["trim"] = r.trim;
  flags["proper"] = r.proper;
  flags["state_trim"] = r.state_trim;
  flags["branch_trim"] = r.branch_trim;
  flags["reduced"] = r.reduced;
  flags["observable"] = r.observable;
  flags["controllable"] = r.controllable;
  flags["connected"] = r.connectivity_known ? json(r.connected) : json(nullptr);
  flags["tpoc"] = r.tpoc;
  flags["nonmergeable"] = r.nonmergeable;
  flags["nontrimmable"] = r.nontrimmable;
  flags["conventional"] = is_conventional_tpoc(r, t);
  j["flags"] = flags;
  j["per_index"] = {{"trim", bools(r.trim_at)},
                    {"proper", bools(r.proper_at)},
                    {"state_trim", bools(r.state_trim_at)},
                    {"branch_trim", bools(r.branch_trim_at)}};
  j["controllability"] = {{"sum_constraint_dims", r.audit.sum_constraint_dims},
                          {"behavior_dim", r.audit.behavior_dim},
                          {"sum_state_dims", r.audit.sum_state_dims}};
  j["unobservable_states"] = rows_json(r.unobservable_states);
  if (r.connectivity_known) {
    j["connectivity"] = {{"components", r.connectivity.components},
                         {"isolated_states", r.connectivity.isolated_states}};
  } else {
    j["connectivity"] = nullptr;
  }
  if (opts.fragment) {
    const Span& iv = *opts.fragment;
    if (iv.m != m) throw PreconditionError("fragment interval has the wrong length");
    const TransitionSpaces ts = transition_spaces(t, iv);
    j["fragment"] = {{"interval", iv.str()},
                     {"in_dim", t.state_dim(iv.start)},
                     {"out_dim", t.state_dim(iv.end())},
                     {"T", rows_json(ts.T)},
                     {"U", rows_json(ts.U)},
                     {"observable", ts.U.is_zero()},
                     {"controllable", ts.T.is_full()},
                     {"fragment_trim", is_fragment_trim(t, iv)}};
  }
  if (opts.t_profile) {
    const TProfile p = t_observability_profile(t);
    j["t_profile"] = {{"observable", bools(p.observable)}, {"controllable", bools(p.controllable)}};
  }
  return j;
}

std::string analysis_text(const json& r) {
  std::ostringstream out;
  out << "GF(" << r["field"].get<unsigned>() << "), length " << r["length"].get<std::size_t>() << "\n";
  out << "symbol dims:     " << joined(r["symbol_dims"]) << "\n";
  out << "state dims:      " << joined(r["state_dims"]) << "\n";
  out << "constraint dims: " << joined(r["constraint_dims"]) << "\n";
  out << "code dim " << r["code_dim"].get<std::size_t>() << ", behavior dim " << r["behavior_dim"].get<std::size_t>()
      << "\n";
  out << "code: " << joined(r["code"]) << "\n";
  const json& fl = r["flags"];
  for (const char* k : {"trim", "proper", "observable", "controllable", "tpoc", "state_trim", "branch_trim",
                        "reduced", "nonmergeable", "nontrimmable", "connected", "conventional"}) {
    std::string name = k;
    for (char& c : name) {
      if (c == '_') c = '-';
    }
    out << "  " << name << ": " << yes_no(fl[k]) << "\n";
  }
  const json& per = r["per_index"];
  const std::size_t m = r["length"].get<std::size_t>();
  for (std::size_t i = 0; i < m; ++i) {
    if (!per["trim"][i].get<bool>()) out << "not trim at time " << i << "\n";
    if (!per["proper"][i].get<bool>()) out << "not proper at time " << i << "\n";
    if (!per["state_trim"][i].get<bool>()) out << "not state-trim at time " << i << "\n";
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!per["branch_trim"][i].get<bool>()) out << "not branch-trim at C_" << i << "\n";
  }
  if (!r["unobservable_states"].empty()) {
    out << "unobservable state sequences: " << joined(r["unobservable_states"]) << "\n";
  }
  const json& c = r["controllability"];
  out << "sum dim C_i = " << c["sum_constraint_dims"].get<std::size_t>() << ", dim B + sum dim S_i = "
      << c["behavior_dim"].get<std::size_t>() + c["sum_state_dims"].get<std::size_t>() << "\n";
  if (!r["connectivity"].is_null()) {
    out << "components: " << r["connectivity"]["components"].get<std::size_t>() << ", isolated states per time: "
        << joined(r["connectivity"]["isolated_states"]) << "\n";
  }
  if (r.contains("fragment")) {
    const json& f = r["fragment"];
    out << "fragment " << f["interval"].get<std::string>() << ": T = <" << joined(f["T"]) << ">, U = <"
        << joined(f["U"]) << ">\n";
    out << "  observable: " << yes_no(f["observable"]) << ", controllable: " << yes_no(f["controllable"])
        << ", fragment-trim: " << yes_no(f["fragment_trim"]) << "\n";
  }
  if (r.contains("t_profile")) {
    const json& p = r["t_profile"];
    out << "t-observable for t =";
    for (std::size_t k = 0; k < p["observable"].size(); ++k) {
      if (p["observable"][k].get<bool>()) out << ' ' << k + 1;
    }
    out << "\nt-controllable for t =";
    for (std::size_t k = 0; k < p["controllable"].size(); ++k) {
      if (p["controllable"][k].get<bool>()) out << ' ' << k + 1;
    }
    out << "\n";
  }
  return out.str();
}

json op_to_json(const Field& f, const Op& op) {
  json j;
  j["name"] = op.name;
  j["dual"] = op.dual;
  if (op.index) j["index"] = *op.index;
  if (!op.rows.empty()) {
    json rows = json::array();
    for (const Vec& r : op.rows) rows.push_back(to_digits(f, r));
    j["rows"] = rows;
  }
  if (op.name == "zero-run") {
    j["start"] = op.start;
    j["len"] = op.len;
    j["stage"] = to_string(op.stage);
  }
  return j;
}

Op op_from_json(const Field& f, const json& j) {
  if (!j.is_object()) throw ParseError(0, "an op must be a JSON object");
  Op op;
  try {
    op.name = j.at("name").get<std::string>();
    op.dual = j.value("dual", false);
    if (j.contains("index")) op.index = j.at("index").get<std::size_t>();
    if (j.contains("rows")) {
      for (const auto& r : j.at("rows")) op.rows.push_back(parse_digits(f, r.get<std::string>()));
    }
    op.start = j.value("start", std::size_t{0});
    op.len = j.value("len", std::size_t{0});
    const std::string stage = j.value("stage", std::string("strict"));
    if (stage == "expand") {
      op.stage = ZeroRunStage::expand;
    } else if (stage == "conservative") {
      op.stage = ZeroRunStage::conservative;
    } else if (stage == "strict") {
      op.stage = ZeroRunStage::strict;
    } else {
      throw ParseError(0, "unknown zero-run stage '" + stage + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("bad op record: ") + e.what());
  }
  return op;
}

json step_to_json(const Field& f, const ReductionStep& s) {
  json j;
  j["op"] = op_to_json(f, s.op);
  j["interval"] = s.interval.str();
  j["strict"] = s.strict;
  j["conservative"] = s.conservative;
  j["reduction"] = s.reduction;
  j["before"] = profile_json(s.before);
  j["after"] = profile_json(s.after);
  if (!s.witness.empty()) j["witness"] = s.witness;
  return j;
}

std::string step_log(const Field& f, const std::vector<ReductionStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += step_to_json(f, s).dump() + "\n";
  return out;
}

Trellis replay_log(const Trellis& t, std::string_view jsonl) {
  Trellis cur = t;
  std::istringstream in{std::string(jsonl)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    Op op;
    try {
      op = op_from_json(cur.field(), rec.contains("op") ? rec.at("op") : rec);
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
    const Trellis next = apply_op(cur, op);
    const ReductionStep s = record_step(cur, next, op);
    if (rec.contains("after")) {
      DimProfile want;
      try {
        want = profile_from_json(rec.at("after"));
      } catch (const json::exception& e) {
        throw ParseError(line_no, std::string("bad profile: ") + e.what());
      }
      if (!(want == s.after)) {
        throw PreconditionError("line " + std::to_string(line_no) + ": replayed step '" + op.name +
                    "' does not reproduce the logged dimension profile");
      }
    }
    cur = next;
  }
  return cur;
}

json reduction_json(const ReductionReport& r) {
  const Field& f = r.final.field();
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(step_to_json(f, s));
  return {{"status", to_string(r.status)},
          {"steps", steps},
          {"final", {{"state_dims", r.final.state_dims()}, {"constraint_dims", constraint_dims(r.final)}}}};
}

}  // namespace trellis_lab
