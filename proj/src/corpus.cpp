#include "trellis_lab/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "trellis_lab/analysis.hpp"
#include "trellis_lab/driver.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/fragments.hpp"
#include "trellis_lab/irreducibility.hpp"
#include "trellis_lab/spans.hpp"
#include "trellis_lab/spec_file.hpp"

namespace trellis_lab {

bool CorpusReport::all_pass() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

namespace {

json rows_json(const Subspace& s) {
  json out = json::array();
  for (const Vec& r : s.basis().to_rows()) out.push_back(to_digits(s.field(), r));
  return out;
}

Span parse_interval(const std::string& s, std::size_t m) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error("interval '" + s + "' must be written j:len");
  return Span::make(std::stoul(s.substr(0, colon)), std::stoul(s.substr(colon + 1)), m);
}

bool has_zero_run(const Trellis& t) {
  for (std::size_t tlen = 2; tlen < t.length(); ++tlen) {
    if (find_zero_run(t, tlen)) return true;
  }
  return false;
}

struct Built {
  std::optional<Trellis> trellis;
  std::optional<Subspace> code;  // for bare-code entries
  std::vector<std::size_t> symbol_dims;
  std::vector<CheckResult> build_checks;
  std::string error;
};

class Runner {
 public:
  Runner(std::filesystem::path dir, json manifest) : dir_(std::move(dir)), manifest_(std::move(manifest)) {
    if (!manifest_.contains("entries") || !manifest_["entries"].is_array()) {
      throw Error("manifest has no 'entries' array");
    }
    for (const auto& e : manifest_["entries"]) {
      const std::string id = e.at("id").get<std::string>();
      if (by_id_.count(id)) throw Error("duplicate corpus id '" + id + "'");
      by_id_[id] = &e;
      order_.push_back(id);
    }
  }

  const std::vector<std::string>& order() const { return order_; }

  bool derives_from(const std::string& id, const std::string& root) const {
    std::string cur = id;
    for (std::size_t guard = 0; guard < order_.size() + 1; ++guard) {
      if (cur == root) return true;
      const json& e = entry(cur);
      if (!e.contains("from")) return false;
      cur = e["from"].get<std::string>();
    }
    return false;
  }

  const json& entry(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw Error("unknown corpus id '" + id + "'");
    return *it->second;
  }

  const Built& build(const std::string& id) {
    if (auto it = built_.find(id); it != built_.end()) return it->second;
    if (in_progress_.count(id)) throw Error("cyclic 'from' chain at '" + id + "'");
    in_progress_.insert(id);
    Built b;
    try {
      make(id, b);
    } catch (const std::exception& e) {
      b.error = e.what();
    }
    in_progress_.erase(id);
    return built_.emplace(id, std::move(b)).first->second;
  }

  const Trellis& trellis_of(const std::string& id) {
    const Built& b = build(id);
    if (!b.error.empty()) throw Error("entry '" + id + "' failed to build: " + b.error);
    if (!b.trellis) throw Error("entry '" + id + "' has no trellis");
    return *b.trellis;
  }

  const json& analysis(const std::string& id) {
    if (auto it = analyses_.find(id); it != analyses_.end()) return it->second;
    return analyses_.emplace(id, analysis_json(trellis_of(id))).first->second;
  }

  std::vector<CheckResult> run(const std::string& id) {
    const json& e = entry(id);
    const Built& b = build(id);
    std::vector<CheckResult> out = b.build_checks;
    for (const auto& x : e.value("expect", json::array())) {
      CheckResult r;
      r.entry = id;
      r.check = label(x);
      r.source = x.value("source", "");
      if (r.source != "published" && r.source != "derived" && r.source != "trivial") {
        r.expected = "a source tag";
        r.actual = r.source.empty() ? "missing" : r.source;
        out.push_back(r);
        continue;
      }
      try {
        if (!b.error.empty()) throw Error(b.error);
        json want = x.at("value");
        json got = evaluate(id, b, x, want);
        r.expected = want.dump();
        r.actual = got.dump();
        r.pass = want == got;
      } catch (const std::exception& ex) {
        r.expected = x.contains("value") ? x["value"].dump() : "?";
        r.actual = std::string("error: ") + ex.what();
      }
      out.push_back(r);
    }
    return out;
  }

 private:
  static std::string label(const json& x) {
    std::string s = x.value("check", "?");
    for (const char* k : {"t", "interval", "start", "tlen", "of"}) {
      if (x.contains(k)) s += std::string(" ") + k + "=" + (x[k].is_string() ? x[k].get<std::string>() : x[k].dump());
    }
    return s;
  }

  void make(const std::string& id, Built& b) {
    const json& e = entry(id);
    std::optional<Trellis> from_file;
    if (e.contains("file")) {
      from_file = load_spec(dir_ / e["file"].get<std::string>());
    }
    if (e.contains("from")) {
      const std::string parent = e["from"].get<std::string>();
      Trellis cur = trellis_of(parent);
      const auto& script = e.at("script");
      for (std::size_t k = 0; k < script.size(); ++k) {
        const json& rec = script[k];
        const Op op = op_from_json(cur.field(), rec.at("op"));
        const Trellis next = apply_op(cur, op);
        const ReductionStep s = record_step(cur, next, op);
        const std::string src = rec.value("source", "derived");
        const std::string prefix = "step " + std::to_string(k + 1) + " (" + op.name + ") ";
        auto add = [&](const std::string& what, const json& want, const json& got) {
          b.build_checks.push_back({id, prefix + what, src, want == got, want.dump(), got.dump()});
        };
        for (const char* flag : {"strict", "conservative", "reduction"}) {
          if (rec.contains(flag)) {
            const bool got = std::string(flag) == "strict" ? s.strict
                             : std::string(flag) == "conservative" ? s.conservative
                                                                   : s.reduction;
            add(flag, rec[flag], got);
          }
        }
        if (rec.contains("interval")) add("interval", rec["interval"], s.interval.str());
        if (rec.contains("after")) {
          add("profile", rec["after"], json{{"states", s.after.states}, {"constraints", s.after.constraints}});
        }
        cur = next;
      }
      if (from_file) {
        const Isomorphism iso = is_isomorphic(cur, *from_file);
        b.build_checks.push_back({id, "replay matches " + e["file"].get<std::string>(),
                                  e.value("file_source", "derived"), iso.verdict == Verdict::yes, "\"yes\"",
                                  std::string("\"") + to_string(iso.verdict) + "\""});
      }
      b.trellis = cur;
    } else if (from_file) {
      b.trellis = *from_file;
    } else if (e.contains("code")) {
      const Field f(e.at("field").get<std::uint32_t>());
      std::vector<Vec> rows;
      for (const auto& w : e["code"]) rows.push_back(parse_digits(f, w.get<std::string>()));
      if (rows.empty()) throw Error("bare code entry needs at least one word");
      b.code = Subspace::span(f, rows.front().size(), rows);
      b.symbol_dims.assign(rows.front().size(), 1);
    } else {
      throw Error("entry has neither 'file', 'from' nor 'code'");
    }
    if (b.trellis) {
      b.symbol_dims = b.trellis->symbol_dims();
      b.code = realized_code(*b.trellis);
    }
  }

  json evaluate(const std::string& id, const Built& b, const json& x, json& want) {
    const std::string c = x.at("check").get<std::string>();
    static const std::set<std::string> flag_names = {"trim",         "proper",       "state_trim", "branch_trim",
                                                     "reduced",      "observable",   "controllable", "connected",
                                                     "tpoc",         "nonmergeable", "nontrimmable", "conventional"};
    if (c == "chi" || c == "chi_dual" || c == "shortest" || c == "shortest_dual") {
      const bool dual = c == "chi_dual" || c == "shortest_dual";
      const SpanProfile p = span_profile(dual ? orthogonal(*b.code) : *b.code, b.symbol_dims);
      if (c == "chi" || c == "chi_dual") return p.chi;
      return p.shortest;
    }
    if (c == "min_chi") {
      return std::min(span_profile(*b.code, b.symbol_dims).chi, span_profile(orthogonal(*b.code), b.symbol_dims).chi);
    }
    if (c == "code") {
      const Field& f = b.code->field();
      std::vector<Vec> rows;
      for (const auto& w : want) rows.push_back(parse_digits(f, w.get<std::string>()));
      want = rows_json(Subspace::span(f, b.code->ambient(), rows));
      return rows_json(*b.code);
    }
    if (c == "code_dim") return b.code->dim();
    const Trellis& t = trellis_of(id);
    if (flag_names.count(c)) return analysis(id)["flags"][c];
    if (c == "state_dims") return t.state_dims();
    if (c == "constraint_dims") return analysis(id)["constraint_dims"];
    if (c == "components") return analysis(id)["connectivity"]["components"];
    if (c == "not_state_trim_at" || c == "not_branch_trim_at" || c == "not_trim_at" || c == "not_proper_at") {
      const std::string key = c.substr(4, c.size() - 7);
      json out = json::array();
      const json& per = analysis(id)["per_index"][key];
      for (std::size_t i = 0; i < per.size(); ++i) {
        if (!per[i].get<bool>()) out.push_back(i);
      }
      return out;
    }
    if (c == "isomorphic_to" || c == "dual_of") {
      const Trellis& other = trellis_of(x.at("of").get<std::string>());
      const Isomorphism iso = is_isomorphic(t, c == "dual_of" ? dualize(other) : other);
      if (iso.verdict == Verdict::undecided) return "undecided";
      return iso.verdict == Verdict::yes;
    }
    if (c == "dual_code_of") {
      const Built& o = build(x.at("of").get<std::string>());
      if (!o.error.empty() || !o.code) throw Error("entry '" + x["of"].get<std::string>() + "' has no code");
      return *b.code == orthogonal(*o.code);
    }
    if (c == "t_observable") return is_t_observable(t, x.at("t").get<std::size_t>());
    if (c == "t_controllable") return is_t_controllable(t, x.at("t").get<std::size_t>());
    if (c == "jk_observable") return is_jk_observable(t, parse_interval(x.at("interval"), t.length()));
    if (c == "jk_controllable") return is_jk_controllable(t, parse_interval(x.at("interval"), t.length()));
    if (c == "kv") return to_string(is_kv(t));
    if (c == "irreducibility") return to_string(t_irreducibility(t, x.at("t").get<std::size_t>()).decision);
    if (c == "chain") {
      const ChainMembership ch = classify_chain(t, x.at("t").get<std::size_t>());
      return {{"in_window", ch.in_window},
              {"tsb_poc", ch.tsb_poc},
              {"ntsb_poc", ch.ntsb_poc},
              {"irreducible_tsb_poc", ch.irreducible_tsb_poc},
              {"kv", to_string(ch.kv)}};
    }
    if (c == "driver_status") return to_string(reduce_driver(t).status);
    if (c == "zero_run") {
      try {
        const ZeroRun z = zero_run_reduce(t, x.at("start").get<std::size_t>(), x.at("tlen").get<std::size_t>());
        return z.reversed ? "A'" : "A";
      } catch (const PreconditionError&) {
        return "none";
      }
    }
    if (c == "no_zero_run") return !has_zero_run(t) && !has_zero_run(dualize(t));
    throw Error("unknown check '" + c + "'");
  }

  std::filesystem::path dir_;
  json manifest_;
  std::map<std::string, const json*> by_id_;
  std::vector<std::string> order_;
  std::map<std::string, Built> built_;
  std::map<std::string, json> analyses_;
  std::set<std::string> in_progress_;
};

}  // namespace

CorpusReport verify_corpus(const std::filesystem::path& dir, const std::optional<std::string>& only) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ifstream in(dir / "manifest.json");
  if (!in) throw Error("cannot open '" + (dir / "manifest.json").string() + "'");
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(std::string("manifest.json: ") + e.what());
  }
  Runner runner(dir, std::move(manifest));
  if (only) runner.entry(*only);
  CorpusReport rep;
  for (const auto& id : runner.order()) {
    if (only && !runner.derives_from(id, *only)) continue;
    ++rep.entries;
    auto rs = runner.run(id);
    rep.results.insert(rep.results.end(), rs.begin(), rs.end());
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

json corpus_json(const CorpusReport& r) {
  json checks = json::array();
  std::size_t failed = 0;
  for (const auto& c : r.results) {
    if (!c.pass) ++failed;
    checks.push_back({{"entry", c.entry},
                      {"check", c.check},
                      {"source", c.source},
                      {"pass", c.pass},
                      {"expected", c.expected},
                      {"actual", c.actual}});
  }
  return {{"entries", r.entries},
          {"checks", checks},
          {"failed", failed},
          {"passed", r.results.size() - failed},
          {"seconds", r.seconds}};
}

std::string corpus_text(const CorpusReport& r) {
  std::ostringstream out;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per;  // passed, total
  std::vector<std::string> order;
  std::size_t failed = 0;
  for (const auto& c : r.results) {
    if (!per.count(c.entry)) order.push_back(c.entry);
    auto& [p, n] = per[c.entry];
    ++n;
    if (c.pass) {
      ++p;
    } else {
      ++failed;
    }
  }
  for (const auto& id : order) {
    const auto [p, n] = per[id];
    out << (p == n ? "ok   " : "FAIL ") << id << " (" << p << "/" << n << ")\n";
    for (const auto& c : r.results) {
      if (c.entry == id && !c.pass) {
        out << "       " << c.check << " [" << c.source << "]: expected " << c.expected << ", got " << c.actual
            << "\n";
      }
    }
  }
  out << r.entries << " entries, " << r.results.size() - failed << "/" << r.results.size() << " checks passed";
  char buf[32];
  std::snprintf(buf, sizeof buf, " in %.2f s\n", r.seconds);
  out << buf;
  return out.str();
}

}  // namespace trellis_lab
