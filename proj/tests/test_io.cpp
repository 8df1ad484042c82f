#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>

#include "support.hpp"
#include "trellis_lab/corpus.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/render.hpp"
#include "trellis_lab/report.hpp"
#include "trellis_lab/reduction.hpp"
#include "trellis_lab/spec_file.hpp"

using namespace tl_test;
namespace fs = std::filesystem;

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto at = s.find(what); at != std::string::npos; at = s.find(what, at + 1)) ++n;
  return n;
}

fs::path scratch_corpus(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("trellis_lab_" + name);
  fs::remove_all(dir);
  fs::copy(TRELLIS_LAB_CORPUS_DIR, dir, fs::copy_options::recursive);
  return dir;
}

}  // namespace

TEST_CASE("spec files round-trip exactly") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t p = trial % 4 == 0 ? 11 : (trial % 4 == 1 ? 3 : 2);
    const Trellis t = random_trellis(rng, p, 1 + trial % 5, 2, 1 + trial % 2);
    const std::string text = serialize_spec(t);
    const Trellis back = parse_spec(text);
    CHECK(back.state_dims() == t.state_dims());
    CHECK(back.symbol_dims() == t.symbol_dims());
    for (std::size_t i = 0; i < t.length(); ++i) CHECK(back.constraint(i) == t.constraint(i));
    CHECK(serialize_spec(back) == text);
  }
}

TEST_CASE("product form matches the builder") {
  const Trellis t = parse_spec("field 2\nsymbols 1 1 1\ngenerator 101 0:3\ngenerator 110 1:3\n");
  const Trellis u = fig1a();
  CHECK(t.state_dims() == u.state_dims());
  for (std::size_t i = 0; i < 3; ++i) CHECK(t.constraint(i) == u.constraint(i));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("field 4\n") == 1);
  CHECK(parse_error_line("field 2\nsymbols 1 1\nstates 1 1\nconstraint 0\n1|1\n") == 5);
  CHECK(parse_error_line("field 2\nsymbols 1 1\nstates 1 1\nconstraint 0\n1|2|1\n") == 5);
  CHECK(parse_error_line("field 2\nsymbols 1 1\nstates 1 1\nconstraint 0\n11|1|1\n") == 5);
  CHECK(parse_error_line("field 2\n# note\nbogus 3\n") == 3);
  CHECK(parse_error_line("field 2\nfield 3\n") == 2);
  CHECK(parse_error_line("field 2\nsymbols 1 1 1\nstates 1 1 1\ngenerator 101 0:3\n") == 4);
  CHECK(parse_error_line("field 2\nsymbols 1 1 1\ngenerator 1011 0:3\n") == 3);
  CHECK(parse_error_line("field 2\nsymbols 1 1\nlength 3\n") == 3);
  CHECK_THROWS_AS(parse_spec("field 2\nsymbols 1 1\nstates 1 1\nconstraint 0\n"), ParseError);
  CHECK(parse_digits(Field(11), "10,0,3") == Vec{10, 0, 3});
  CHECK_THROWS_AS(parse_digits(Field(11), "11"), ParseError);
}

TEST_CASE("DOT output is deterministic and follows the drawing convention") {
  const Trellis t = fig1a();
  const std::string dot = render_dot(t);
  CHECK(dot == render_dot(parse_spec(serialize_spec(t))));
  // states: 2 + 2 + 4 at times 0..2, and S_0 again at time 3
  CHECK(count(dot, "[label=") == 10);
  std::size_t branches = 0;
  for (std::size_t i = 0; i < 3; ++i) branches += std::size_t{1} << t.constraint(i).dim();
  CHECK(count(dot, " -> ") == branches);
  CHECK(count(dot, "style=dashed") + count(dot, "style=solid") == branches);
  CHECK(count(dot, "subgraph rank") == 4);

  const std::string z = render_dot(parse_spec("field 2\nsymbols 1 1 1\nstates 0 0 0\nconstraint 0\nconstraint 1\nconstraint 2\n"));
  CHECK(count(z, "[label=\"()\"]") == 4);
  CHECK(count(z, "style=solid") == 0);

  const std::string g3 = render_dot(parse_spec("field 3\nsymbols 1\ngenerator 2 0:1\n"));
  CHECK(count(g3, "label=\"2\"") == 1);
  CHECK(count(g3, " -> ") == 3);
}

TEST_CASE("the expanded trellis draws the adjoined zero path with dashed edges") {
  const ZeroRun z = zero_run_reduce(fig7(), 0, 3);
  const std::string dot = render_dot(z.expanded);
  std::size_t branches = 0;
  for (std::size_t i = 0; i < 9; ++i) branches += std::size_t{1} << z.expanded.constraint(i).dim();
  CHECK(count(dot, " -> ") == branches);
  CHECK(count(dot, "style=dashed") > count(render_dot(fig7()), "style=dashed"));
}

TEST_CASE("ops and step logs round-trip through JSON") {
  const Field f(2);
  Op op;
  op.name = "merge";
  op.dual = true;
  op.index = 2;
  op.rows = {v("11")};
  const Op back = op_from_json(f, op_to_json(f, op));
  CHECK(back.name == op.name);
  CHECK(back.dual);
  CHECK(back.index == op.index);
  CHECK(back.rows == op.rows);

  const Trellis t = fig3a();
  const ReductionReport r = reduce_driver(t);
  const std::string log = step_log(t.field(), r.steps);
  CHECK(count(log, "\n") == r.steps.size());
  const Trellis replayed = replay_log(t, log);
  CHECK(serialize_spec(replayed) == serialize_spec(r.final));

  CHECK_THROWS_AS(replay_log(t, "{\"op\": {\"name\": \"trim\"\n"), ParseError);
  try {
    replay_log(t, "\n{\"op\":{\"name\":\"nonsense\"}}\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("nonsense") != std::string::npos);
  }
  // a logged profile that the replay does not reproduce
  std::string bad = step_to_json(t.field(), r.steps.front()).dump();
  bad = std::regex_replace(bad, std::regex("\"after\":\\{\"constraints\":\\[2"), "\"after\":{\"constraints\":[9");
  CHECK_THROWS_AS(replay_log(t, bad), PreconditionError);
}

TEST_CASE("analysis report") {
  const json r = analysis_json(dualize(fig1a()));
  CHECK(r["flags"]["tpoc"] == true);
  CHECK(r["flags"]["state_trim"] == false);
  CHECK(r["per_index"]["state_trim"] == json::array({true, true, false}));
  const std::string text = analysis_text(r);
  CHECK(text.find("not state-trim at time 2") != std::string::npos);
  CHECK(analysis_text(analysis_json(dualize(fig3a()))).find("not branch-trim at C_4") != std::string::npos);

  AnalyzeOptions opts;
  opts.fragment = Span::make(0, 6, 9);
  opts.t_profile = true;
  const json f = analysis_json(fig7(), opts);
  CHECK(f["fragment"]["observable"] == false);
  CHECK(f["t_profile"]["observable"][6] == true);
  CHECK(f["t_profile"]["observable"][5] == false);

  const json z = analysis_json(parse_spec("field 2\nsymbols 1 1\nstates 0 0\nconstraint 0\nconstraint 1\n"));
  CHECK(z["code_dim"] == 0);
  CHECK(z["flags"]["tpoc"] == true);
  CHECK(z["flags"]["connected"] == true);
}

TEST_CASE("the bundled corpus verifies") {
  const CorpusReport r = verify_corpus(TRELLIS_LAB_CORPUS_DIR);
  for (const auto& c : r.results) {
    INFO(c.entry << ": " << c.check << " expected " << c.expected << ", got " << c.actual);
    CHECK(c.pass);
  }
  CHECK(r.entries >= 20);
  for (const auto& c : r.results) CHECK((c.source == "published" || c.source == "derived" || c.source == "trivial"));

  const CorpusReport only = verify_corpus(TRELLIS_LAB_CORPUS_DIR, std::string("fig7"));
  std::set<std::string> ids;
  for (const auto& c : only.results) ids.insert(c.entry);
  CHECK(ids == std::set<std::string>{"fig7", "fig8", "fig9"});
  CHECK(only.all_pass());
  CHECK_THROWS_AS(verify_corpus(TRELLIS_LAB_CORPUS_DIR, std::string("fig99")), Error);
}

TEST_CASE("a corrupted corpus file fails with the named expectation") {
  const fs::path dir = scratch_corpus("corrupt");
  {
    // fig1b's code instead of fig1a's
    std::ofstream out(dir / "fig1a.trellis");
    out << "field 2\nsymbols 1 1 1\ngenerator 111 0:3\n";
  }
  const CorpusReport r = verify_corpus(dir, std::string("fig1a"));
  CHECK_FALSE(r.all_pass());
  bool named = false;
  for (const auto& c : r.results) {
    if (c.entry == "fig1a" && c.check == "code" && !c.pass) named = true;
  }
  CHECK(named);
  CHECK(corpus_text(r).find("FAIL fig1a") != std::string::npos);

  {
    std::ofstream out(dir / "manifest.json");
    out << "{\"entries\": [{\"id\": \"x\", \"file\": \"fig3a.trellis\", \"expect\": [{\"check\": \"tpoc\", \"value\": true}]}]}";
  }
  const CorpusReport untagged = verify_corpus(dir);
  CHECK_FALSE(untagged.all_pass());
  fs::remove_all(dir);
}
