#include <doctest.h>

#include <string>
#include <vector>

#include "trellis_lab/trellis_lab.h"

namespace {

const char* kFig1a = "field 2\nsymbols 1 1 1\ngenerator 101 0:3\ngenerator 110 1:3\n";

std::string take(char* s) {
  std::string out = s ? s : "";
  tl_string_free(s);
  return out;
}

std::vector<size_t> states(const tl_trellis* t) {
  size_t n = 0;
  REQUIRE(tl_state_dims(t, nullptr, 0, &n) == TL_OK);
  std::vector<size_t> d(n);
  REQUIRE(tl_state_dims(t, d.data(), n, &n) == TL_OK);
  return d;
}

std::string corpus(const char* name) { return std::string(TRELLIS_LAB_CORPUS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("parse, dualize, serialize") {
  tl_trellis* t = nullptr;
  REQUIRE(tl_parse(kFig1a, &t) == TL_OK);
  size_t m = 0;
  CHECK(tl_length(t, &m) == TL_OK);
  CHECK(m == 3);
  CHECK(states(t) == std::vector<size_t>{1, 1, 2});

  tl_trellis* d = nullptr;
  REQUIRE(tl_dual(t, &d) == TL_OK);
  tl_trellis* dd = nullptr;
  REQUIRE(tl_dual(d, &dd) == TL_OK);
  int verdict = -1;
  CHECK(tl_isomorphic(t, dd, &verdict) == TL_OK);
  CHECK(verdict == 0);
  CHECK(tl_isomorphic(t, d, &verdict) == TL_OK);
  CHECK(verdict == 1);

  char* text = nullptr;
  REQUIRE(tl_serialize(d, &text) == TL_OK);
  tl_trellis* again = nullptr;
  const std::string s = take(text);
  REQUIRE(tl_parse(s.c_str(), &again) == TL_OK);
  char* text2 = nullptr;
  REQUIRE(tl_serialize(again, &text2) == TL_OK);
  CHECK(take(text2) == s);

  tl_trellis* b = nullptr;
  REQUIRE(tl_load(corpus("fig1b.trellis").c_str(), &b) == TL_OK);
  CHECK(tl_isomorphic(d, b, &verdict) == TL_OK);
  CHECK(verdict == 0);
  for (tl_trellis* x : {t, d, dd, again, b}) tl_free(x);
}

TEST_CASE("errors are reported through status codes") {
  tl_trellis* t = nullptr;
  CHECK(tl_parse("field 2\nsymbols 1\nstates 1\nconstraint 0\n1|1\n", &t) == TL_ERR_PARSE);
  CHECK(std::string(tl_last_error()).find("line 5") != std::string::npos);
  CHECK(t == nullptr);
  CHECK(tl_load("/nonexistent/x.trellis", &t) == TL_ERR_IO);
  CHECK(tl_parse(nullptr, &t) == TL_ERR_ARGUMENT);
  CHECK(std::string(tl_status_name(TL_NO_METHOD)) == "no applicable method");

  REQUIRE(tl_parse(kFig1a, &t) == TL_OK);
  char* out = nullptr;
  CHECK(tl_analyze(t, "7:1", 0, TL_FORMAT_TEXT, &out) == TL_ERR_ARGUMENT);
  CHECK(tl_analyze(t, "x", 0, TL_FORMAT_TEXT, &out) == TL_ERR_ARGUMENT);
  tl_trellis* r = nullptr;
  char* log = nullptr;
  CHECK(tl_reduce(t, "frobnicate", nullptr, 0, &r, &log, nullptr) == TL_ERR_ARGUMENT);
  REQUIRE(tl_reduce(t, "two-reduction", nullptr, 0, &r, &log, nullptr) == TL_OK);
  CHECK(states(r) == std::vector<size_t>{1, 0, 2});
  tl_string_free(log);
  tl_free(r);
  tl_free(t);
  REQUIRE(tl_load(corpus("zero.trellis").c_str(), &t) == TL_OK);
  CHECK(tl_reduce(t, "two-reduction", nullptr, 0, &r, &log, nullptr) == TL_ERR_PRECONDITION);
  tl_free(t);
}

TEST_CASE("analysis through the C interface") {
  tl_trellis* t = nullptr;
  REQUIRE(tl_load(corpus("fig1b.trellis").c_str(), &t) == TL_OK);
  char* out = nullptr;
  REQUIRE(tl_analyze(t, nullptr, 0, TL_FORMAT_TEXT, &out) == TL_OK);
  CHECK(take(out).find("not state-trim at time 2") != std::string::npos);
  REQUIRE(tl_analyze(t, "0:2", 1, TL_FORMAT_JSON, &out) == TL_OK);
  const std::string js = take(out);
  CHECK(js.find("\"fragment\"") != std::string::npos);
  CHECK(js.find("\"t_profile\"") != std::string::npos);
  tl_free(t);
}

TEST_CASE("reduction, step logs and replay") {
  tl_trellis* t = nullptr;
  REQUIRE(tl_load(corpus("fig3a.trellis").c_str(), &t) == TL_OK);
  tl_trellis* r = nullptr;
  char* log = nullptr;
  char* report = nullptr;
  REQUIRE(tl_reduce(t, "auto", nullptr, 0, &r, &log, &report) == TL_OK);
  const std::string steps = take(log);
  CHECK(take(report).find("\"conventional\"") != std::string::npos);
  tl_trellis* again = nullptr;
  REQUIRE(tl_replay(t, steps.c_str(), &again) == TL_OK);
  char *a = nullptr, *b = nullptr;
  REQUIRE(tl_serialize(r, &a) == TL_OK);
  REQUIRE(tl_serialize(again, &b) == TL_OK);
  CHECK(take(a) == take(b));
  tl_free(r);
  tl_free(again);
  tl_free(t);

  REQUIRE(tl_load(corpus("fig7.trellis").c_str(), &t) == TL_OK);
  REQUIRE(tl_reduce(t, "zero-run", "0:6", 0, &r, &log, nullptr) == TL_OK);
  const std::string one = take(log);
  CHECK(one.find("\"strict\":true") != std::string::npos);
  CHECK(one.find("\"conservative\":true") != std::string::npos);
  CHECK(one.find("\"interval\":\"5:4\"") != std::string::npos);
  CHECK(states(r) == std::vector<size_t>{3, 3, 3, 2, 1, 1, 1, 2, 2});
  tl_free(r);
  CHECK(tl_reduce(t, "zero-run", "0:7", 0, &r, &log, nullptr) == TL_ERR_PRECONDITION);
  CHECK(tl_reduce(t, "zero-run", "0:8", 0, &r, &log, nullptr) == TL_ERR_ARGUMENT);
  tl_free(t);

  REQUIRE(tl_load(corpus("fig10a.trellis").c_str(), &t) == TL_OK);
  CHECK(tl_reduce(t, "auto", nullptr, 0, &r, &log, nullptr) == TL_NO_METHOD);
  CHECK(take(log).empty());
  tl_free(r);
  tl_free(t);

  REQUIRE(tl_load(corpus("fig3b.trellis").c_str(), &t) == TL_OK);
  REQUIRE(tl_reduce(t, "branch-trim", nullptr, 0, &r, &log, nullptr) == TL_OK);
  CHECK(take(log).find("\"index\":4") != std::string::npos);
  tl_trellis* r2 = nullptr;
  CHECK(tl_reduce(r, "branch-trim", nullptr, 0, &r2, &log, nullptr) == TL_NO_METHOD);
  tl_string_free(log);
  tl_free(r2);
  tl_free(r);
  tl_trellis* a3 = nullptr;
  REQUIRE(tl_load(corpus("fig3a.trellis").c_str(), &a3) == TL_OK);
  REQUIRE(tl_reduce(a3, "branch-trim", nullptr, 1, &r, &log, nullptr) == TL_OK);
  tl_string_free(log);
  tl_trellis* d = nullptr;
  REQUIRE(tl_dual(r, &d) == TL_OK);
  tl_trellis* expect = nullptr;
  REQUIRE(tl_load(corpus("fig4b.trellis").c_str(), &expect) == TL_OK);
  int verdict = -1;
  CHECK(tl_isomorphic(d, expect, &verdict) == TL_OK);
  CHECK(verdict == 0);
  for (tl_trellis* x : {t, r, a3, d, expect}) tl_free(x);
}

TEST_CASE("rendering and corpus verification") {
  tl_trellis* t = nullptr;
  REQUIRE(tl_parse(kFig1a, &t) == TL_OK);
  char* dot = nullptr;
  REQUIRE(tl_render_dot(t, &dot) == TL_OK);
  CHECK(take(dot).rfind("digraph trellis {", 0) == 0);
  tl_free(t);

  char* out = nullptr;
  int ok = 0;
  REQUIRE(tl_verify_corpus(TRELLIS_LAB_CORPUS_DIR, "fig3a", TL_FORMAT_TEXT, &out, &ok) == TL_OK);
  CHECK(ok == 1);
  CHECK(take(out).find("fig5a") != std::string::npos);
  CHECK(tl_verify_corpus("/nonexistent", nullptr, TL_FORMAT_TEXT, &out, &ok) == TL_ERR_IO);
}
