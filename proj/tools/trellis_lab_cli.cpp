// trellis-lab: command-line front end over the C interface.
//
// Exit codes: 0 success, 1 error, 2 no applicable method.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trellis_lab/trellis_lab.h"

#ifndef TRELLIS_LAB_CORPUS_DIR
#define TRELLIS_LAB_CORPUS_DIR "corpus"
#endif

namespace {

struct Failure {
  int code;
};

using TrellisPtr = std::unique_ptr<tl_trellis, decltype(&tl_free)>;

std::string take(char* s) {
  std::string out = s ? s : "";
  tl_string_free(s);
  return out;
}

void check(tl_status s, const std::string& what) {
  if (s == TL_OK) return;
  std::cerr << "trellis-lab: " << what << ": " << tl_status_name(s);
  const std::string detail = tl_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  throw Failure{1};
}

TrellisPtr load(const std::string& path) {
  tl_trellis* t = nullptr;
  check(tl_load(path.c_str(), &t), path);
  return TrellisPtr(t, tl_free);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "trellis-lab: cannot write '" << path << "'\n";
    throw Failure{1};
  }
}

// "-" or empty means standard output.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "trellis-lab: cannot open '" << path << "'\n";
    throw Failure{1};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

tl_format format_of(const std::string& f) { return f == "json" ? TL_FORMAT_JSON : TL_FORMAT_TEXT; }

std::string corpus_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("TRELLIS_LAB_CORPUS_DIR"); env && *env) return env;
  return TRELLIS_LAB_CORPUS_DIR;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear tail-biting trellises: analysis, dualization, reduction and rendering"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, out, report, fragment, log_path, only, dir;
  bool t_profile = false, dual = false;
  std::vector<std::string> method;

  auto* analyze = app.add_subcommand("analyze", "Structural properties of a trellis");
  analyze->add_option("file", file, "Trellis file")->required();
  analyze->add_option("--fragment", fragment, "Fragment j:len for transition spaces");
  analyze->add_flag("--t-profile", t_profile, "Report t-observability and t-controllability for every t");
  analyze->add_option("--report", report, "Also write the JSON report to this file");

  auto* dualc = app.add_subcommand("dual", "Write the dual trellis");
  dualc->add_option("file", file, "Trellis file")->required();
  dualc->add_option("-o,--out", out, "Output file (default: standard output)");

  auto* reduce = app.add_subcommand("reduce", "Apply reductions and write the result with a step log");
  reduce->add_option("file", file, "Trellis file")->required();
  reduce->add_option("--method", method, "auto, unobs-trim [i], branch-trim [i], zero-run j:len, two-reduction")
      ->expected(1, 2)
      ->default_str("auto");
  reduce->add_flag("--dual", dual, "Apply the method to the dual trellis and dualize back");
  reduce->add_option("-o,--out", out, "Output trellis file (default: standard output)");
  reduce->add_option("--log", log_path, "Step log file (JSON lines; default: <out>.steps.jsonl)");

  auto* replay = app.add_subcommand("replay", "Re-apply a step log to a trellis");
  replay->add_option("file", file, "Trellis file")->required();
  replay->add_option("log", log_path, "Step log")->required();
  replay->add_option("-o,--out", out, "Output trellis file (default: standard output)");

  auto* render = app.add_subcommand("render", "Graphviz diagram of a trellis");
  render->add_option("file", file, "Trellis file")->required();
  render->add_option("-o,--out", out, "DOT file (default: standard output)");

  auto* verify = app.add_subcommand("verify-corpus", "Check the reference corpus against its manifest");
  verify->add_option("--only", only, "Run one entry and the entries derived from it");
  verify->add_option("--dir", dir, "Corpus directory (default: $TRELLIS_LAB_CORPUS_DIR or the bundled corpus)");

  CLI11_PARSE(app, argc, argv);
  const tl_format fmt = format_of(format);

  try {
    if (analyze->parsed()) {
      auto t = load(file);
      char* text = nullptr;
      check(tl_analyze(t.get(), fragment.empty() ? nullptr : fragment.c_str(), t_profile, fmt, &text), "analyze");
      std::cout << take(text);
      if (!report.empty()) {
        char* js = nullptr;
        check(tl_analyze(t.get(), fragment.empty() ? nullptr : fragment.c_str(), t_profile, TL_FORMAT_JSON, &js),
              "analyze");
        write_file(report, take(js));
      }
      return 0;
    }
    if (dualc->parsed()) {
      auto t = load(file);
      tl_trellis* d = nullptr;
      check(tl_dual(t.get(), &d), "dual");
      TrellisPtr dp(d, tl_free);
      char* text = nullptr;
      check(tl_serialize(dp.get(), &text), "dual");
      emit(out, take(text));
      return 0;
    }
    if (reduce->parsed()) {
      auto t = load(file);
      const std::string name = method.empty() ? "auto" : method[0];
      const char* arg = method.size() > 1 ? method[1].c_str() : nullptr;
      tl_trellis* r = nullptr;
      char* log = nullptr;
      char* rep = nullptr;
      const tl_status s = tl_reduce(t.get(), name.c_str(), arg, dual, &r, &log, &rep);
      if (s != TL_NO_METHOD) check(s, "reduce");
      TrellisPtr rp(r, tl_free);
      const std::string log_text = take(log), rep_text = take(rep);
      if (s == TL_NO_METHOD) {
        if (fmt == TL_FORMAT_JSON) {
          std::cout << rep_text;
        } else {
          std::cerr << "trellis-lab: no applicable method\n";
        }
        return 2;
      }
      char* text = nullptr;
      check(tl_serialize(rp.get(), &text), "reduce");
      const std::string trellis_text = take(text);
      std::string lp = log_path;
      if (lp.empty() && !out.empty() && out != "-") lp = out + ".steps.jsonl";
      if (!lp.empty()) write_file(lp, log_text);
      if (fmt == TL_FORMAT_JSON) {
        if (!out.empty() && out != "-") write_file(out, trellis_text);
        std::cout << rep_text;
      } else {
        emit(out, trellis_text);
        std::ostream& info = (out.empty() || out == "-") ? std::cerr : std::cout;
        info << log_text;
      }
      return 0;
    }
    if (replay->parsed()) {
      auto t = load(file);
      const std::string log = read_file(log_path);
      tl_trellis* r = nullptr;
      check(tl_replay(t.get(), log.c_str(), &r), "replay");
      TrellisPtr rp(r, tl_free);
      char* text = nullptr;
      check(tl_serialize(rp.get(), &text), "replay");
      emit(out, take(text));
      return 0;
    }
    if (render->parsed()) {
      auto t = load(file);
      char* dot = nullptr;
      check(tl_render_dot(t.get(), &dot), "render");
      emit(out, take(dot));
      return 0;
    }
    if (verify->parsed()) {
      const std::string d = corpus_dir(dir);
      char* text = nullptr;
      int ok = 0;
      check(tl_verify_corpus(d.c_str(), only.empty() ? nullptr : only.c_str(), fmt, &text, &ok), "verify-corpus");
      std::cout << take(text);
      return ok ? 0 : 1;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 1;
}
