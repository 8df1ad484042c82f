#include "trellis_lab/trellis_lab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "trellis_lab/analysis.hpp"
#include "trellis_lab/corpus.hpp"
#include "trellis_lab/driver.hpp"
#include "trellis_lab/errors.hpp"
#include "trellis_lab/fragments.hpp"
#include "trellis_lab/render.hpp"
#include "trellis_lab/report.hpp"
#include "trellis_lab/spec_file.hpp"

struct tl_trellis {
  trellis_lab::Trellis t;
};

namespace {

using namespace trellis_lab;

thread_local std::string last_error;

tl_status fail(tl_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
tl_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const ParseError& e) {
    return fail(TL_ERR_PARSE, e.what());
  } catch (const PreconditionError& e) {
    return fail(TL_ERR_PRECONDITION, e.what());
  } catch (const UndecidedError& e) {
    return fail(TL_ERR_UNDECIDED, e.what());
  } catch (const InternalError& e) {
    return fail(TL_ERR_INTERNAL, e.what());
  } catch (const Error& e) {
    return fail(TL_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TL_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(TL_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(TL_ERR_INTERNAL, e.what());
  }
}

Span parse_span(const std::string& s, std::size_t m) {
  const auto colon = s.find(':');
  auto num = [&](const std::string& w) {
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("expected j:len, got '" + s + "'");
    }
    return static_cast<std::size_t>(std::stoul(w));
  };
  if (colon == std::string::npos) throw std::invalid_argument("expected j:len, got '" + s + "'");
  const std::size_t j = num(s.substr(0, colon)), len = num(s.substr(colon + 1));
  if (j >= m || len > m) throw std::invalid_argument("interval " + s + " out of range for length " + std::to_string(m));
  return Span::make(j, len, m);
}

std::optional<std::size_t> parse_index(const char* arg, std::size_t m) {
  if (!arg || !*arg) return std::nullopt;
  const std::string s(arg);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("expected a time index, got '" + s + "'");
  }
  const std::size_t i = std::stoul(s);
  if (i >= m) throw std::invalid_argument("time index " + s + " out of range");
  return i;
}

tl_trellis* wrap(Trellis t) { return new tl_trellis{std::move(t)}; }

tl_status dims_out(const std::vector<std::size_t>& v, size_t* dims, size_t cap, size_t* count) {
  if (count) *count = v.size();
  for (std::size_t i = 0; i < v.size() && i < cap && dims; ++i) dims[i] = v[i];
  return TL_OK;
}

}  // namespace

extern "C" {

const char* tl_last_error(void) { return last_error.c_str(); }

const char* tl_status_name(tl_status s) {
  switch (s) {
    case TL_OK:
      return "ok";
    case TL_ERR_ARGUMENT:
      return "invalid argument";
    case TL_ERR_PARSE:
      return "parse error";
    case TL_ERR_IO:
      return "i/o error";
    case TL_ERR_PRECONDITION:
      return "precondition violated";
    case TL_ERR_UNDECIDED:
      return "undecided";
    case TL_ERR_INTERNAL:
      return "internal error";
    case TL_NO_METHOD:
      return "no applicable method";
  }
  return "unknown status";
}

const char* tl_version(void) { return "0.1.0"; }

tl_status tl_parse(const char* text, tl_trellis** out) {
  if (!text || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = wrap(parse_spec(text));
    return TL_OK;
  });
}

tl_status tl_load(const char* path, tl_trellis** out) {
  if (!path || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = wrap(load_spec(path));
    return TL_OK;
  });
}

void tl_free(tl_trellis* t) { delete t; }

void tl_string_free(char* s) { std::free(s); }

tl_status tl_serialize(const tl_trellis* t, char** out) {
  if (!t || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(serialize_spec(t->t));
    return TL_OK;
  });
}

tl_status tl_save(const tl_trellis* t, const char* path) {
  if (!t || !path) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    save_spec(path, t->t);
    return TL_OK;
  });
}

tl_status tl_length(const tl_trellis* t, size_t* m) {
  if (!t || !m) return fail(TL_ERR_ARGUMENT, "null argument");
  *m = t->t.length();
  return TL_OK;
}

tl_status tl_state_dims(const tl_trellis* t, size_t* dims, size_t cap, size_t* count) {
  if (!t) return fail(TL_ERR_ARGUMENT, "null argument");
  return dims_out(t->t.state_dims(), dims, cap, count);
}

tl_status tl_constraint_dims(const tl_trellis* t, size_t* dims, size_t cap, size_t* count) {
  if (!t) return fail(TL_ERR_ARGUMENT, "null argument");
  return dims_out(dim_profile(t->t).constraints, dims, cap, count);
}

tl_status tl_dual(const tl_trellis* t, tl_trellis** out) {
  if (!t || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = wrap(dualize(t->t));
    return TL_OK;
  });
}

tl_status tl_isomorphic(const tl_trellis* a, const tl_trellis* b, int* verdict) {
  if (!a || !b || !verdict) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const Isomorphism iso = is_isomorphic(a->t, b->t);
    *verdict = static_cast<int>(iso.verdict);
    if (iso.verdict != Verdict::yes) last_error = iso.reason;
    return TL_OK;
  });
}

tl_status tl_analyze(const tl_trellis* t, const char* fragment, int t_profile, tl_format format, char** out) {
  if (!t || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    AnalyzeOptions opts;
    if (fragment && *fragment) opts.fragment = parse_span(fragment, t->t.length());
    opts.t_profile = t_profile != 0;
    const json r = analysis_json(t->t, opts);
    *out = dup(format == TL_FORMAT_JSON ? r.dump(2) + "\n" : analysis_text(r));
    return TL_OK;
  });
}

tl_status tl_reduce(const tl_trellis* t, const char* method, const char* arg, int dual, tl_trellis** out,
                    char** log, char** report) {
  if (!t || !method || !out || !log) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string name(method);
    const Trellis& in = t->t;
    const std::size_t m = in.length();
    const Field& f = in.field();
    std::vector<ReductionStep> steps;
    Trellis result = in;
    tl_status status = TL_OK;
    json rep;
    if (name == "auto") {
      if (dual) throw std::invalid_argument("--dual does not apply to the automatic method");
      ReductionReport r = reduce_driver(in);
      if (r.steps.empty()) status = TL_NO_METHOD;
      rep = reduction_json(r);
      steps = std::move(r.steps);
      result = std::move(r.final);
    } else {
      Op op;
      op.name = name;
      op.dual = dual != 0;
      const Trellis side = op.dual ? dualize(in) : in;
      if (name == "unobs-trim") {
        op.index = parse_index(arg, m);
        if (!op.index && observable(side)) status = TL_NO_METHOD;
      } else if (name == "branch-trim") {
        op.index = parse_index(arg, m);
        if (!op.index) {
          const auto fl = global_trim_flags(side);
          for (std::size_t i = 0; i < m && !op.index; ++i) {
            if (!fl.branch_trim_at[i]) op.index = i;
          }
          if (!op.index) status = TL_NO_METHOD;
        }
      } else if (name == "zero-run") {
        if (!arg) throw std::invalid_argument("zero-run needs a fragment j:len");
        const Span iv = parse_span(arg, m);
        if (iv.len == 0 || iv.len + 2 > m) {
          throw std::invalid_argument("zero-run needs a fragment length between 1 and m-2");
        }
        op.start = iv.start;
        op.len = iv.len;
        op.stage = ZeroRunStage::strict;
      } else if (name == "two-reduction") {
        if (arg && *arg) throw std::invalid_argument("two-reduction takes no argument");
      } else {
        throw std::invalid_argument("unknown method '" + name + "'");
      }
      if (status == TL_OK) {
        result = apply_op(in, op);
        steps.push_back(record_step(in, result, op));
      }
      json js = json::array();
      for (const auto& s : steps) js.push_back(step_to_json(f, s));
      rep = {{"status", status == TL_OK ? "reduced" : "no-applicable-method"},
             {"steps", js},
             {"final", {{"state_dims", result.state_dims()}, {"constraint_dims", dim_profile(result).constraints}}}};
    }
    *out = wrap(result);
    *log = dup(step_log(f, steps));
    if (report) *report = dup(rep.dump(2) + "\n");
    if (status == TL_NO_METHOD) last_error = "no applicable method";
    return status;
  });
}

tl_status tl_replay(const tl_trellis* t, const char* log, tl_trellis** out) {
  if (!t || !log || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = wrap(replay_log(t->t, log));
    return TL_OK;
  });
}

tl_status tl_render_dot(const tl_trellis* t, char** out) {
  if (!t || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(render_dot(t->t));
    return TL_OK;
  });
}

tl_status tl_verify_corpus(const char* dir, const char* only, tl_format format, char** out, int* all_pass) {
  if (!dir || !out) return fail(TL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::optional<std::string> o;
    if (only && *only) o = only;
    const CorpusReport r = verify_corpus(dir, o);
    *out = dup(format == TL_FORMAT_JSON ? corpus_json(r).dump(2) + "\n" : corpus_text(r));
    if (all_pass) *all_pass = r.all_pass() ? 1 : 0;
    return TL_OK;
  });
}

}  // extern "C"
