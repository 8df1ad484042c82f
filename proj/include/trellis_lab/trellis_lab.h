#ifndef TRELLIS_LAB_H
#define TRELLIS_LAB_H

/* C interface to the trellis library. Every function returns a tl_status; on
 * failure tl_last_error() describes the problem (thread-local, valid until the
 * next call on the same thread). Strings returned through char** are owned by
 * the caller and released with tl_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tl_trellis tl_trellis;

typedef enum {
  TL_OK = 0,
  TL_ERR_ARGUMENT = 1,     /* null pointer, bad option string */
  TL_ERR_PARSE = 2,        /* malformed trellis text or step log */
  TL_ERR_IO = 3,           /* file could not be read or written */
  TL_ERR_PRECONDITION = 4, /* operation not defined for this input */
  TL_ERR_UNDECIDED = 5,    /* a bounded search gave up */
  TL_ERR_INTERNAL = 6,     /* consistency check failed (a bug) */
  TL_NO_METHOD = 7         /* reduction requested, none applies */
} tl_status;

typedef enum { TL_FORMAT_TEXT = 0, TL_FORMAT_JSON = 1 } tl_format;

const char* tl_last_error(void);
const char* tl_status_name(tl_status s);
const char* tl_version(void);

tl_status tl_parse(const char* text, tl_trellis** out);
tl_status tl_load(const char* path, tl_trellis** out);
void tl_free(tl_trellis* t);
void tl_string_free(char* s);

tl_status tl_serialize(const tl_trellis* t, char** out);
tl_status tl_save(const tl_trellis* t, const char* path);

tl_status tl_length(const tl_trellis* t, size_t* m);
/* Writes up to cap entries; *count receives the length either way. */
tl_status tl_state_dims(const tl_trellis* t, size_t* dims, size_t cap, size_t* count);
tl_status tl_constraint_dims(const tl_trellis* t, size_t* dims, size_t cap, size_t* count);

tl_status tl_dual(const tl_trellis* t, tl_trellis** out);
/* *verdict: 0 isomorphic, 1 not isomorphic, 2 undecided. */
tl_status tl_isomorphic(const tl_trellis* a, const tl_trellis* b, int* verdict);

/* fragment: NULL or "j:len". */
tl_status tl_analyze(const tl_trellis* t, const char* fragment, int t_profile, tl_format format, char** out);

/* method: auto, unobs-trim, branch-trim, zero-run, two-reduction.
 * arg: for zero-run "j:len" (fragment start and length); for unobs-trim and
 * branch-trim an optional time index; otherwise NULL.
 * dual: apply the method to the dual and dualize back.
 * On TL_OK and TL_NO_METHOD, *out holds the final trellis and *log the step
 * records (one JSON object per line); *report (optional) gets a JSON summary. */
tl_status tl_reduce(const tl_trellis* t, const char* method, const char* arg, int dual, tl_trellis** out,
                    char** log, char** report);
tl_status tl_replay(const tl_trellis* t, const char* log, tl_trellis** out);

tl_status tl_render_dot(const tl_trellis* t, char** out);

/* only: NULL or an entry id. *all_pass is set to 1 when every check passed. */
tl_status tl_verify_corpus(const char* dir, const char* only, tl_format format, char** out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
