#ifndef INPKIT_H
#define INPKIT_H

/* C interface to inpkit. All handles are opaque; every handle returned by a
 * constructor must be released with the matching *_free function. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with inpkit_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(INPKIT_BUILDING)
#    define INPKIT_API __declspec(dllexport)
#  else
#    define INPKIT_API __declspec(dllimport)
#  endif
#else
#  define INPKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum inpkit_status {
  INPKIT_OK = 0,
  INPKIT_E_NULL = 1,       /* a required pointer argument was null */
  INPKIT_E_PARSE = 2,      /* malformed decimal or word */
  INPKIT_E_ARGUMENT = 3,   /* precondition violated */
  INPKIT_E_UNKNOWN_DEMO = 4,
  INPKIT_E_INTERNAL = 5
} inpkit_status;

typedef enum inpkit_verdict_kind {
  INPKIT_VERIFIED = 0,
  INPKIT_REFUTED = 1,
  INPKIT_UNKNOWN = 2
} inpkit_verdict_kind;

typedef enum inpkit_format {
  INPKIT_FORMAT_TABLE = 0,
  INPKIT_FORMAT_JSON = 1
} inpkit_format;

typedef struct inpkit_kb_element inpkit_kb_element;
typedef struct inpkit_pattern inpkit_pattern;
typedef struct inpkit_verdict inpkit_verdict;
typedef struct inpkit_report inpkit_report;

/* Message of the last failed call on this thread; empty if none. */
INPKIT_API const char* inpkit_last_error(void);
INPKIT_API const char* inpkit_version(void);
INPKIT_API void inpkit_string_free(char* s);

/* Klein bottle group elements x^n y^m, coordinates as decimal strings. */
INPKIT_API inpkit_status inpkit_kb_new(const char* n, const char* m, inpkit_kb_element** out);
INPKIT_API inpkit_status inpkit_kb_mul(const inpkit_kb_element* a, const inpkit_kb_element* b,
                                       inpkit_kb_element** out);
INPKIT_API inpkit_status inpkit_kb_inv(const inpkit_kb_element* a, inpkit_kb_element** out);
/* *out is -1, 0 or 1 under the lexicographic left order. */
INPKIT_API inpkit_status inpkit_kb_compare(const inpkit_kb_element* a, const inpkit_kb_element* b, int* out);
INPKIT_API inpkit_status inpkit_kb_to_string(const inpkit_kb_element* a, char** out);
INPKIT_API void inpkit_kb_free(inpkit_kb_element* a);

INPKIT_API inpkit_status inpkit_pattern_kb_depth2(size_t n_cols, size_t j_cols, inpkit_pattern** out);
INPKIT_API inpkit_status inpkit_pattern_free_chain(size_t n, size_t cols, inpkit_pattern** out);
INPKIT_API inpkit_status inpkit_pattern_to_json(const inpkit_pattern* p, char** out);
INPKIT_API void inpkit_pattern_free(inpkit_pattern* p);

/* threads = 0 picks the hardware concurrency. */
INPKIT_API inpkit_status inpkit_verify(const inpkit_pattern* p, unsigned threads, inpkit_verdict** out);
INPKIT_API inpkit_verdict_kind inpkit_verdict_get_kind(const inpkit_verdict* v);
INPKIT_API size_t inpkit_verdict_witness_count(const inpkit_verdict* v);
INPKIT_API inpkit_status inpkit_verdict_to_json(const inpkit_verdict* v, char** out);
INPKIT_API void inpkit_verdict_free(inpkit_verdict* v);

INPKIT_API size_t inpkit_demo_count(void);
INPKIT_API const char* inpkit_demo_name(size_t i);

/* Marks an option left at the demo default. */
#define INPKIT_UNSET INT64_MIN

typedef struct inpkit_demo_options {
  int64_t depth;
  int64_t cols;
  int64_t bound;
  int64_t cap;
  uint64_t seed;
} inpkit_demo_options;

/* Sets every option to INPKIT_UNSET and the seed to 1. */
INPKIT_API void inpkit_demo_options_init(inpkit_demo_options* o);
/* Non-positive options are rejected with INPKIT_E_ARGUMENT. */
INPKIT_API inpkit_status inpkit_run_demo(const char* name, const inpkit_demo_options* o, inpkit_report** out);
INPKIT_API int inpkit_report_passed(const inpkit_report* r);
INPKIT_API inpkit_status inpkit_report_emit(const inpkit_report* r, inpkit_format format, int include_timing,
                                            char** out);
INPKIT_API void inpkit_report_free(inpkit_report* r);

#ifdef __cplusplus
}
#endif

#endif
