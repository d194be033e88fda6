#ifndef FOLRED_H
#define FOLRED_H

/* C interface to the foliation reduction toolkit. Handles are opaque; every
   string returned through an out-parameter is owned by the caller and released
   with folred_string_free. The message of the last failure on the calling
   thread is available through folred_last_error. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FOLRED_API __declspec(dllexport)
#else
#define FOLRED_API __attribute__((visibility("default")))
#endif

typedef enum folred_status {
  FOLRED_OK = 0,
  FOLRED_ERR_PARSE = 1,
  FOLRED_ERR_PRECONDITION = 2,
  FOLRED_ERR_CONTEXT_MISMATCH = 3,
  FOLRED_ERR_NON_ISOLATED = 4,
  FOLRED_ERR_IDENTICAL_FOLIATIONS = 5,
  FOLRED_ERR_NON_REDUCED = 6,
  FOLRED_ERR_DEPTH_LIMIT = 7,
  FOLRED_ERR_INSUFFICIENT_ORDER = 8,
  FOLRED_ERR_UNRESOLVED_LOCUS = 9,
  FOLRED_ERR_INCONCLUSIVE = 10,
  FOLRED_ERR_NOT_A_SYMMETRY = 11,
  FOLRED_ERR_INTERNAL = 12,
  FOLRED_ERR_IO = 13,
  FOLRED_ERR_NULL_ARGUMENT = 14
} folred_status;

/* Broad classes used for process exit codes. */
typedef enum folred_status_class {
  FOLRED_CLASS_OK = 0,
  FOLRED_CLASS_INTERNAL = 1,
  FOLRED_CLASS_PRECONDITION = 2,
  FOLRED_CLASS_RESOURCE = 3
} folred_status_class;

typedef struct folred_germ folred_germ;
typedef struct folred_report folred_report;

typedef struct folred_config {
  const char* pipeline; /* NULL selects "classify" */
  int order;            /* <= 0 selects 12 */
  int depth_limit;      /* < 0 selects 24 */
  int timing;           /* nonzero adds timings to the report */
} folred_config;

FOLRED_API const char* folred_version(void);
FOLRED_API const char* folred_status_name(folred_status status);
FOLRED_API folred_status_class folred_classify_status(folred_status status);
FOLRED_API const char* folred_last_error(void);
FOLRED_API void folred_string_free(char* s);

/* Pipeline names, NULL past the end. */
FOLRED_API const char* folred_pipeline_name(size_t index);
FOLRED_API void folred_config_default(folred_config* cfg);

FOLRED_API folred_status folred_germ_parse(const char* text, folred_germ** out);
FOLRED_API folred_status folred_germ_print(const folred_germ* germ, char** out);
/* 1 when equal, 0 when not, -1 on a NULL argument. */
FOLRED_API int folred_germ_equal(const folred_germ* a, const folred_germ* b);
FOLRED_API void folred_germ_free(folred_germ* germ);

/* Runs a pipeline on an input document. A report is produced even when the
   pipeline fails; the return value is the pipeline status. */
FOLRED_API folred_status folred_run(const char* document, const folred_config* cfg, folred_report** out);
FOLRED_API const char* folred_report_json(const folred_report* report);
/* NULL when the pipeline built no tree. */
FOLRED_API const char* folred_report_dot(const folred_report* report);
FOLRED_API folred_status folred_report_status(const folred_report* report);
FOLRED_API void folred_report_free(folred_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FOLRED_H */
