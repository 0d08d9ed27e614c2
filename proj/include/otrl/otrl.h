/*
 * otrl -- exact discrete optimal transport over four ground spaces
 * ([0,1], [0,1]+q, R^2, R^2+q), isometry candidates, and verification
 * suites, behind a plain C interface.
 *
 * All functions return otrl_status; on failure otrl_last_error() holds a
 * message for the calling thread. Strings returned through char** out
 * parameters are heap-allocated and must be released with otrl_string_free.
 */

#ifndef OTRL_H
#define OTRL_H

#include <stdint.h>

#ifndef OTRL_API
#if defined(_WIN32) && defined(OTRL_BUILD_SHARED)
#define OTRL_API __declspec(dllexport)
#elif defined(_WIN32)
#define OTRL_API __declspec(dllimport)
#elif defined(__GNUC__)
#define OTRL_API __attribute__((visibility("default")))
#else
#define OTRL_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum otrl_status {
  OTRL_OK = 0,
  OTRL_ERR_INVALID_ARGUMENT = 1, /* bad parameters, unknown names, bad config */
  OTRL_ERR_PARSE = 2,            /* malformed JSON (message carries position) */
  OTRL_ERR_DOMAIN = 3,           /* valid JSON violating a mathematical precondition */
  OTRL_ERR_INTERNAL = 4
} otrl_status;

/* Opaque handles. */
typedef struct otrl_space otrl_space;
typedef struct otrl_measure otrl_measure;

OTRL_API const char* otrl_version(void);

/* Message for the most recent failure on the calling thread. */
OTRL_API const char* otrl_last_error(void);

OTRL_API void otrl_string_free(char* s);

/* Ground spaces: {"kind":"interval"|"interval_q"|"plane"|"plane_q","D":...}
 * with D present exactly for interval_q. */
OTRL_API otrl_status otrl_space_parse(const char* json, otrl_space** out);
OTRL_API otrl_status otrl_space_to_json(const otrl_space* space, char** out_json);
OTRL_API void otrl_space_free(otrl_space* space);

/* Measures: {"space":...,"atoms":[{"point":...,"w":...},...]}. The space
 * member may be omitted when space_hint is given; if both are present they
 * must agree. space_hint may be NULL. */
OTRL_API otrl_status otrl_measure_parse(const char* json, const otrl_space* space_hint,
                                        otrl_measure** out);
OTRL_API otrl_status otrl_measure_to_json(const otrl_measure* mu, char** out_json);
OTRL_API void otrl_measure_free(otrl_measure* mu);

/* Exact W_p between measures on the same space (p >= 1). On success writes
 * {"distance":...,"cost":...,"plan":[[i,j,w],...]}. */
OTRL_API otrl_status otrl_distance(const otrl_measure* mu, const otrl_measure* nu, double p,
                                   char** out_json);

/* Applies a named map: "trivial:id", "trivial:r", "flip",
 * "kloeckner:<theta>", "project". */
OTRL_API otrl_status otrl_map_apply(const char* name, const otrl_measure* mu,
                                    otrl_measure** out);

/* Runs a verification suite group: "all", "thm1", "thm2", "duality",
 * "geodesics", "slices". far_distance must exceed 1, samples must be
 * positive. Writes the JSON report and sets *out_all_pass to 1 iff every
 * check passed. Check failures are reported through the flag, not through
 * the return status. */
OTRL_API otrl_status otrl_verify(const char* group, double far_distance, uint64_t seed,
                                 int samples, char** out_report_json, int* out_all_pass);

/* JSON schema text for "ground_space", "measure", or "suite_report". */
OTRL_API otrl_status otrl_schema(const char* name, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OTRL_H */
