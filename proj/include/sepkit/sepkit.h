#ifndef SEPKIT_SEPKIT_H
#define SEPKIT_SEPKIT_H

/* C interface to the sepkit library.
 *
 * Graphs are opaque handles. Functions that produce text allocate it and hand
 * ownership to the caller, who releases it with sepkit_string_free. On any
 * status other than SEPKIT_OK, sepkit_last_error() returns a message
 * describing the failure; it stays valid until the next call on the same
 * thread.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SEPKIT_BUILDING_LIBRARY)
#    define SEPKIT_API __declspec(dllexport)
#  else
#    define SEPKIT_API __declspec(dllimport)
#  endif
#else
#  define SEPKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sepkit_graph sepkit_graph;

typedef enum sepkit_status {
  SEPKIT_OK = 0,
  SEPKIT_ERR_DIVISION_BY_ZERO,
  SEPKIT_ERR_FIELD_MISMATCH,
  SEPKIT_ERR_ZERO_ELEMENT,
  SEPKIT_ERR_SCHEMA,
  SEPKIT_ERR_SELF_LOOP,
  SEPKIT_ERR_DISCONNECTED,
  SEPKIT_ERR_UNKNOWN_ID,
  SEPKIT_ERR_BAD_FIELD_ELEMENT,
  SEPKIT_ERR_EMPTY_SELECTION,
  SEPKIT_ERR_DISCONNECTED_SELECTION,
  SEPKIT_ERR_NONTRIVIAL_REPRESENTATION,
  SEPKIT_ERR_SADDLE_NODE_PRESENT,
  SEPKIT_ERR_NOT_A_TREE,
  SEPKIT_ERR_HYPOTHESIS_UNMET,
  SEPKIT_ERR_GORENSTEIN_INCONSISTENT,
  SEPKIT_ERR_VALIDATION_FAILED,
  SEPKIT_ERR_BAD_PARAMS,
  SEPKIT_ERR_INVALID_ARGUMENT,
  SEPKIT_ERR_INTERNAL
} sepkit_status;

typedef enum sepkit_format {
  SEPKIT_FORMAT_JSON = 0,
  SEPKIT_FORMAT_TEXT = 1
} sepkit_format;

/* Parses and validates a graph document. The digest of the raw bytes is kept
 * for reports. */
SEPKIT_API sepkit_status sepkit_graph_parse(const char* text, size_t length, sepkit_graph** out);
SEPKIT_API void sepkit_graph_free(sepkit_graph* graph);

/* Canonical JSON form of the parsed graph. */
SEPKIT_API sepkit_status sepkit_graph_serialize(const sepkit_graph* graph, char** out);

/* Index findings. *has_errors is set to 1 when any finding is an error. */
SEPKIT_API sepkit_status sepkit_validate(const sepkit_graph* graph, sepkit_format format, char** out,
                                         int* has_errors);

/* Full analysis report; the certificate is omitted when *has_errors is 1. */
SEPKIT_API sepkit_status sepkit_analyze(const sepkit_graph* graph, sepkit_format format, char** out,
                                        int* has_errors);

/* Pruned tree subcurve, or the induced subcurve of `keep` when nkeep > 0. */
SEPKIT_API sepkit_status sepkit_prune(const sepkit_graph* graph, const char* const* keep, size_t nkeep,
                                      sepkit_format format, char** out);

/* Certificate from the rule chain, or from the subcurve criterion applied to
 * `keep` when nkeep > 0. */
SEPKIT_API sepkit_status sepkit_verdict(const sepkit_graph* graph, const char* const* keep, size_t nkeep,
                                        sepkit_format format, char** out);

/* Generated input document. params_json may be NULL or an object such as
 * {"self_intersections": [-2, -2, -3]} or {"seed": 7, "n": 20}. */
SEPKIT_API sepkit_status sepkit_example(const char* name, const char* params_json, char** out);

SEPKIT_API void sepkit_string_free(char* text);
SEPKIT_API const char* sepkit_last_error(void);
SEPKIT_API const char* sepkit_status_name(sepkit_status status);
SEPKIT_API const char* sepkit_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SEPKIT_SEPKIT_H */
