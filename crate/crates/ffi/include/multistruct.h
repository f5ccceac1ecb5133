#ifndef MULTISTRUCT_H
#define MULTISTRUCT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Status codes. Values 0 to 4 match the exit codes of the command line tool.
 */
typedef enum MsStatus {
  MS_STATUS_OK = 0,
  /**
   * A null pointer, invalid UTF-8 or an unknown field name.
   */
  MS_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The problem text does not parse.
   */
  MS_STATUS_PARSE = 2,
  /**
   * The ideal is not zero-dimensional, not local, or the unit ideal.
   */
  MS_STATUS_DOMAIN = 3,
  /**
   * The analysis finished and some property check was falsified. The
   * report is still returned.
   */
  MS_STATUS_FALSIFICATION = 4,
  /**
   * A panic was caught inside the library.
   */
  MS_STATUS_INTERNAL = 5,
} MsStatus;

/**
 * Which filtration a query refers to.
 */
typedef enum MsChain {
  /**
   * Powers of the maximal ideal.
   */
  MS_CHAIN_POWERS = 0,
  /**
   * Annihilators of the powers.
   */
  MS_CHAIN_ANNIHILATOR = 1,
  /**
   * Double annihilators of the powers.
   */
  MS_CHAIN_DOUBLE_ANNIHILATOR = 2,
} MsChain;

/**
 * An analysis report.
 */
typedef struct MsReport MsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library version as a static string. Do not free it.
 */
const char *ms_version(void);

/**
 * The message of the last failure on this thread, or null if there was
 * none. Do not free it.
 */
const char *ms_last_error_message(void);

/**
 * Analyzes a problem file given as text.
 *
 * `field` may be null to keep the field of the text, or a string such as
 * `"2"`, `"32003"` or `"Q"` to override it. On `MS_STATUS_OK` and
 * `MS_STATUS_FALSIFICATION`, `*out` receives a new report; otherwise
 * `*out` is set to null.
 *
 * # Safety
 * `text` and a non-null `field` must be NUL-terminated strings, and `out`
 * must point to writable storage for one pointer.
 */
enum MsStatus ms_analyze(const char *text, const char *field, struct MsReport **out);

/**
 * Analyzes a problem file over its own field. Same as `ms_analyze` with a
 * null field.
 *
 * # Safety
 * See `ms_analyze`.
 */
enum MsStatus ms_analyze_text(const char *text, struct MsReport **out);

/**
 * Releases a report. Null is ignored.
 *
 * # Safety
 * `report` must come from `ms_analyze` and not have been freed.
 */
void ms_report_free(struct MsReport *report);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ms_string_free(char *s);

/**
 * The report as pretty-printed JSON, or null if `report` is null.
 *
 * # Safety
 * `report` must be null or a live report.
 */
char *ms_report_json(const struct MsReport *report);

/**
 * The human-readable summary, or null if `report` is null.
 *
 * # Safety
 * `report` must be null or a live report.
 */
char *ms_report_text(const struct MsReport *report, bool with_properties);

/**
 * Dimension of the algebra over the field; 0 for a null report.
 *
 * # Safety
 * `report` must be null or a live report.
 */
size_t ms_report_dim(const struct MsReport *report);

/**
 * The largest `l` with a nonzero `l`-th power of the maximal ideal.
 *
 * # Safety
 * `report` must be null or a live report.
 */
size_t ms_report_m(const struct MsReport *report);

/**
 * Dimension of the socle.
 *
 * # Safety
 * `report` must be null or a live report.
 */
size_t ms_report_socle_dim(const struct MsReport *report);

/**
 * The structural Gorenstein criterion.
 *
 * # Safety
 * `report` must be null or a live report.
 */
bool ms_report_is_gorenstein(const struct MsReport *report);

/**
 * Whether the criterion agrees with the socle dimension test.
 *
 * # Safety
 * `report` must be null or a live report.
 */
bool ms_report_agrees(const struct MsReport *report);

/**
 * Number of falsified property checks.
 *
 * # Safety
 * `report` must be null or a live report.
 */
size_t ms_report_falsification_count(const struct MsReport *report);

/**
 * Copies the graded dimensions of one filtration into `buf`, writing at
 * most `len` entries. Returns the number of entries available, which is
 * `m + 1`, so a call with `len = 0` queries the size.
 *
 * # Safety
 * `report` must be null or a live report, and `buf` must hold `len`
 * entries unless `len` is 0.
 */
size_t ms_report_graded_dims(const struct MsReport *report,
                             enum MsChain chain,
                             size_t *buf,
                             size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTISTRUCT_H */
