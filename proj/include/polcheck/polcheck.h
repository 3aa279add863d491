#ifndef POLCHECK_H
#define POLCHECK_H

/* C interface to the polcheck typechecker workbench.
 *
 * Every function returns a pc_status. On failure the calling thread's
 * pc_last_error() describes the problem until the next call. Strings handed
 * out through `char**` are released with pc_string_free; reports with
 * pc_report_free. */

#include <stdint.h>

#if defined(_WIN32)
#define PC_API __declspec(dllexport)
#else
#define PC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_EINVAL = 1,    /* null pointer, unknown calculus/preset name, bad number */
  PC_EPRESET = 2,   /* preset not available for the calculus */
  PC_EPARSE = 3,    /* source text does not parse */
  PC_EINTERNAL = 4  /* unexpected failure inside the library */
} pc_status;

typedef struct pc_report pc_report;

PC_API const char* pc_version(void);
PC_API const char* pc_last_error(void);
PC_API const char* pc_status_name(pc_status s);

/* Default preset of a calculus, or NULL for an unknown name. */
PC_API const char* pc_default_preset(const char* calculus);

/* Parses, elaborates and checks every query in `source`. `preset` may be
 * NULL for the calculus default. Parse and scope errors are part of the
 * report, not a failing status. `timing` non-zero records per-query times. */
PC_API pc_status pc_check_source(const char* source, const char* calculus, const char* preset,
                                 int timing, pc_report** out);

/* Views into the report; valid until pc_report_free. */
PC_API const char* pc_report_json(const pc_report* r);
PC_API const char* pc_report_text(const pc_report* r);
PC_API int pc_report_exit_code(const pc_report* r);
PC_API int pc_report_query_count(const pc_report* r);
PC_API void pc_report_free(pc_report* r);

/* Scoped tree per query. `calculus` may be NULL: System L queries then use
 * lnl and λ queries cdb, each with its default preset. */
PC_API pc_status pc_elaborate_source(const char* source, const char* calculus, const char* preset,
                                     char** out);

/* The dualized program. */
PC_API pc_status pc_dualize_source(const char* source, char** out);

/* Generates `count` directives per query kind of the calculus, compares the
 * checker with the exhaustive oracle and writes a text report with every
 * counterexample. `mismatches` (may be NULL) receives their number. */
PC_API pc_status pc_oracle_run(const char* calculus, const char* preset, int max_size,
                               uint64_t seed, int count, char** out, int* mismatches);

/* Renders a deterministic generated corpus: the atom prelude, then one
 * directive per line. `kind` is a query keyword such as "command";
 * `noise` is the share of directives perturbed to fail. */
PC_API pc_status pc_generate_corpus(const char* calculus, const char* preset, const char* kind,
                                    uint64_t seed, int max_size, int count, double noise,
                                    int annotation_free, char** out);

PC_API void pc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
