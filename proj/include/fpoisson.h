/* C interface to the Frobenius Poisson (co)homology engine.
 *
 * A session wraps one parsed presentation; fp_run executes one subcommand
 * against it and yields a report that renders as a plain-text table or as
 * JSON. Status codes mirror the CLI exit-code contract:
 *   0  success / checked property holds
 *   1  a checked property fails (e.g. `unimodular` on a non-unimodular algebra)
 *   2  input or parse error
 *   3  the pairing is degenerate (algebra is not Frobenius)
 *   4  internal invariant failure (a bug, never bad input)
 */
#ifndef FPOISSON_H
#define FPOISSON_H

#ifdef __cplusplus
extern "C" {
#endif

#define FP_OK 0
#define FP_CHECK_FAILED 1
#define FP_PARSE_ERROR 2
#define FP_NOT_FROBENIUS 3
#define FP_INTERNAL_ERROR 4

typedef struct fp_session fp_session;
typedef struct fp_report fp_report;

/* Parse a presentation. Returns NULL on error; when err is non-NULL it
 * receives a malloc'd message to release with fp_string_free. */
fp_session* fp_open_file(const char* path, char** err);
fp_session* fp_open_string(const char* text, char** err);
void fp_session_close(fp_session* s);

/* Algebra name as written in the presentation. Owned by the session. */
const char* fp_session_name(const fp_session* s);

/* Run one subcommand: validate, basis, homology, cohomology, duality,
 * unimodular, modular-vector, bv-check, bv-cohomology.
 *
 * options_json is an optional JSON object, e.g.
 *   {"coeff": "twist", "max_total_degree": 4, "field": "F5"}
 * (pass NULL for defaults). Returns NULL on error with *status and *err set;
 * on success *status carries the report's exit code (0 or 1). */
fp_report* fp_run(fp_session* s, const char* command, const char* options_json,
                  int* status, char** err);

/* Renderings are owned by the report and valid until fp_report_free. */
const char* fp_report_json(const fp_report* r);
const char* fp_report_text(const fp_report* r);
int fp_report_exit_code(const fp_report* r);
void fp_report_free(fp_report* r);

void fp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FPOISSON_H */
