/* sparsegap: C interface to the gap-instance construction library.
 *
 * All functions return a status code; SG_OK on success, SG_PARTIAL when a
 * pipeline run completed with a partial certificate, SG_ERROR otherwise.
 * Error details go into the caller-supplied buffer when one is given.
 * Handles are opaque and must be released with their free function.
 */
#ifndef SPARSEGAP_H
#define SPARSEGAP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SG_OK 0
#define SG_ERROR 1
#define SG_PARTIAL 2

typedef struct sg_graph sg_graph;

/* --- graphs --- */

/* Load a graph file; *out receives the handle. */
int sg_graph_load(const char* path, sg_graph** out, char* err, size_t err_len);

/* Union of d perfect matchings on n vertices (n even), capacities 1. */
int sg_gen_expander(int n, int d, uint64_t seed, sg_graph** out, char* err,
                    size_t err_len);

int sg_graph_save(const sg_graph* g, const char* path, char* err,
                  size_t err_len);

int sg_graph_counts(const sg_graph* g, int* n, int* m, int* k);

void sg_graph_free(sg_graph* g);

/* --- pipeline --- */

/* Run the full pipeline for a flat key=value config file, writing artifacts
 * into out_dir. Returns SG_OK / SG_PARTIAL / SG_ERROR. */
int sg_run_pipeline(const char* config_path, const char* out_dir, char* err,
                    size_t err_len);

/* Same, but the config is passed as text. */
int sg_run_pipeline_text(const char* config_text, const char* out_dir,
                         char* err, size_t err_len);

/* Seed sweep (config must carry a seeds list). */
int sg_run_sweep(const char* config_path, const char* out_dir, char* err,
                 size_t err_len);

/* Generation only: instance + layers files. */
int sg_run_gen(const char* config_path, const char* out_dir, char* err,
               size_t err_len);

/* format: "csv" or "dot". */
int sg_export_report(const char* artifact_dir, const char* format, char* err,
                     size_t err_len);

/* Brute-force oracle cross-checks; the textual report (one line per check)
 * is copied into report (truncated to report_len). */
int sg_oracle_suite(char* report, size_t report_len);

#ifdef __cplusplus
}
#endif

#endif /* SPARSEGAP_H */
