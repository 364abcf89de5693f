/* C interface to the pqcscope analysis core.
 *
 * Everything returned through a char** is a NUL-terminated UTF-8 document
 * (JSON or CSV) allocated by the library; release it with
 * pqcscope_string_free. Functions never print. On any non-OK status the
 * thread-local message from pqcscope_last_error() says what went wrong.
 */
#ifndef PQCSCOPE_H
#define PQCSCOPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors the CLI exit codes, so a thin front end can pass these through. */
typedef enum pqcscope_status {
  PQCSCOPE_OK = 0,
  PQCSCOPE_ERR_USAGE = 1,       /* configuration that cannot be acted on */
  PQCSCOPE_ERR_INPUT = 2,       /* unreadable/missing/empty input, bad tables */
  PQCSCOPE_ERR_DATA_QUALITY = 3,/* malformed-line ratio above the limit */
  PQCSCOPE_ERR_NEGOTIATION = 4, /* simulated endpoints share no algorithm */
  PQCSCOPE_ERR_INTERNAL = 5
} pqcscope_status;

/* Opaque analysis configuration. Not thread-safe to mutate concurrently;
 * a fully built config may be shared by concurrent run calls. */
typedef struct pqcscope_config pqcscope_config;

pqcscope_config* pqcscope_config_new(void);
void pqcscope_config_free(pqcscope_config* cfg);

/* A file path, a directory (searched recursively for *.log and *.log.gz),
 * or a shell glob. Order of calls is preserved. */
pqcscope_status pqcscope_config_add_input(pqcscope_config* cfg, const char* path);

/* Restrict analysis to one log family: "ssh", "tls", or "rdp". */
pqcscope_status pqcscope_config_set_protocol(pqcscope_config* cfg, const char* protocol);

/* Replace the built-in algorithm classification table. */
pqcscope_status pqcscope_config_set_registry(pqcscope_config* cfg, const char* path);

/* CIDR-to-AS table ("prefix,asn,organization" lines) for attribution. */
pqcscope_status pqcscope_config_set_asn_table(pqcscope_config* cfg, const char* path);

/* Half-open time range [from, to). Each bound is a "YYYY-MM-DD" date
 * (UTC midnight) or a decimal epoch-seconds timestamp; NULL leaves the
 * bound open. */
pqcscope_status pqcscope_config_set_range(pqcscope_config* cfg, const char* from,
                                          const char* to);

/* "json" (default) or "csv". */
pqcscope_status pqcscope_config_set_format(pqcscope_config* cfg, const char* format);

/* Parallel file ingest width; >= 1. Output is identical at any width. */
pqcscope_status pqcscope_config_set_workers(pqcscope_config* cfg, int workers);

/* Nonzero stamps reports with wall-clock generation time. Off by default
 * so identical inputs give byte-identical output. */
pqcscope_status pqcscope_config_set_stamp(pqcscope_config* cfg, int enabled);

/* Series bucket filter: "pqc", "classical", "deprecated", "insecure",
 * or "any". Default "pqc". */
pqcscope_status pqcscope_config_set_predicate(pqcscope_config* cfg, const char* predicate);

/* Data-quality gate: fail when malformed/total lines exceeds this ratio.
 * Range [0, 1], default 0.05. */
pqcscope_status pqcscope_config_set_malformed_limit(pqcscope_config* cfg, double limit);

/* Server software released in this year or earlier counts as stale.
 * Default 2019. */
pqcscope_status pqcscope_config_set_stale_cutoff(pqcscope_config* cfg, int year);

/* Rows in the AS histogram. Default 10. */
pqcscope_status pqcscope_config_set_asn_top(pqcscope_config* cfg, size_t n);

/* Full adoption snapshot across the configured inputs. */
pqcscope_status pqcscope_run_report(const pqcscope_config* cfg, char** out);

/* Monthly counts of key exchanges matching the predicate, with a fitted
 * linear trend. */
pqcscope_status pqcscope_run_series(const pqcscope_config* cfg, char** out);

/* Per-AS histogram of post-quantum connections; requires an AS table. */
pqcscope_status pqcscope_run_asn(const pqcscope_config* cfg, char** out);

/* Downgrade-episode alerts plus deprecated/insecure algorithm sightings. */
pqcscope_status pqcscope_run_alerts(const pqcscope_config* cfg, char** out);

/* Writes a named synthetic fixture family into out_dir and returns a JSON
 * summary of the files written. Same (profile, scale, seed) is always
 * byte-identical. */
pqcscope_status pqcscope_generate(const char* profile, double scale, uint64_t seed,
                                  const char* out_dir, char** out);

/* Validates the modeled key-exchange parameter sets. which is "sntrup",
 * "curve", or NULL/"all" for both. The JSON carries per-check verdicts;
 * the status is OK even when a check fails (read all_passed). */
pqcscope_status pqcscope_validate_params(const char* which, char** out);

/* Runs the desk-scale handshake. Each side is a comma-separated preference
 * list of key-exchange identifiers. Returns PQCSCOPE_ERR_NEGOTIATION when
 * the lists share nothing; otherwise the JSON holds the transcript and
 * final-key agreement. */
pqcscope_status pqcscope_simulate(const char* client_prefs, const char* server_prefs,
                                  uint64_t kem_seed, uint64_t ecdh_seed, char** out);

void pqcscope_string_free(char* s);

/* Message for the most recent failure on the calling thread ("" if none). */
const char* pqcscope_last_error(void);

const char* pqcscope_version(void);

#ifdef __cplusplus
}
#endif

#endif /* PQCSCOPE_H */
