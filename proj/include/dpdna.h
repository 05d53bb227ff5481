/* C interface to the dpdna constrained-coding library.
 *
 * Conventions:
 *   - every function that can fail returns a dpdna_status; 0 is success
 *   - on failure, dpdna_last_error() holds a thread-local message
 *   - all returned buffers (char* / uint8_t*) are malloc'd; release them
 *     with dpdna_free
 *   - strand sequences cross the boundary as NUL-terminated ACGT strings
 */
#ifndef DPDNA_H
#define DPDNA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DPDNA_API __declspec(dllexport)
#else
#define DPDNA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpdna_status {
  DPDNA_OK = 0,
  DPDNA_E_INVALID = 1,
  DPDNA_E_IO = 2,
  DPDNA_E_CONFIG = 3,
  DPDNA_E_PARSE = 4,     /* malformed strand / FASTA / manifest */
  DPDNA_E_INTEGRITY = 5, /* checksum or accounting mismatch */
  DPDNA_E_CAPACITY = 6,  /* strand or index field overflow */
  DPDNA_E_INTERNAL = 7
} dpdna_status;

/* 0 renders JSON, 1 renders a plain-text table. */
typedef enum dpdna_format { DPDNA_FORMAT_JSON = 0, DPDNA_FORMAT_TABLE = 1 } dpdna_format;

typedef struct dpdna_config dpdna_config;
typedef struct dpdna_archive dpdna_archive;

DPDNA_API const char* dpdna_version(void);
DPDNA_API const char* dpdna_last_error(void); /* never NULL */
DPDNA_API void dpdna_free(void* p);

/* --- configuration ------------------------------------------------------- */

DPDNA_API dpdna_config* dpdna_config_new(void); /* library defaults */
DPDNA_API void dpdna_config_free(dpdna_config* cfg);

/* integer keys:  strand_cap_nt | homo_max_run | index_bits | segment_bits | seed
 * float keys:    ecc_overhead_ratio
 * string keys:   primer_forward | primer_reverse | schemes
 * "schemes" accepts "all", "dpac", or a comma list of {2bit,00,01,10,11}. */
DPDNA_API dpdna_status dpdna_config_set_u64(dpdna_config* cfg, const char* key,
                                            uint64_t value);
DPDNA_API dpdna_status dpdna_config_set_f64(dpdna_config* cfg, const char* key,
                                            double value);
DPDNA_API dpdna_status dpdna_config_set_str(dpdna_config* cfg, const char* key,
                                            const char* value);
DPDNA_API dpdna_status dpdna_config_validate(const dpdna_config* cfg);
DPDNA_API dpdna_status dpdna_config_json(const dpdna_config* cfg, char** out);

/* --- encode ---------------------------------------------------------------- */

DPDNA_API dpdna_status dpdna_encode(const dpdna_config* cfg, const uint8_t* data,
                                    size_t size, const char* source_name, int audit,
                                    dpdna_archive** out);
DPDNA_API void dpdna_archive_free(dpdna_archive* a);

DPDNA_API uint64_t dpdna_archive_strand_count(const dpdna_archive* a);
/* one strand as an ACGT string */
DPDNA_API dpdna_status dpdna_archive_strand(const dpdna_archive* a, uint64_t i,
                                            char** out);
DPDNA_API dpdna_status dpdna_archive_fasta(const dpdna_archive* a, char** out);
DPDNA_API dpdna_status dpdna_archive_manifest_json(const dpdna_archive* a, char** out);
/* newline-separated JSON objects, one per strand; empty unless encoded with audit */
DPDNA_API dpdna_status dpdna_archive_audit(const dpdna_archive* a, char** out);
DPDNA_API dpdna_status dpdna_archive_density(const dpdna_archive* a, dpdna_format fmt,
                                             char** out);
DPDNA_API dpdna_status dpdna_archive_feasibility(const dpdna_archive* a,
                                                 dpdna_format fmt, char** out);

/* --- decode ---------------------------------------------------------------- */

DPDNA_API dpdna_status dpdna_decode(const char* manifest_json,
                                    const char* const* strands, size_t count,
                                    uint8_t** out, size_t* out_size);
/* same, but takes the whole FASTA text */
DPDNA_API dpdna_status dpdna_decode_fasta(const char* manifest_json, const char* fasta,
                                          uint8_t** out, size_t* out_size);

/* --- reports ---------------------------------------------------------------- */

DPDNA_API dpdna_status dpdna_bench(const dpdna_config* cfg, const uint8_t* data,
                                   size_t size, dpdna_format fmt, char** out);
DPDNA_API dpdna_status dpdna_sweep(const dpdna_config* cfg, const uint8_t* data,
                                   size_t size, const uint32_t* caps, size_t cap_count,
                                   dpdna_format fmt, char** out);
DPDNA_API dpdna_status dpdna_analyze(const uint8_t* data, size_t size,
                                     uint32_t segment_bits, dpdna_format fmt,
                                     char** out);
/* design-rule report over arbitrary FASTA strands */
DPDNA_API dpdna_status dpdna_check_fasta(const char* fasta, uint32_t homo_max,
                                         dpdna_format fmt, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DPDNA_H */
