#ifndef CONVCODE_CONVCODE_H
#define CONVCODE_CONVCODE_H

/* C interface to the convertible-code library. Every function returns a
 * cc_status; on failure cc_last_error() describes the problem (the message is
 * per thread and valid until the next call from that thread). Strings handed
 * out through char** parameters are released with cc_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CC_API __declspec(dllexport)
#else
#define CC_API __attribute__((visibility("default")))
#endif

typedef enum cc_status {
  CC_OK = 0,
  CC_E_ARGUMENT,          /* null pointer or malformed argument */
  CC_E_INVALID_PARAMS,    /* parameters or field description not valid */
  CC_E_PRECONDITION,      /* scheme precondition not met */
  CC_E_SIZE_EXCEEDS_FIELD,
  CC_E_NOT_RESTRICTABLE,
  CC_E_MISSING_BLOCK,
  CC_E_CODE_MISMATCH,
  CC_E_TOO_FEW_BLOCKS,
  CC_E_SINGULAR,          /* a matrix that must be invertible is not */
  CC_E_INSTANCE_TOO_LARGE,
  CC_E_IO,
  CC_E_FORMAT,
  CC_E_INTERNAL
} cc_status;

typedef struct cc_code cc_code;

typedef struct cc_params {
  unsigned lambda;
  unsigned k_initial;
  unsigned r_initial;
  unsigned r_final;
} cc_params;

typedef struct cc_construct_options {
  const char* scheme;      /* auto, general, hankel1, hankel2, hankel-s, trivial; NULL means auto */
  unsigned s;              /* group count for hankel-s */
  unsigned characteristic; /* general only; 0 means 2 */
  const char* field_order; /* decimal q, or NULL for the smallest admissible field */
} cc_construct_options;

typedef struct cc_code_info {
  cc_params params;
  char scheme[16];
  unsigned s;
  char field[64];          /* e.g. "GF(11)" or "GF(2^15)" */
  char field_order[128];   /* decimal q */
  size_t symbol_bytes;
  size_t reads;            /* blocks the conversion plan reads */
  char hash[65];           /* SHA-256 of the manifest, hex */
} cc_code_info;

typedef struct cc_bounds {
  size_t access_lower_bound;
  size_t read_lower_bound_per_stripe;
  size_t max_unchanged;
  size_t baseline_access;
} cc_bounds;

typedef enum cc_verdict { CC_PASS = 0, CC_FAIL = 1, CC_SKIPPED = 2 } cc_verdict;

enum {
  CC_CHECK_PLAN = 1u,          /* stability and plan soundness */
  CC_CHECK_MDS = 2u,           /* superregularity and exhaustive erasure decoding */
  CC_CHECK_CONSTRUCTIBLE = 4u, /* PF block-constructible from PI */
  CC_CHECK_MIN_READS = 8u,     /* exhaustive minimum read set and non-stable cost */
  CC_CHECK_ALL = 15u
};

typedef struct cc_check_result {
  char name[32];
  cc_verdict verdict;
  char detail[256];
} cc_check_result;

CC_API const char* cc_last_error(void);
CC_API const char* cc_status_name(cc_status status);
CC_API void cc_string_free(char* s);

CC_API cc_status cc_construct(const cc_params* params, const cc_construct_options* options, cc_code** out);
CC_API cc_status cc_restrict(const cc_code* code, unsigned lambda, unsigned r_final, cc_code** out);
CC_API cc_status cc_manifest_parse(const char* text, size_t length, cc_code** out);
CC_API cc_status cc_manifest_load(const char* path, cc_code** out);
CC_API cc_status cc_manifest_save(const cc_code* code, const char* path);
CC_API cc_status cc_manifest_text(const cc_code* code, char** out);
CC_API void cc_code_free(cc_code* code);

CC_API cc_status cc_code_get_info(const cc_code* code, cc_code_info* out);
/* Scheme-selection notes of an automatic construction, one per line. */
CC_API cc_status cc_code_selection(const cc_code* code, char** out);

CC_API cc_status cc_bounds_compute(const cc_params* params, cc_bounds* out);

/* Writes <out_dir>/initial-<i>/ for every initial stripe. */
CC_API cc_status cc_encode_file(const cc_code* code, const char* input_path, const char* out_dir);
/* As cc_encode_file with a seeded random message, also saved as <out_dir>/message.bin. */
CC_API cc_status cc_encode_random(const cc_code* code, size_t block_length, uint64_t seed, const char* out_dir);

/* Reads <stripes_dir>/initial-<i>/ and writes the final stripe store to
 * out_dir. With baseline != 0 every data block is read and the parities are
 * re-encoded. The access report is returned as JSON. */
CC_API cc_status cc_convert_store(const cc_code* code, const char* stripes_dir, const char* out_dir, int baseline,
                                  char** report_json);

/* Decodes an initial or final stripe store after dropping the listed blocks
 * and writes the recovered data as a message file. */
CC_API cc_status cc_decode_store(const cc_code* code, const char* stripe_dir, const size_t* erase, size_t erase_count,
                                 const char* out_path);

/* Runs the requested check groups. Fills at most capacity results; *count
 * receives the number of results produced. */
CC_API cc_status cc_verify(const cc_code* code, unsigned checks, cc_check_result* results, size_t capacity,
                           size_t* count);

#ifdef __cplusplus
}
#endif

#endif
