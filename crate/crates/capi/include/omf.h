#ifndef OMF_H
#define OMF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
#define OMF_OK 0

/**
 * Bad arguments: null pointers, malformed prime or polynomial.
 */
#define OMF_EUSAGE 1

/**
 * Mathematical failure (inseparable input, non-monic, and so on).
 */
#define OMF_EMATH 2

/**
 * Internal failure; the report carries diagnostics.
 */
#define OMF_EINTERNAL 3

/**
 * Opaque report handle; read with omf_report_json, release with
 * omf_report_free.
 */
typedef struct OmfReport OmfReport;

/**
 * OM factorization of `poly` over Z_p; precision <= 0 selects delta+1.
 */
int32_t omf_factor(const char *prime,
                   const char *poly,
                   int64_t precision,
                   uint64_t seed,
                   int32_t no_lift,
                   struct OmfReport **out);

/**
 * Irreducibility test with witness.
 */
int32_t omf_irreducible(const char *prime, const char *poly, uint64_t seed, struct OmfReport **out);

/**
 * Okutsu invariant report for an irreducible polynomial.
 */
int32_t omf_invariants(const char *prime, const char *poly, uint64_t seed, struct OmfReport **out);

/**
 * Borrow the NUL-terminated JSON body; owned by the report.
 */
const char *omf_report_json(const struct OmfReport *report);

/**
 * Release a report handle. Null is allowed.
 */
void omf_report_free(struct OmfReport *report);

/**
 * Static description of a status code.
 */
const char *omf_status_message(int32_t code);

#endif /* OMF_H */
