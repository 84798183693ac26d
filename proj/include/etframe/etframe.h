/* etframe: equiangular tight frames from skew-symmetric conference matrices,
 * diagonal partitions, subset norms, and Kadison-Singer-style norm bounds.
 *
 * All functions returning etf_status leave their outputs untouched on
 * failure; a description of the last failure on the calling thread is
 * available from etf_last_error(). Handles are freed with the matching
 * *_free function. Index sets are 1-based everywhere.
 */
#ifndef ETFRAME_H
#define ETFRAME_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum etf_status {
    ETF_OK = 0,
    ETF_ERR_INVALID_ARGUMENT = 1,
    ETF_ERR_NOT_HERMITIAN = 2,
    ETF_ERR_NO_CONVERGENCE = 3,
    ETF_ERR_SPECTRUM = 4,
    ETF_ERR_UNSUPPORTED = 5,
    ETF_ERR_INTERNAL = 6
} etf_status;

const char* etf_status_string(etf_status status);
const char* etf_last_error(void);

typedef struct etf_conference etf_conference;
typedef struct etf_gram etf_gram;
typedef struct etf_frame etf_frame;
typedef struct etf_partition etf_partition;

/* ---- conference matrices -------------------------------------------- */

/* Skew-symmetric C(k) of order 2^k, 1 <= k <= 12. */
etf_status etf_conference_build(int k, etf_conference** out);
/* Symmetric Paley conference matrix of order q+1, q in {5, 13, 17}. */
etf_status etf_conference_build_paley(int q, etf_conference** out);
void etf_conference_free(etf_conference* c);

int etf_conference_order(const etf_conference* c);
int etf_conference_depth(const etf_conference* c); /* k; 0 for Paley */
int etf_conference_is_symmetric(const etf_conference* c);
/* Row-major order*order entries, each -1, 0 or +1. */
etf_status etf_conference_entries(const etf_conference* c, int8_t* buf, size_t len);
/* Eigenvalues come in the pair +-i*magnitude (skew) or +-magnitude
 * (symmetric), each with the returned multiplicity. */
etf_status etf_conference_spectrum(const etf_conference* c, double* magnitude,
                                   int* multiplicity);

/* ---- gram matrices R = I + i*alpha*C -------------------------------- */

etf_status etf_gram_build(const etf_conference* c, double alpha, etf_gram** out);
void etf_gram_free(etf_gram* g);

/* alpha = 1/sqrt(order-1): spectrum becomes {2, 0}. NaN on bad order. */
double etf_gram_mss_alpha(int order);
int etf_gram_order(const etf_gram* g);
double etf_gram_alpha(const etf_gram* g);
int etf_gram_depth(const etf_gram* g); /* k; 0 for Paley-based */
/* Row-major order*order entries split into real and imaginary parts. */
etf_status etf_gram_entries(const etf_gram* g, double* re, double* im, size_t len);

/* Index set S_{d,q} of the diagonal sub-block at depth d, position q;
 * len must equal order >> d. */
etf_status etf_gram_block_indices(const etf_gram* g, int d, int q, int* buf, size_t len);
/* Closed-form block norm 1 + alpha*sqrt(2^(k-d)-1). */
etf_status etf_gram_block_norm(const etf_gram* g, int d, int q, double* out);

/* ---- frames ---------------------------------------------------------- */

/* Spectral extraction of the ETF from R (requires the {n/m, 0} spectrum). */
etf_status etf_frame_build(const etf_gram* g, etf_frame** out);
/* Frame from raw data: vector j occupies re[j*m..j*m+m-1] / im[...]. im may
 * be NULL for a real frame. real_field selects the scalar field tag. */
etf_status etf_frame_create(int n, int m, int real_field, const double* re,
                            const double* im, etf_frame** out);
void etf_frame_free(etf_frame* f);

int etf_frame_size(const etf_frame* f);      /* n */
int etf_frame_dimension(const etf_frame* f); /* m */
int etf_frame_is_real(const etf_frame* f);
/* Vector-major components; len must equal n*m. im may be NULL. */
etf_status etf_frame_vectors(const etf_frame* f, double* re, double* im, size_t len);

double etf_frame_welch_bound(const etf_frame* f);
etf_status etf_frame_max_correlation(const etf_frame* f, double* out);
etf_status etf_frame_tightness_residual(const etf_frame* f, double* out);
etf_status etf_frame_equiangularity_residual(const etf_frame* f, double* out);
/* is_etf: correlation meets the Welch bound within 1e-9. */
etf_status etf_frame_welch_verdict(const etf_frame* f, int* is_etf, double* residual);

/* Subset norm routes. The Gram route falls back to the outer-product route
 * when the Gram submatrix is numerically singular; route_used reports what
 * actually ran. */
#define ETF_ROUTE_AUTO 0        /* same as ETF_ROUTE_GRAM */
#define ETF_ROUTE_GRAM 1        /* largest eigenvalue of the Gram submatrix */
#define ETF_ROUTE_OUTER 2       /* largest eigenvalue of sum of outer products */
#define ETF_ROUTE_CLOSED_FORM 3 /* reserved for closed-form reports */

/* ||sum_{j in S} f_j f_j*|| for a 1-based, strictly increasing subset.
 * route_used (optional) reports ETF_ROUTE_GRAM or ETF_ROUTE_OUTER. */
etf_status etf_frame_subset_norm(const etf_frame* f, const int* subset, size_t count,
                                 int route, double* out, int* route_used);

/* ---- partitions ------------------------------------------------------ */

/* Diagonal partition of [2^k] into exactly r subsets (1 <= r <= 2^k). */
etf_status etf_partition_diagonal(int k, int r, etf_partition** out);
/* Arbitrary partition from flat storage: subset h occupies
 * indices[offset_h .. offset_h + sizes[h] - 1], offsets accumulate in order. */
etf_status etf_partition_create(int n, size_t subset_count, const size_t* sizes,
                                const int* indices, etf_partition** out);
void etf_partition_free(etf_partition* p);

int etf_partition_ground_size(const etf_partition* p);
size_t etf_partition_count(const etf_partition* p);
size_t etf_partition_subset_size(const etf_partition* p, size_t h);
etf_status etf_partition_subset(const etf_partition* p, size_t h, int* buf, size_t len);
/* 1 if every subset is a diagonal block of a power-of-two ground set. */
int etf_partition_is_diagonal(const etf_partition* p);

/* ASCII rendering of the block layout (diagonal partitions only). The
 * returned string is freed with etf_string_free. */
etf_status etf_partition_layout(const etf_partition* p, char** out);
void etf_string_free(char* s);

/* ---- bounds and closed forms ----------------------------------------- */

/* (1/sqrt(r) + sqrt(delta))^2. NaN on bad arguments. */
double etf_bound_mss(int r, double delta);
/* 1/2 + 1/sqrt(2r), the diagonal-partition bound. NaN on bad arguments. */
double etf_bound_diagonal(int r);
/* delta + sqrt(delta/r) for cardinalities <= 2; delta + sqrt(3*delta/r)
 * (complex) or delta + 2*sqrt(delta/r) (real) for cardinality 3. */
double etf_bound_small(int r, double delta, int max_cardinality, int real_field);
/* Closed-form diagonal-block subset norm 1/2 + (1/2)sqrt(2^(k-d)-1)/sqrt(2^k-1). */
etf_status etf_diagonal_norm_closed(int k, int d, double* out);

/* ---- verification ----------------------------------------------------- */

typedef struct etf_norm_report {
    double norm;
    int route; /* ETF_ROUTE_GRAM or ETF_ROUTE_OUTER */
    double mss_bound;
    int mss_ok;
    int sharp_applicable; /* partition is diagonal */
    double sharp_bound;
    int sharp_ok;
    int small_applicable; /* all cardinalities <= 3 */
    double small_bound;
    int small_ok;
} etf_norm_report;

/* One report per subset; reports must hold etf_partition_count entries. */
etf_status etf_check_partition(const etf_frame* f, const etf_partition* p,
                               etf_norm_report* reports, size_t count);

typedef struct etf_search_result {
    int found;
    uint64_t trial; /* first violating trial */
    double norm;
    double mss_bound;
} etf_search_result;

/* Seeded random search for an MSS-bound violation among partitions with one
 * subset of cardinality n-r+1 and r-1 singletons. On a hit, *partition_out
 * (optional) receives the violating partition. */
etf_status etf_search_violation(const etf_frame* f, int r, uint64_t trials,
                                uint64_t seed, etf_search_result* result,
                                etf_partition** partition_out);

#ifdef __cplusplus
}
#endif

#endif /* ETFRAME_H */
