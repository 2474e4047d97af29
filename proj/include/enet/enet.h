/* C interface to the electrical-network library.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Every fallible call returns an enet_status. On failure,
 * enet_last_error() returns a message for the calling thread that stays valid
 * until that thread's next call into the library.
 *
 * Vertex functions are arrays of num_vertices doubles indexed by dense vertex
 * id. Results are gauge-fixed: the entry at the base point is 0. Reduced
 * arrays (spectra, Gramians) have num_vertices - 1 entries per dimension and
 * skip the base point.
 */
#ifndef ENET_H
#define ENET_H

#include <stddef.h>
#include <stdint.h>

#if defined(ENET_BUILDING_LIBRARY)
#define ENET_API __attribute__((visibility("default")))
#else
#define ENET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum enet_status {
    ENET_OK = 0,
    ENET_ERR_IO = 1,
    ENET_ERR_VALIDATION = 2,
    ENET_ERR_NUMERICAL = 3,
    ENET_ERR_PRECONDITION = 4,
    ENET_ERR_INTERNAL = 5
} enet_status;

typedef enum enet_realization { ENET_L2 = 0, ENET_ENERGY = 1 } enet_realization;

typedef struct enet_network enet_network;
typedef struct enet_pair enet_pair;

/* Empty after a successful call. */
ENET_API const char* enet_last_error(void);
ENET_API const char* enet_version(void);

/* ---- networks ---- */

/* Format chosen by extension: ".json" or edge list. */
ENET_API enet_status enet_network_load(const char* path, enet_network** out);
ENET_API enet_status enet_network_parse(const char* text, int is_json, enet_network** out);
ENET_API enet_status enet_network_from_edges(size_t num_vertices, size_t num_edges, const size_t* x, const size_t* y,
                                             const double* c, size_t base_point, enet_network** out);
/* profile: "unit", "linear", "geometric:A", "two_sided_geometric:A". */
ENET_API enet_status enet_network_generate_chain(const char* profile, size_t n, enet_network** out);
ENET_API enet_status enet_network_random(size_t n, double extra_edge_probability, uint64_t seed, enet_network** out);
ENET_API enet_status enet_network_save(const enet_network* net, const char* path);
/* Writes at most cap bytes including the terminator; *len receives the full
 * length without terminator, so a first call with cap = 0 sizes the buffer. */
ENET_API enet_status enet_network_to_text(const enet_network* net, int is_json, char* buf, size_t cap, size_t* len);
ENET_API void enet_network_free(enet_network* net);

ENET_API size_t enet_network_num_vertices(const enet_network* net);
ENET_API size_t enet_network_num_edges(const enet_network* net);
ENET_API size_t enet_network_base_point(const enet_network* net);
ENET_API enet_status enet_network_edge(const enet_network* net, size_t i, size_t* x, size_t* y, double* c);
ENET_API enet_status enet_network_label(const enet_network* net, size_t v, int64_t* label);
ENET_API enet_status enet_network_index_of(const enet_network* net, int64_t label, size_t* v);

/* ---- energy space ---- */

ENET_API enet_status enet_dipole(const enet_network* net, size_t x, size_t y, double* values);
ENET_API enet_status enet_resistance(const enet_network* net, size_t x, size_t y, double* out);
/* Row-major (n-1) x (n-1). */
ENET_API enet_status enet_gramian(const enet_network* net, double* out);
ENET_API enet_status enet_energy_norm_squared(const enet_network* net, const double* u, double* out);
ENET_API enet_status enet_laplacian_apply(const enet_network* net, const double* u, double* out);
/* One coefficient √c (u(x) - u(y)) per edge, in edge order. */
ENET_API enet_status enet_frame_analyze(const enet_network* net, const double* u, double* coeffs);
/* Matrix Market file of the full Laplacian (reduced = 0) or Θ' (reduced = 1). */
ENET_API enet_status enet_laplacian_export(const enet_network* net, int reduced, const char* path);
/* Seeded standard-normal vertex function, gauge-fixed. */
ENET_API enet_status enet_random_vector(const enet_network* net, uint64_t seed, double* out);

/* ---- spectra ---- */

/* Ascending eigenvalues; *count receives the number written (n-1 unless the
 * iterative path returned a partial spectrum). cap bounds the write. */
ENET_API enet_status enet_spectrum(const enet_network* net, enet_realization which, double* out, size_t cap,
                                   size_t* count);

typedef struct enet_spectrum_comparison {
    size_t matched_pairs;
    int matched;
    double max_dev;      /* scaled by max(1, |λ|) */
    double max_abs_dev;
    double tolerance;
    int zero_l2;
    int zero_energy;
} enet_spectrum_comparison;

ENET_API enet_status enet_compare_spectra(const enet_network* net, double tol, enet_spectrum_comparison* out);

typedef struct enet_defect_report {
    double final_sum;
    double relative_increment;
    int plateau;
} enet_defect_report;

/* partial_sums may be NULL; otherwise it receives n_max entries. */
ENET_API enet_status enet_defect_probe(const char* profile, size_t n_max, enet_defect_report* out,
                                       double* partial_sums);

/* ---- conductance pairs ---- */

ENET_API enet_status enet_pair_create(const enet_network* base, const enet_network* upper, enet_pair** out);
ENET_API void enet_pair_free(enet_pair* pair);

ENET_API enet_status enet_pair_pullback(const enet_pair* pair, const double* w, double* out);

typedef struct enet_pullback_delta_report {
    double dipole_sum_residual;
    double difference_residual;
    double tolerance;
    int ok;
} enet_pullback_delta_report;

ENET_API enet_status enet_pair_pullback_delta(const enet_pair* pair, size_t x, enet_pullback_delta_report* out);

typedef struct enet_intertwine_report {
    size_t samples;
    double pointwise_residual;
    double krein_residual;
    double max_residual;
} enet_intertwine_report;

ENET_API enet_status enet_pair_intertwine(const enet_pair* pair, size_t samples, enet_intertwine_report* out);

typedef struct enet_trace_report {
    double trace;
    double trace_dipole_basis;
    double basis_gap;
} enet_trace_report;

ENET_API enet_status enet_pair_trace(const enet_pair* pair, enet_trace_report* out);

typedef struct enet_isometry_report {
    double isometry_defect;
    double polar_residual;
    double condition;
    int ill_conditioned;
    double conjugation_residual;
    double commutation_residual;
} enet_isometry_report;

ENET_API enet_status enet_pair_isometry(const enet_pair* pair, enet_isometry_report* out);

typedef struct enet_domination_row {
    double a; /* interval (a, b] */
    double b;
    double mu_c;
    double mu_a;
    int dominated;
} enet_domination_row;

typedef struct enet_domination_report {
    double moment_c[4];
    double moment_a[4];
    int moment_ok[4];
    double tolerance;
    int all_intervals_dominated;
    int all_moments_dominated;
    size_t num_rows;
} enet_domination_report;

/* Dyadic intervals over (0, λ_max] for levels 0..levels, where λ_max is the
 * larger top eigenvalue of the two networks. At most
 * rows_cap rows are written; num_rows reports the total. */
ENET_API enet_status enet_pair_domination(const enet_pair* pair, const double* u, int levels,
                                          enet_domination_report* out, enet_domination_row* rows, size_t rows_cap);

ENET_API enet_status enet_pair_harmonic_check(const enet_pair* pair, const double* h, const size_t* interior,
                                              size_t num_interior, double* out);

/* ---- harmonics ---- */

ENET_API enet_status enet_harmonic_solve(const enet_network* net, const size_t* boundary, const double* values,
                                         size_t num_boundary, double* out);

typedef struct enet_harmonic_split {
    double orthogonality_defect;
    double reconstruction_defect;
} enet_harmonic_split;

ENET_API enet_status enet_harmonic_decompose(const enet_network* net, const double* u, const size_t* interior,
                                             size_t num_interior, double* fin_part, double* harm_part,
                                             enet_harmonic_split* out);

#ifdef __cplusplus
}
#endif

#endif /* ENET_H */
