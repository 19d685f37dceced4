/*
 * C interface to the sellback library.
 *
 * Prosumer sell-back decisions under prospect-theory and expected-utility
 * preferences, for day-ahead contract pricing and fixed-prize lottery
 * incentive mechanisms, plus a retail-market batch simulator.
 *
 * Every function returns an sb_status; values other than SB_OK leave a
 * human-readable message retrievable through sb_last_error() on the calling
 * thread. Handles are opaque and must be released with their _free function.
 */
#ifndef SELLBACK_H
#define SELLBACK_H

#include <stdint.h>

#if defined(_WIN32)
#define SB_API __declspec(dllexport)
#else
#define SB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
    SB_OK = 0,
    SB_ERR_INVALID_ARGUMENT = 1, /* precondition or invariant violated */
    SB_ERR_DOMAIN = 2,           /* numeric input outside its domain */
    SB_ERR_PARSE = 3,            /* malformed or out-of-schema configuration */
    SB_ERR_SOLVER = 4,           /* numeric solve failed to converge */
    SB_ERR_IO = 5,               /* file could not be written */
    SB_ERR_INTERNAL = 6
} sb_status;

/* Library version, e.g. "1.0.0". */
SB_API const char* sb_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
SB_API const char* sb_last_error(void);

/* ---- weighting and value primitives ------------------------------------ */

/* Identity weighting (pi(q) = q) is selected with identity_weights != 0;
 * gamma is ignored in that mode. */

SB_API sb_status sb_value(double lambda, double eta, double beta, double y,
                          double* out);

SB_API sb_status sb_weight(double gamma, int identity_weights, double q,
                           double* out);

SB_API sb_status sb_weight_inverse(double gamma, int identity_weights, double w,
                                   double* out);

/* ---- single-prosumer decisions ------------------------------------------ */

/* Generation is uniform on [s_min, s_max] with s_min >= omega / alpha. */

/* Optimal day-ahead commitment.  used_closed_form (optional) reports whether
 * the quantile closed form applied (eta = beta = 1) or a numeric argmax ran. */
SB_API sb_status sb_optimal_contract(double omega, double alpha, double s_min,
                                     double s_max, double sellback_price,
                                     double penalty_price, double lambda,
                                     double eta, double beta, double gamma,
                                     int identity_weights, double* out_contract,
                                     int* used_closed_form);

/* Risk-neutral special case (lambda = 1, identity weights). */
SB_API sb_status sb_optimal_contract_eut(double omega, double alpha, double s_min,
                                         double s_max, double sellback_price,
                                         double penalty_price, double* out_contract);

/* Real-time sell-back for committed amount C at realized generation s. */
SB_API sb_status sb_realtime_sellback(double omega, double alpha, double s_min,
                                      double s_max, double sellback_price,
                                      double penalty_price, double s, double contract,
                                      double* out_sellback);

/* Optimal sell-back under a fixed-prize lottery with win chance m * z. */
SB_API sb_status sb_optimal_lottery_sellback(double omega, double alpha,
                                             double s_min, double s_max,
                                             double prize, double scale,
                                             double gamma, int identity_weights,
                                             double s, double* out_sellback);

/* ---- scenarios and batch experiments ------------------------------------ */

typedef struct sb_scenario sb_scenario;
typedef struct sb_table sb_table;

/* Builds a scenario from JSON text; NULL or empty text yields the default
 * community (7500 consumers, 2500 prosumers, retail 1.5, lambda 2, gamma 0.5,
 * seed 42). See the project README for the schema. */
SB_API sb_status sb_scenario_parse(const char* json_text, sb_scenario** out);

SB_API void sb_scenario_free(sb_scenario* scenario);

SB_API sb_status sb_scenario_set_seed(sb_scenario* scenario, uint64_t seed);

/* Overrides the sweep grid for one parameter: sellback_price, penalty_price,
 * lambda, prize or n_prosumers. steps >= 2. */
SB_API sb_status sb_scenario_set_grid(sb_scenario* scenario, const char* param,
                                      double start, double stop, int steps);

/* Runs one experiment: contract-compare, penalty-sweep, sellback-sweep,
 * lottery-sweep, penetration-sweep or single-prosumer. */
SB_API sb_status sb_run(const sb_scenario* scenario, const char* subcommand,
                        sb_table** out);

/* Fully-resolved configuration for the run; feeding it back through
 * sb_scenario_parse reproduces the same tables byte for byte. Free the
 * returned string with sb_string_free. */
SB_API sb_status sb_manifest(const sb_scenario* scenario, const char* subcommand,
                             char** out_json);

SB_API void sb_string_free(char* text);

/* ---- result tables ------------------------------------------------------- */

SB_API int32_t sb_table_rows(const sb_table* table);
SB_API int32_t sb_table_cols(const sb_table* table);
SB_API const char* sb_table_column_name(const sb_table* table, int32_t col);
SB_API sb_status sb_table_cell(const sb_table* table, int32_t row, int32_t col,
                               double* out);

/* Comma-separated text with a header row and 9-significant-digit values.
 * Free with sb_string_free. */
SB_API sb_status sb_table_csv(const sb_table* table, char** out_text);

SB_API sb_status sb_table_write_csv(const sb_table* table, const char* path);

SB_API void sb_table_free(sb_table* table);

#ifdef __cplusplus
}
#endif

#endif /* SELLBACK_H */
