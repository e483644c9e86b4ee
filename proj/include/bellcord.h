/* bellcord — C API for the set-partition / Poisson-moment toolkit.
 *
 * Conventions:
 *   - Every function returns a bc_status; BC_OK (0) means success and any
 *     output parameters are filled.  On failure outputs are untouched and
 *     bc_last_error() describes the problem for the calling thread.
 *   - Values that overflow doubles travel in the log domain as a
 *     (sign, ln|value|) pair: sign is -1/0/+1, and ln|value| is
 *     meaningless when sign is 0.
 *   - Strings returned through char** are heap copies owned by the
 *     caller; release them with bc_string_free.  Structured results
 *     (experiment rows, comparison records, verdicts) are JSON documents
 *     in UTF-8.
 *   - Opaque handles (bc_poly, bc_table) stay valid until the matching
 *     _free call; they are immutable and safe to share across threads.
 */

#ifndef BELLCORD_H
#define BELLCORD_H

#ifdef __cplusplus
extern "C" {
#endif

/* ---- status & errors -------------------------------------------------- */

typedef enum bc_status {
  BC_OK = 0,
  BC_ERR_DOMAIN = 1,    /* argument outside the operation's domain   */
  BC_ERR_SIZE = 2,      /* argument beyond a documented cap          */
  BC_ERR_PRECISION = 3, /* precision request unattainable            */
  BC_ERR_NOCONV = 4,    /* iteration/series missed its certificate   */
  BC_ERR_BUDGET = 5,    /* work estimate exceeds the configured cap  */
  BC_ERR_INVALID = 6,   /* malformed input (enum string, JSON, NULL) */
  BC_ERR_INTERNAL = 7   /* library invariant violation               */
} bc_status;

/* Short token for a status value, e.g. "domain". */
const char* bc_status_name(bc_status s);

/* Message from the calling thread's most recent failure; "" if none. */
const char* bc_last_error(void);

/* Release a string returned through a char** output. */
void bc_string_free(char* s);

/* Library version, "major.minor.patch". */
const char* bc_version(void);

/* ---- exact combinatorics ---------------------------------------------- */

/* Weighted partition-count polynomial, coefficients as decimal strings.
 * family: "bell" (all partitions), "restricted" (no singleton blocks),
 * "even_block" (every block even; k must then be even or zero). */
typedef struct bc_poly bc_poly;
bc_status bc_poly_build(const char* family, unsigned k, bc_poly** out);
/* Degree of the polynomial; -1 for the zero polynomial. */
int bc_poly_degree(const bc_poly* p);
/* Decimal coefficient of x^j (j past the degree yields "0"). */
bc_status bc_poly_coeff(const bc_poly* p, unsigned j, char** out);
void bc_poly_free(bc_poly* p);

/* Triangle of partition counts S(k, r) by block count r.
 * kind: "classical", "restricted", or "even_block"; rows 0..k_max. */
typedef struct bc_table bc_table;
bc_status bc_table_build(const char* kind, unsigned k_max, bc_table** out);
/* Decimal S(k, r); r past the row yields "0". */
bc_status bc_table_entry(const bc_table* t, unsigned k, unsigned r,
                         char** out);
void bc_table_free(bc_table* t);

/* ---- log-domain evaluation -------------------------------------------- */

/* ln of the full (restricted=0) or no-singleton (restricted=1)
 * polynomial value at x >= 0, for k up to 100000. */
bc_status bc_log_poly_value(unsigned k, double x, int restricted, int* sign,
                            double* log_abs);

/* Weighted-count series for the k-th raw (centered=0) or central
 * (centered=1) moment of Poisson(x), certified to relative tol.
 * terms_used may be NULL. */
bc_status bc_poisson_moment(unsigned k, double x, int centered, double tol,
                            int* sign, double* log_abs,
                            long long* terms_used);

/* ---- root solving and per-k profiles ---------------------------------- */

/* Positive root of u e^u = beta ("classical") or u (e^u - 1) = beta
 * ("modified").  residual and iterations may be NULL. */
bc_status bc_lambert_solve(double beta, const char* kind, double tol,
                           double* u, double* residual, int* iterations);

/* Two-term large-beta expansion ln(beta) - ln(ln(beta)); beta > e^2. */
bc_status bc_lambert_expansion(double beta, const char* kind, double* out);

/* Per-k log-scale profiles: h for the full family (argument the
 * classical root), h~ for the no-singleton family (the modified root). */
bc_status bc_profile_h(double u, double* out);
bc_status bc_profile_h_tilde(double u, double* out);

/* ---- asymptotic formulas ---------------------------------------------- */

/* One limiting formula on the (1/k) ln scale.  family: "bell" or
 * "restricted"; formula: an accepted identifier such as "2.13".
 * canonical_id (optional) receives the canonical spelling of the
 * formula; in_home_regime (optional) whether (k, x) sits in the regime
 * the formula was derived for. */
bc_status bc_asymptotic_estimate(const char* family, unsigned k, double x,
                                 const char* formula, double* log_per_k,
                                 char** canonical_id, int* in_home_regime);

/* Exact value vs every applicable formula.  JSON object:
 * {family, k, x, regime, chi, exact_log_per_k,
 *  formulas: [{formula_id, log_value_per_k, abs_gap, in_home_regime}]}. */
bc_status bc_asymptotic_compare(const char* family, unsigned k, double x,
                                char** json);

/* ---- exact finite-population moments ---------------------------------- */

/* k-th raw (centered=0) or central (centered=1) moment of a sum of
 * independent Bernoulli(rho/n) indicators; count_convention "n" or
 * "n_minus_1" chooses the number of summands.  precision_bits 0 means
 * the default (256). */
bc_status bc_binomial_moment(unsigned long n, double rho, int centered,
                             const char* count_convention, unsigned k,
                             unsigned precision_bits, int* sign,
                             double* log_abs);

/* Relative gaps between order-k binomial moments (n summands, mean rho)
 * and their polynomial limits, raw and centered. */
bc_status bc_moment_limit_gap(unsigned long n, double rho, unsigned k,
                              double* raw_gap, double* centered_gap);

/* ---- tail bounds and experiments -------------------------------------- */

/* Moment tail bound on P(|D - rho| >= s) with D the degree count.
 * strategy: "floor_log_n", "optimize_over_k", or "fixed" (then fixed_k
 * is used); multiplier m evaluates order 2*m*k; union_bound multiplies
 * by n.  exact=0 evaluates the polynomial-limit moment (basis
 * "bell_approx"); exact=1 the finite-n moment (basis "exact", needs
 * count_convention, NULL means "n").  k_used reports the order/2m
 * actually taken. */
bc_status bc_markov_bound(unsigned long n, double rho, double s,
                          const char* strategy, unsigned fixed_k,
                          unsigned multiplier, int union_bound, int exact,
                          const char* count_convention, int* sign,
                          double* log_abs, unsigned* k_used);

/* Run a degree experiment.  config_json mirrors the documented
 * ExperimentConfig schema; threads 0 means one worker per hardware
 * thread.  result_json: {measure, rows: [{n, rho, threshold, count,
 * trials, empirical_frequency, bound_log10, bound_sign, bound_k, seed}],
 * deviations: [{n, rho, q50, q90, q99, qmax}]}. */
bc_status bc_experiment_run(const char* config_json, unsigned threads,
                            char** result_json);

/* Pair an experiment result with bound and trend verdicts.  Inputs are
 * the documents given to / produced by bc_experiment_run.  verdict_json:
 * {critical_threshold, trend_decreasing, rows: [{n, rho, threshold,
 * empirical_frequency, bound_log10, bound_sign, in_theorem_scope,
 * bound_respected, note}], scaled_deviations: [...]}. */
bc_status bc_theorem_verdict(const char* config_json,
                             const char* result_json, char** verdict_json);

/* ---- acceptance battery ----------------------------------------------- */

/* Comma-joined canonical names of the acceptance checks, in run order. */
bc_status bc_verify_names(char** csv);

/* Run acceptance checks.  names_csv: comma-separated subset, NULL or ""
 * for all.  on_result (optional) fires after each check; all_passed
 * (optional) receives 1 when every selected check passed. */
typedef void (*bc_verify_callback)(const char* name, int passed,
                                   double seconds, const char* detail,
                                   void* user);
bc_status bc_verify_run(const char* names_csv, unsigned threads,
                        bc_verify_callback on_result, void* user,
                        int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BELLCORD_H */
