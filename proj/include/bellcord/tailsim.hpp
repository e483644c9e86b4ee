#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "bellcord/log_value.hpp"
#include "bellcord/moments.hpp"

namespace bellcord {

// How the moment order of the tail bound is chosen.
enum class KStrategy { floor_log_n, optimize_over_k, fixed_k };
const char* k_strategy_name(KStrategy s) noexcept;
KStrategy k_strategy_from_name(const char* name);

// P(|centered degree| > s) <= s^(-2mk) * 2mk-th central moment, optionally
// multiplied by n to cover the maximum over all vertices.
struct TailBoundQuery {
  unsigned long n = 2;
  double rho = 1.0;
  double s = 1.0;  // absolute deviation threshold
  KStrategy strategy = KStrategy::floor_log_n;
  unsigned fixed_k = 1;     // the k evaluated when strategy == fixed_k
  unsigned multiplier = 1;  // m: the bound exponent is 2*m*k
  bool union_bound = false;
};

struct TailBoundResult {
  LogValue value;
  unsigned k = 1;  // argmin (or the requested) moment order index
};

// Moment bound with the limiting polynomial value B~_{2mk}(rho) standing in
// for the finite-population moment; the substitution gap is the quantity
// lemma21_gap certifies.
TailBoundResult markov_bound(const TailBoundQuery& q);

// Same bound built from the exact finite-population central moment instead;
// `count` selects how many summands the degree sum has.  Kept separate so
// the two moment sources are never silently mixed in one number.
TailBoundResult markov_bound_exact(const TailBoundQuery& q,
                                   CountConvention count);

// --------------------------------------------------------------------------
// Monte Carlo experiments over G(n, rho/n).

enum class RhoRule { fixed, chi_log_n, chi_n_log_n };
const char* rho_rule_name(RhoRule r) noexcept;
RhoRule rho_rule_from_name(const char* name);

enum class Measure { single_vertex, max_degree };
const char* measure_name(Measure m) noexcept;
Measure measure_from_name(const char* name);

struct ExperimentConfig {
  std::vector<unsigned long> n_values;
  RhoRule rho_rule = RhoRule::fixed;
  // fixed: rho itself; chi_log_n: chi with rho = chi ln n;
  // chi_n_log_n: c with rho = c (ln n)^2 (so chi_n = c ln n grows).
  double rho_value = 1.0;
  unsigned long trials = 100;
  std::uint64_t seed = 1;
  std::vector<double> thresholds;  // relative deviation levels s~
  Measure measure = Measure::single_vertex;
  // Work budget: total expected sampled edges (plus per-trial overhead)
  // across the whole experiment.
  unsigned long long max_total_edges = 2'000'000'000ull;
};

double rho_for(const ExperimentConfig& cfg, unsigned long n);

std::string experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const std::string& text);

struct ExperimentRow {
  unsigned long n = 0;
  double rho = 0.0;
  double threshold = 0.0;
  unsigned long count = 0;  // trials with |D/rho - 1| >= threshold
  unsigned long trials = 0;
  double empirical_frequency = 0.0;
  LogValue bound_value;  // markov_bound at k = floor(ln n), union for max_degree
  unsigned bound_k = 1;
  double wall_seconds = 0.0;  // informational; excluded from reproducible output
  std::uint64_t seed = 0;
};

struct DeviationSummary {
  unsigned long n = 0;
  double rho = 0.0;
  // Nearest-rank quantiles of the per-trial relative deviation |D/rho - 1|.
  double q50 = 0.0, q90 = 0.0, q99 = 0.0, qmax = 0.0;
};

struct ExperimentResult {
  Measure measure = Measure::single_vertex;
  std::vector<ExperimentRow> rows;           // n-major, thresholds in order
  std::vector<DeviationSummary> deviations;  // one per n
};

// Runs cfg.trials independent trials per n.  Trial t draws its entire
// randomness from stream (seed, n_index * trials + t), so counts are
// bit-identical for any worker count.  threads == 0 means one worker per
// hardware thread.
ExperimentResult sample_degree_experiment(const ExperimentConfig& cfg,
                                          unsigned threads = 1);

// One reproducible draw of the measure (a vertex degree, or the maximum
// degree) — the same routine the experiment engine runs per trial.
unsigned long sample_measure_once(Measure measure, unsigned long n, double rho,
                                  std::uint64_t seed, std::uint64_t stream);

// Maps a linearized upper-triangle index in [0, n(n-1)/2) to the vertex
// pair i < j it denotes; exposed so the mapping can be verified directly.
void edge_pair_of_index(unsigned long long idx, unsigned long n,
                        unsigned long& i, unsigned long& j);

// --------------------------------------------------------------------------
// Descriptive comparison of experiment output against the limit statements.

struct VerdictRow {
  unsigned long n = 0;
  double rho = 0.0;
  double threshold = 0.0;
  double empirical_frequency = 0.0;
  LogValue bound_value;
  bool in_theorem_scope = false;
  bool bound_respected = true;
  std::string note;
};

struct VerdictReport {
  std::vector<VerdictRow> rows;
  // Per threshold, is the empirical frequency non-increasing across the
  // configured n values (in order)?  True only if it holds for all.
  bool trend_decreasing = true;
  // chi_log_n runs: the critical relative level e^{h~(u)}, u(e^u-1) = 1/chi.
  double critical_threshold = std::numeric_limits<double>::quiet_NaN();
  // chi_n_log_n runs: deviation quantiles scaled by sqrt(chi_n).
  std::vector<DeviationSummary> scaled_deviations;
};

VerdictReport theorem_verdict(const ExperimentConfig& cfg,
                              const ExperimentResult& result);

}  // namespace bellcord
