#include "bellcord/verify.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "bellcord/asymptotics.hpp"
#include "bellcord/errors.hpp"
#include "bellcord/evalnum.hpp"
#include "bellcord/lambert.hpp"
#include "bellcord/moments.hpp"
#include "bellcord/partitions.hpp"
#include "bellcord/tailsim.hpp"

namespace bellcord {
namespace {

struct CheckOutcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- exact combinatorics -------------------------------------------------

CheckOutcome check_oracle_equivalence() {
  for (unsigned k = 0; k <= 12; ++k) {
    if (bell_polynomial(k) != enumerate_partitions_oracle(k, BlockFilter::all))
      return {false, "full family mismatch at k=" + std::to_string(k)};
    if (restricted_bell_polynomial(k) !=
        enumerate_partitions_oracle(k, BlockFilter::min_block_2))
      return {false, "no-singleton family mismatch at k=" + std::to_string(k)};
    const ExactPolynomial even_oracle =
        enumerate_partitions_oracle(k, BlockFilter::even_blocks);
    if (k % 2 == 0) {
      if (even_block_bell_polynomial(k) != even_oracle)
        return {false, "even-block family mismatch at k=" + std::to_string(k)};
    } else if (!even_oracle.is_zero()) {
      return {false,
              "even-block oracle nonzero at odd k=" + std::to_string(k)};
    }
  }
  return {true, "three families equal for k <= 12"};
}

// Taylor coefficients of exp(A(u)) where A is a power series whose
// u^m coefficient is a polynomial in x.  Entirely rational arithmetic,
// sharing nothing with the recurrence builders: E_0 = 1 and
// j E_j = sum_m (m a_m) E_{j-m}, the series form of E' = A' E.
std::vector<std::vector<mpq_class>> exp_series_in_x(unsigned order,
                                                    bool drop_linear) {
  // m * a_m = x / (m-1)!  (zero when the linear term is dropped and m=1).
  std::vector<mpq_class> m_am(order + 1);
  mpq_class fact = 1;  // (m-1)! running value
  for (unsigned m = 1; m <= order; ++m) {
    if (m >= 2) fact *= static_cast<long>(m - 1);
    if (!(drop_linear && m == 1)) m_am[m] = 1 / fact;
  }
  std::vector<std::vector<mpq_class>> e(order + 1);
  e[0] = {mpq_class(1)};
  for (unsigned j = 1; j <= order; ++j) {
    std::vector<mpq_class> acc(j + 1, mpq_class(0));
    for (unsigned m = 1; m <= j; ++m) {
      if (m_am[m] == 0) continue;
      const std::vector<mpq_class>& prev = e[j - m];
      for (std::size_t i = 0; i < prev.size(); ++i)
        acc[i + 1] += prev[i] * m_am[m];  // the x factor shifts by one
    }
    for (mpq_class& c : acc) c /= static_cast<long>(j);
    e[j] = std::move(acc);
  }
  return e;
}

bool matches_scaled(const std::vector<mpq_class>& series_coeff,
                    const ExactPolynomial& poly, const mpz_class& k_fact) {
  const std::size_t width =
      std::max(series_coeff.size(), std::size_t(poly.degree() + 1));
  for (std::size_t i = 0; i < width; ++i) {
    mpq_class lhs = i < series_coeff.size() ? series_coeff[i] : mpq_class(0);
    lhs *= k_fact;
    if (lhs != poly.coeff(i)) return false;
  }
  return true;
}

CheckOutcome check_egf_taylor() {
  const auto raw = exp_series_in_x(12, false);
  const auto centered = exp_series_in_x(12, true);
  mpz_class k_fact = 1;
  for (unsigned k = 0; k <= 12; ++k) {
    if (k > 0) k_fact *= static_cast<long>(k);
    if (!matches_scaled(raw[k], bell_polynomial(k), k_fact))
      return {false, "full-family coefficient mismatch at k=" +
                         std::to_string(k)};
    if (!matches_scaled(centered[k], restricted_bell_polynomial(k), k_fact))
      return {false, "no-singleton coefficient mismatch at k=" +
                         std::to_string(k)};
  }
  return {true, "exact rational match for k <= 12, both families"};
}

ExactPolynomial scaled(const ExactPolynomial& p, const mpz_class& c) {
  std::vector<mpz_class> coeffs(p.coeffs());
  for (mpz_class& v : coeffs) v *= c;
  return ExactPolynomial(std::move(coeffs));
}

CheckOutcome check_touchard() {
  std::vector<ExactPolynomial> b;
  for (unsigned k = 0; k <= 31; ++k) b.push_back(bell_polynomial(k));
  for (unsigned k = 0; k <= 30; ++k) {
    ExactPolynomial sum;
    for (unsigned j = 0; j <= k; ++j) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), k, j);
      sum = sum + scaled(b[j], binom);
    }
    if (b[k + 1] != sum.times_x())
      return {false, "identity fails at k=" + std::to_string(k)};
  }
  return {true, "exact polynomial identity for k <= 30"};
}

// ---- numeric limits ------------------------------------------------------

// |a/b - 1| for two log-domain values of the same sign.
double rel_gap(const LogValue& a, const LogValue& b) {
  if (a.sign != b.sign || b.sign == 0) return HUGE_VAL;
  return std::fabs(std::expm1(a.log_abs - b.log_abs));
}

CheckOutcome check_dobinski() {
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    for (unsigned k = 0; k <= 20; ++k) {
      const double raw = rel_gap(poisson_moment_series(k, x, 1e-13),
                                 eval_exact_poly(bell_polynomial(k), x));
      worst = std::max(worst, raw);
      if (k != 1) {  // order-1 value is identically zero
        const double cen =
            rel_gap(centered_poisson_moment_series(k, x, 1e-13),
                    eval_exact_poly(restricted_bell_polynomial(k), x));
        worst = std::max(worst, cen);
      }
    }
  }
  if (worst > 1e-10)
    return {false, "relative deviation " + fmt(worst) + " exceeds 1e-10"};
  return {true, "max relative deviation " + fmt(worst)};
}

// Plain bisection for the classical root, independent of the Newton
// solver: ln u + u is strictly increasing on u > 0.
double bisect_classical_root(double beta) {
  const double target = std::log(beta);
  double lo = 1e-12;
  double hi = std::max(1.0, target + 1.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::log(mid) + mid < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CheckOutcome check_lambert() {
  double worst_rel = 0.0;
  for (int i = 0; i <= 36; ++i) {
    const double beta = std::pow(10.0, -6.0 + 0.5 * i);
    for (LambertKind kind : {LambertKind::classical, LambertKind::modified}) {
      const double u = solve_lambert(beta, kind, 1e-12).u;
      const double map = kind == LambertKind::classical
                             ? u * std::exp(u)
                             : u * std::expm1(u);
      const double rel = std::fabs(map - beta) / std::max(1.0, beta);
      worst_rel = std::max(worst_rel, rel);
      if (rel > 1e-12)
        return {false, "residual " + fmt(rel) + " at beta=" + fmt(beta)};
    }
  }
  double prev = HUGE_VAL;
  double last = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const double beta = std::pow(10.0, d);
    const double gap = std::fabs(bisect_classical_root(beta) -
                                 lambert_expansion(beta, LambertKind::classical));
    if (gap >= prev)
      return {false, "expansion gap not decreasing at beta=1e" +
                         std::to_string(d)};
    prev = gap;
    last = gap;
  }
  if (last > 0.35)
    return {false, "expansion gap " + fmt(last) + " at beta=1e8"};
  return {true, "max residual " + fmt(worst_rel) + ", final expansion gap " +
                    fmt(last)};
}

CheckOutcome check_linear_regime() {
  const unsigned ks[] = {25, 50, 100, 200};
  double final_raw = 0.0, final_cen = 0.0;
  for (Family fam : {Family::bell, Family::restricted}) {
    double prev = HUGE_VAL;
    for (unsigned k : ks) {
      const double x = static_cast<double>(k);
      const double exact = (fam == Family::bell
                                ? log_bell(k, x)
                                : log_restricted_bell(k, x))
                               .log_abs /
                           k;
      const double est =
          (fam == Family::bell
               ? estimate_bell(k, x, "2.13")
               : estimate_restricted_bell(k, x, "2.19"))
              .log_value_per_k;
      const double gap = std::fabs(exact - est);
      if (gap >= prev)
        return {false, std::string(family_name(fam)) +
                           " gap not decreasing at k=" + std::to_string(k)};
      prev = gap;
      (fam == Family::bell ? final_raw : final_cen) = gap;
    }
  }
  if (final_raw > 0.02 || final_cen > 0.02)
    return {false, "gap at k=200 exceeds 0.02: full " + fmt(final_raw) +
                       ", no-singleton " + fmt(final_cen)};
  return {true, "gaps at k=200: full " + fmt(final_raw) + ", no-singleton " +
                    fmt(final_cen)};
}

CheckOutcome check_superlinear_regime() {
  double worst = 0.0;
  for (double x : {256.0, 512.0}) {
    const double gap =
        std::fabs(log_restricted_bell(64, x).log_abs / 64 -
                  estimate_restricted_bell(64, x, "2.20").log_value_per_k);
    worst = std::max(worst, gap);
    if (gap > 0.1)
      return {false, "gap " + fmt(gap) + " at x=" + fmt(x) + " exceeds 0.1"};
  }
  double prev = HUGE_VAL;
  for (unsigned k : {64u, 128u, 256u}) {
    const double x = std::pow(static_cast<double>(k), 1.25);
    const double gap =
        std::fabs(log_restricted_bell(k, x).log_abs / k -
                  estimate_restricted_bell(k, x, "2.20").log_value_per_k);
    if (gap >= prev)
      return {false,
              "schedule gap not decreasing at k=" + std::to_string(k)};
    prev = gap;
  }
  return {true, "max fixed-point gap " + fmt(worst) +
                    ", schedule gap down to " + fmt(prev)};
}

CheckOutcome check_moment_convergence() {
  double prev_raw = HUGE_VAL, prev_cen = HUGE_VAL;
  GapPair last;
  for (unsigned long n : {1024ul, 4096ul, 16384ul, 65536ul}) {
    last = lemma21_gap(n, 3.0, 6);
    if (last.raw_gap >= prev_raw || last.centered_gap >= prev_cen)
      return {false, "gap not decreasing at n=" + std::to_string(n)};
    prev_raw = last.raw_gap;
    prev_cen = last.centered_gap;
  }
  const double cap = 2.0 * 36.0 / 65536.0;
  if (last.raw_gap > cap)
    return {false, "raw gap " + fmt(last.raw_gap) + " exceeds " + fmt(cap)};
  return {true, "gaps at n=65536: raw " + fmt(last.raw_gap) + ", centered " +
                    fmt(last.centered_gap)};
}

// ---- sampling ------------------------------------------------------------

// Critical relative threshold for chi~ = 2 experiments.
double base_threshold() {
  return std::exp(h_tilde_of_u(solve_lambert(0.5, LambertKind::modified,
                                             1e-13)
                                   .u));
}

ExperimentConfig reference_tail_config() {
  const double crit = base_threshold();
  ExperimentConfig cfg;
  cfg.n_values = {100000};
  cfg.rho_rule = RhoRule::chi_log_n;
  cfg.rho_value = 2.0;
  cfg.trials = 100000;
  cfg.seed = kAcceptanceSeed;
  cfg.thresholds = {1.1 * crit, 1.5 * crit, 2.0 * crit};
  cfg.measure = Measure::single_vertex;
  return cfg;
}

CheckOutcome check_single_vertex_tail(unsigned threads) {
  const ExperimentConfig cfg = reference_tail_config();
  const ExperimentResult res = sample_degree_experiment(cfg, threads);
  std::ostringstream os;
  os << "counts";
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const ExperimentRow& row = res.rows[i];
    os << ' ' << row.count;
    if (row.bound_k != 11)
      return {false, "bound order used k=" + std::to_string(row.bound_k)};
    const double bound = row.bound_value.to_double();
    if (bound >= 10.0 / cfg.trials &&
        row.empirical_frequency > 3.0 * bound)
      return {false, "frequency " + fmt(row.empirical_frequency) +
                         " above 3x bound " + fmt(bound) + " at threshold " +
                         fmt(row.threshold)};
    if (i > 0 && row.count >= res.rows[i - 1].count)
      return {false, "counts not strictly decreasing in the threshold"};
  }
  return {true, os.str()};
}

CheckOutcome check_max_degree_trend(unsigned threads) {
  const double threshold = 1.5 * base_threshold();
  const unsigned long ns[] = {1000, 10000, 100000};
  const unsigned long trials[] = {400, 200, 100};
  double prev = HUGE_VAL;
  std::ostringstream os;
  os << "frequencies";
  for (int i = 0; i < 3; ++i) {
    ExperimentConfig cfg;
    cfg.n_values = {ns[i]};
    cfg.rho_rule = RhoRule::chi_log_n;
    cfg.rho_value = 2.0;
    cfg.trials = trials[i];
    cfg.seed = kAcceptanceSeed;
    cfg.thresholds = {threshold};
    cfg.measure = Measure::max_degree;
    const ExperimentResult res = sample_degree_experiment(cfg, threads);
    const double freq = res.rows.at(0).empirical_frequency;
    os << ' ' << fmt(freq);
    if (freq > prev)
      return {false, "frequency increased at n=" + std::to_string(ns[i])};
    prev = freq;
  }
  return {true, os.str()};
}

CheckOutcome check_growing_chi(unsigned threads) {
  ExperimentConfig cfg;
  cfg.n_values = {1000, 10000, 100000};
  cfg.rho_rule = RhoRule::chi_n_log_n;
  cfg.rho_value = 1.0;
  cfg.trials = 20000;
  cfg.seed = kAcceptanceSeed;
  cfg.thresholds = {0.5};
  cfg.measure = Measure::single_vertex;
  const ExperimentResult res = sample_degree_experiment(cfg, threads);
  std::vector<double> freq;
  for (const ExperimentRow& row : res.rows) freq.push_back(
      row.empirical_frequency);
  for (std::size_t i = 1; i < freq.size(); ++i)
    if (freq[i] > freq[i - 1])
      return {false, "frequency increased between sizes"};
  if (!(freq.front() > freq.back()))
    return {false, "no overall decrease in the frequency"};
  if (freq.back() > 10.0 / cfg.trials)
    return {false, "final frequency " + fmt(freq.back()) + " not near zero"};
  const VerdictReport verdict = theorem_verdict(cfg, res);
  const double q99 = verdict.scaled_deviations.back().q99;
  const double cap = std::exp(1.0) + 1.0;
  if (q99 > cap)
    return {false, "scaled q99 " + fmt(q99) + " exceeds e+1"};
  std::ostringstream os;
  os << "frequencies " << fmt(freq[0]) << ' ' << fmt(freq[1]) << ' '
     << fmt(freq[2]) << ", scaled q99 " << fmt(q99);
  return {true, os.str()};
}

CheckOutcome check_determinism(unsigned) {
  const ExperimentConfig cfg = reference_tail_config();
  const ExperimentResult one = sample_degree_experiment(cfg, 1);
  for (unsigned threads : {4u, 8u}) {
    const ExperimentResult other = sample_degree_experiment(cfg, threads);
    for (std::size_t i = 0; i < one.rows.size(); ++i)
      if (other.rows.at(i).count != one.rows[i].count)
        return {false, "counts differ with " + std::to_string(threads) +
                           " workers"};
    if (other.deviations.at(0).qmax != one.deviations[0].qmax)
      return {false, "deviation summary differs with " +
                         std::to_string(threads) + " workers"};
  }
  std::ostringstream os;
  os << "identical counts";
  for (const ExperimentRow& row : one.rows) os << ' ' << row.count;
  os << " across 1/4/8 workers";
  return {true, os.str()};
}

struct Criterion {
  const char* name;
  double time_limit;  // seconds; 0 = none stated
  CheckOutcome (*run)(unsigned threads);
};

const Criterion kCriteria[] = {
    {"oracle-equivalence", 10.0, [](unsigned) { return check_oracle_equivalence(); }},
    {"egf-taylor", 0.0, [](unsigned) { return check_egf_taylor(); }},
    {"touchard", 0.0, [](unsigned) { return check_touchard(); }},
    {"dobinski", 5.0, [](unsigned) { return check_dobinski(); }},
    {"lambert", 0.0, [](unsigned) { return check_lambert(); }},
    {"linear-regime", 60.0, [](unsigned) { return check_linear_regime(); }},
    {"superlinear-regime", 0.0,
     [](unsigned) { return check_superlinear_regime(); }},
    {"moment-convergence", 10.0,
     [](unsigned) { return check_moment_convergence(); }},
    {"single-vertex-tail", 120.0,
     [](unsigned t) { return check_single_vertex_tail(t); }},
    {"max-degree-trend", 600.0,
     [](unsigned t) { return check_max_degree_trend(t); }},
    {"growing-chi", 180.0, [](unsigned t) { return check_growing_chi(t); }},
    {"determinism", 0.0, [](unsigned t) { return check_determinism(t); }},
};

}  // namespace

const std::vector<std::string>& acceptance_criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Criterion& c : kCriteria) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

std::vector<CriterionResult> run_acceptance(
    const std::vector<std::string>& names, unsigned threads,
    const std::function<void(const CriterionResult&)>& progress) {
  for (const std::string& n : names) {
    bool known = false;
    for (const Criterion& c : kCriteria) known = known || n == c.name;
    if (!known)
      throw Error(ErrorCode::invalid, "unknown acceptance check: " + n);
  }
  std::vector<CriterionResult> out;
  for (const Criterion& c : kCriteria) {
    if (!names.empty() &&
        std::find(names.begin(), names.end(), c.name) == names.end())
      continue;
    CriterionResult r;
    r.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const CheckOutcome outcome = c.run(threads);
      r.passed = outcome.ok;
      r.detail = outcome.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.time_limit > 0.0 && r.seconds > c.time_limit) {
      r.passed = false;
      r.detail += "; over the " + fmt(c.time_limit) + " s budget";
    }
    out.push_back(r);
    if (progress) progress(out.back());
  }
  return out;
}

}  // namespace bellcord
