#include "bellcord/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "bellcord/errors.hpp"
#include "bellcord/evalnum.hpp"
#include "bellcord/real.hpp"

namespace bellcord {

const char* count_convention_name(CountConvention c) noexcept {
  return c == CountConvention::n ? "n" : "n_minus_1";
}

CountConvention count_convention_from_name(const char* name) {
  require(name != nullptr, ErrorCode::invalid, "count convention name is null");
  if (std::strcmp(name, "n") == 0) return CountConvention::n;
  if (std::strcmp(name, "n_minus_1") == 0) return CountConvention::n_minus_1;
  fail(ErrorCode::invalid, std::string("unknown count convention: ") + name);
}

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate_spec(const BernoulliSumSpec& spec) {
  require(spec.n >= 1, ErrorCode::domain, "population must be positive");
  require(spec.n <= kMomentPopulationCap, ErrorCode::size,
          "population exceeds cap 10^7");
  require(std::isfinite(spec.rho) && spec.rho > 0.0 &&
              spec.rho < double(spec.n),
          ErrorCode::domain, "rho must satisfy 0 < rho < n");
}

// One certified summation attempt at working precision w.
//
// The sum runs outward from the mean over j with terms t_j = (j-c)^k pmf(j).
// On each side the sweep stops once the measured term ratio r at the window
// edge certifies the discarded tail: past the center the combined ratio
// |t_next|/|t_cur| is strictly decreasing step over step (the pmf ratio and
// the weight ratio both are), so the whole tail is dominated by the geometric
// series |t_edge| / (1 - r).  Fills `out` and returns true when truncation
// plus rounding stays below 2^-(good_bits) relative to the result; otherwise
// reports how many leading bits cancellation consumed so the caller can
// retry wider.
bool try_windowed_sum(unsigned long m, double rho, unsigned long n,
                      bool centered, unsigned k, long w, long good_bits,
                      LogValue& out, long& lost_bits) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(w);
  Real p(prec);
  p.set(rho);
  p /= n;
  Real q(prec);
  q.set(1L);
  q -= p;
  Real c(prec);
  if (centered) {
    c.set(p);
    c *= double(m);  // m <= 10^7 is exact in double
  } else {
    c.set_zero();
  }
  const double c_dbl = c.to_double();

  const double mu = double(m) * (rho / double(n));
  unsigned long j0 = static_cast<unsigned long>(std::llround(std::max(mu, 0.0)));
  if (j0 > m) j0 = m;

  // ln pmf(j0) assembled once in MPFR; every other pmf value follows by the
  // exact-rational ratio recurrence, so this is the only place where large
  // lngamma magnitudes enter the rounding budget.
  Real a1(prec), a2(prec), a3(prec);
  a1.set(m + 1ul);
  a2.set(j0 + 1ul);
  a3.set(m - j0 + 1ul);
  Real lpmf = Real::lngamma(a1) - Real::lngamma(a2) - Real::lngamma(a3);
  Real lp_term = Real::log(p);
  lp_term *= double(j0);
  lpmf += lp_term;
  Real lq_term = Real::log(q);
  lq_term *= double(m - j0);
  lpmf += lq_term;
  const double lpmf_mag = std::fabs(lpmf.to_double());
  Real pmf0 = Real::exp(lpmf);

  auto term_at = [&](unsigned long j, const Real& pmf) -> Real {
    Real d(prec);
    d.set(static_cast<long>(j));
    d -= c;
    Real t = Real::pow_ui(d, k);
    t *= pmf;
    return t;
  };

  Real S(prec);
  S.set_zero();
  Real A(prec);  // sum of |t_j|: cancellation and rounding reference
  A.set_zero();
  unsigned long terms = 0;
  auto accumulate = [&](const Real& t) {
    S += t;
    A += Real::abs(t);
    ++terms;
  };

  Real t_center = term_at(j0, pmf0);
  accumulate(t_center);

  double ltail_up = kNegInf;
  double ltail_down = kNegInf;

  // `t_prev` is the last included term, `t_next` the candidate edge term.
  // Returns the certified log tail bound through `ltail`, or false to keep
  // sweeping.
  auto edge_certified = [&](const Real& t_prev, const Real& t_next,
                            bool in_region, double& ltail) -> bool {
    if (!in_region || t_prev.is_zero()) return false;
    if (t_next.is_zero()) {
      ltail = kNegInf;
      return true;
    }
    if (A.is_zero() || t_next.exponent2() + (w - 10) > A.exponent2())
      return false;
    const double lt_e = t_next.to_logvalue().log_abs;
    const double lt_p = t_prev.to_logvalue().log_abs;
    const double r_ub = std::exp(lt_e - lt_p) * (1.0 + 1e-12) + 1e-15;
    if (!(r_ub <= 0.999999)) return false;
    const double bound = lt_e - std::log1p(-r_ub);
    if (bound > double(A.exponent2() - (w - 10)) * kLn2) return false;
    ltail = bound;
    return true;
  };

  // Upward sweep: pmf(j+1) = pmf(j) * (m-j) p / ((j+1) q).
  {
    Real pmf(prec);
    pmf.set(pmf0);
    Real t_prev(prec);
    t_prev.set(t_center);
    unsigned long j = j0;
    while (j < m) {
      Real fac(prec);
      fac.set(m - j);
      fac *= p;
      Real den(prec);
      den.set(j + 1ul);
      den *= q;
      fac /= den;
      pmf *= fac;
      Real t_next = term_at(j + 1, pmf);
      const bool in_region = double(j) > c_dbl + 2e-9;
      if (edge_certified(t_prev, t_next, in_region, ltail_up)) break;
      accumulate(t_next);
      t_prev.set(t_next);
      ++j;
    }
  }

  // Downward sweep: pmf(j-1) = pmf(j) * j q / ((m-j+1) p).  Below the center
  // the weights grow as j falls, mirroring the upward side, so the same
  // edge-ratio certificate applies once the window sits wholly below c.
  if (j0 > 0) {
    Real pmf(prec);
    pmf.set(pmf0);
    Real t_prev(prec);
    t_prev.set(t_center);
    unsigned long j = j0;
    while (j > 0) {
      Real fac(prec);
      fac.set(j);
      fac *= q;
      Real den(prec);
      den.set(m - j + 1ul);
      den *= p;
      fac /= den;
      pmf *= fac;
      Real t_next = term_at(j - 1, pmf);
      const bool in_region =
          centered ? (double(j) < c_dbl - 2e-9) : (j >= 2);
      if (edge_certified(t_prev, t_next, in_region, ltail_down)) break;
      accumulate(t_next);
      t_prev.set(t_next);
      --j;
    }
  }

  if (A.is_zero()) {
    out = LogValue::zero();  // degenerate law concentrated at the center
    lost_bits = 0;
    return true;
  }

  const LogValue lv_S = S.to_logvalue();
  const LogValue lv_A = A.to_logvalue();

  // Rounding budget: the recurrence, term products, and both accumulators
  // contribute O(terms) correctly-rounded operations scaled by sum |t_j|;
  // pmf(j0) additionally carries ~|ln pmf(j0)| units in its last place.
  const double round_units = 8.0 * double(terms + 16) + 64.0 * (lpmf_mag + 4.0);
  const double l_round =
      lv_A.log_abs + std::log(round_units) - double(w) * kLn2;
  const double l_err = logaddexp(l_round, logaddexp(ltail_up, ltail_down));

  if (lv_S.sign != 0 &&
      l_err <= lv_S.log_abs - double(good_bits + 1) * kLn2) {
    out = lv_S;
    lost_bits = 0;
    return true;
  }
  lost_bits = lv_S.sign == 0
                  ? w
                  : std::max<long>(8, A.exponent2() - S.exponent2());
  return false;
}

double relative_gap(const LogValue& value, const LogValue& reference) {
  if (reference.sign == 0)
    return value.sign == 0 ? 0.0 : std::fabs(value.to_double());
  if (value.sign == reference.sign)
    return std::fabs(std::expm1(value.log_abs - reference.log_abs));
  return std::exp(value.log_abs - reference.log_abs) + 1.0;
}

}  // namespace

LogValue exact_binomial_moment(const BernoulliSumSpec& spec, unsigned k,
                               unsigned precision_bits) {
  validate_spec(spec);
  require(k <= kMomentOrderCap, ErrorCode::size,
          "moment order exceeds cap 500");
  require(precision_bits >= kMomentMinPrecisionBits, ErrorCode::precision,
          "precision_bits must be at least 64");
  require(precision_bits <= kMomentMaxPrecisionBits, ErrorCode::size,
          "precision_bits exceeds cap 8192");

  if (k == 0) return LogValue::from_double(1.0);
  const unsigned long m =
      spec.count == CountConvention::n ? spec.n : spec.n - 1;
  if (m == 0) return LogValue::zero();  // empty sum is identically zero
  if (spec.centered && k == 1)
    return LogValue::zero();  // first central moment vanishes identically
  if (spec.centered && k % 2 == 1 && spec.rho * 2.0 == double(spec.n))
    return LogValue::zero();  // success rate 1/2: symmetric about the mean

  const long good_bits = static_cast<long>(precision_bits) / 4;
  long w = std::max<long>(static_cast<long>(precision_bits), 128);
  for (int attempt = 0; attempt < 4; ++attempt) {
    LogValue out;
    long lost = 0;
    if (try_windowed_sum(m, spec.rho, spec.n, spec.centered, k, w, good_bits,
                         out, lost))
      return out;
    w = 2 * w + std::max<long>(lost, 0);
  }
  fail(ErrorCode::precision,
       "moment summation could not be certified at the requested accuracy");
}

GapPair lemma21_gap(unsigned long n, double rho, unsigned k,
                    unsigned precision_bits) {
  require(k >= 1, ErrorCode::domain, "moment order must be positive");
  require(double(k) * double(k) < double(n), ErrorCode::domain,
          "requires k^2 < n");
  require(std::isfinite(rho) && rho > 0.0 && double(k) * rho < double(n),
          ErrorCode::domain, "requires 0 < k*rho < n");
  require(n <= kMomentPopulationCap, ErrorCode::size,
          "population exceeds cap 10^7");

  GapPair out;
  BernoulliSumSpec raw_spec{n, rho, false, CountConvention::n};
  out.raw_gap =
      relative_gap(exact_binomial_moment(raw_spec, k, precision_bits),
                   log_bell(k, rho));
  if (k == 1) {
    out.centered_gap = 0.0;  // both sides vanish identically
    return out;
  }
  BernoulliSumSpec cen_spec{n, rho, true, CountConvention::n};
  out.centered_gap =
      relative_gap(exact_binomial_moment(cen_spec, k, precision_bits),
                   log_restricted_bell(k, rho));
  return out;
}

PmfRatioReport pmf_ratio_check(unsigned long n, double rho, unsigned k_max) {
  require(n >= 1, ErrorCode::domain, "population must be positive");
  require(n <= kMomentPopulationCap, ErrorCode::size,
          "population exceeds cap 10^7");
  require(std::isfinite(rho) && rho > 0.0 && rho <= double(n),
          ErrorCode::domain, "rho must satisfy 0 < rho <= n");
  require(double(k_max) * double(k_max) <= double(n), ErrorCode::domain,
          "requires k_max^2 <= n");

  const double l1p = std::log1p(-rho / double(n));  // -inf when rho == n
  PmfRatioReport rep;
  rep.ratio.reserve(k_max + 1);
  double falling = 0.0;  // ln [ n! / ((n-k)! n^k) ], accumulated per k
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k > 0) falling += std::log1p(-double(k - 1) / double(n));
    const double survivors =
        n == k ? 0.0 : double(n - k) * l1p;  // 0^0 = 1 at the k = n corner
    const double r = std::exp(falling + survivors + rho);
    rep.ratio.push_back(r);
    rep.max_deviation = std::max(rep.max_deviation, std::fabs(r - 1.0));
  }
  return rep;
}

double bernoulli_centered_factor(unsigned m, double theta) {
  require(m >= 1, ErrorCode::domain, "order must be positive");
  require(std::isfinite(theta) && theta > 0.0 && theta < 1.0,
          ErrorCode::domain, "theta must lie in (0, 1)");
  const double sign = m % 2 == 0 ? 1.0 : -1.0;  // -(-theta)^(m-1)
  return std::pow(1.0 - theta, double(m)) +
         sign * (1.0 - theta) * std::pow(theta, double(m - 1));
}

}  // namespace bellcord
