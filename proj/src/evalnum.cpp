#include "bellcord/evalnum.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bellcord/errors.hpp"
#include "bellcord/real.hpp"
#include "bellcord/stirling_table.hpp"

namespace bellcord {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long long kSeriesTermCap = 10'000'000;

double ln_gamma(double v) {
  int sign = 0;
  return ::lgamma_r(v, &sign);
}

void check_series_args(unsigned k, double x, double tol) {
  require(k <= kSeriesKCap, ErrorCode::size,
          "series k " + std::to_string(k) + " exceeds cap " +
              std::to_string(kSeriesKCap));
  require(std::isfinite(x) && x > 0.0, ErrorCode::domain,
          "series requires finite x > 0");
  require(std::isfinite(tol) && tol > 0.0 && tol < 1.0, ErrorCode::domain,
          "series tolerance must lie in (0, 1)");
}

// Log-domain triangle rows for the classical or restricted recurrence.
// Returns ln of row max_k entries; zeros are -inf.  The restricted
// recurrence consumes two previous rows, the classical one.
std::vector<double> log_row(TableKind kind, unsigned max_k) {
  std::vector<double> prev2, prev{0.0};  // row 0 = [ln 1]
  if (max_k == 0) return prev;
  for (unsigned k = 0; k < max_k; ++k) {
    std::vector<double> next(k + 2, kNegInf);
    if (kind == TableKind::classical) {
      for (unsigned r = 0; r <= k; ++r) {
        if (prev[r] == kNegInf) continue;
        if (r > 0) next[r] = logaddexp(next[r], std::log(double(r)) + prev[r]);
        next[r + 1] = logaddexp(next[r + 1], prev[r]);
      }
    } else {
      for (unsigned r = 0; r <= k; ++r) {
        if (r > 0 && prev[r] != kNegInf)
          next[r] = logaddexp(next[r], std::log(double(r)) + prev[r]);
      }
      if (k >= 1) {
        for (unsigned r = 0; r + 1 <= k; ++r) {
          if (r < prev2.size() && prev2[r] != kNegInf)
            next[r + 1] =
                logaddexp(next[r + 1], std::log(double(k)) + prev2[r]);
        }
      }
    }
    prev2 = std::move(prev);
    prev = std::move(next);
  }
  return prev;
}

LogValue log_row_value(const std::vector<double>& row, double x) {
  const double lx = std::log(x);
  double acc = kNegInf;
  for (size_t r = 0; r < row.size(); ++r) {
    if (row[r] == kNegInf) continue;
    acc = logaddexp(acc, row[r] + double(r) * lx);
  }
  if (acc == kNegInf) return LogValue::zero();
  return LogValue{1, acc};
}

}  // namespace

LogValue eval_exact_poly(const ExactPolynomial& p, double x,
                         long precision_bits) {
  require(precision_bits >= 64 && precision_bits <= (1 << 20),
          ErrorCode::precision, "precision_bits must lie in [64, 2^20]");
  require(std::isfinite(x), ErrorCode::domain,
          "polynomial evaluation point must be finite");
  if (p.is_zero()) return LogValue::zero();
  const auto& cs = p.coeffs();
  long work = precision_bits + 32;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Real acc(work), xv(work), c(work);
    xv.set(x);
    long max_e = LONG_MIN;
    for (size_t j = cs.size(); j-- > 0;) {
      acc *= xv;
      c.set(cs[j]);
      acc += c;
      if (!acc.is_zero()) max_e = std::max(max_e, acc.exponent2());
    }
    if (acc.is_zero()) return LogValue::zero();
    // Bits destroyed by cancellation; retry wider until the surviving
    // precision honors the 2^-(precision_bits/2) contract.
    const long lost = max_e - acc.exponent2();
    if (work - lost >= precision_bits / 2 + 8) return acc.to_logvalue();
    work = 2 * work + lost;
  }
  fail(ErrorCode::precision,
       "polynomial evaluation lost too many bits to cancellation");
}

LogValue poisson_moment_series(unsigned k, double x, double tol,
                               SeriesTruncation* truncation) {
  check_series_args(k, x, tol);
  const double lx = std::log(x);
  const double ltol = std::log(tol);
  double sum_ln = kNegInf;
  long long terms = 0;
  for (long long j = (k == 0) ? 0 : 1; j <= kSeriesTermCap; ++j) {
    const double ln_t =
        (j == 0) ? -x
                 : k * std::log(double(j)) + double(j) * lx -
                       ln_gamma(double(j) + 1.0) - x;
    sum_ln = logaddexp(sum_ln, ln_t);
    ++terms;
    if (j >= 1) {
      // Term ratio t_{j+1}/t_j = (1+1/j)^k * x/(j+1), strictly
      // decreasing in j, so once it drops under 1/2 the remaining tail
      // is geometrically dominated.
      const double ln_r =
          k * std::log1p(1.0 / double(j)) + lx - std::log(double(j) + 1.0);
      if (ln_r <= -M_LN2) {
        const double ln_tail =
            ln_t + ln_r - std::log1p(-std::exp(ln_r));
        if (ln_tail <= ltol + sum_ln) {
          if (truncation)
            *truncation = {terms, std::exp(ln_tail - sum_ln), tol};
          return LogValue{1, sum_ln};
        }
      }
    }
  }
  fail(ErrorCode::no_converge,
       "moment series failed to certify its tail within the term cap");
}

LogValue centered_poisson_moment_series(unsigned k, double x, double tol,
                                        SeriesTruncation* truncation) {
  check_series_args(k, x, tol);
  const double lx = std::log(x);
  const double ltol = std::log(tol);
  double pos_ln = kNegInf, neg_ln = kNegInf;
  long long terms = 0;
  for (long long j = 0; j <= kSeriesTermCap; ++j) {
    const double d = double(j) - x;
    double ln_t = kNegInf;
    if (d != 0.0) {
      ln_t = k * std::log(std::fabs(d)) + double(j) * lx -
             ln_gamma(double(j) + 1.0) - x;
      const bool negative = d < 0.0 && (k % 2 == 1);
      if (negative)
        neg_ln = logaddexp(neg_ln, ln_t);
      else
        pos_ln = logaddexp(pos_ln, ln_t);
      ++terms;
    } else if (k == 0) {
      // (j-x)^0 = 1 at the lattice hit, leaving the bare pmf term.
      pos_ln = logaddexp(
          pos_ln, double(j) * lx - ln_gamma(double(j) + 1.0) - x);
      ++terms;
    }
    if (d > 0.0) {
      const double ln_r =
          k * std::log1p(1.0 / d) + lx - std::log(double(j) + 1.0);
      if (ln_r <= -M_LN2) {
        const double ln_tail = ln_t + ln_r - std::log1p(-std::exp(ln_r));
        const LogValue res =
            LogValue{pos_ln == kNegInf ? 0 : 1, pos_ln} -
            LogValue{neg_ln == kNegInf ? 0 : 1, neg_ln};
        if (!res.is_zero() && ln_tail <= ltol + res.log_abs) {
          if (truncation)
            *truncation = {terms, std::exp(ln_tail - res.log_abs), tol};
          return res;
        }
        // Streams cancelled exactly in double-log arithmetic; once the
        // tail is negligible against them the value is zero to full
        // working precision.
        if (res.is_zero() &&
            ln_tail <= std::max(pos_ln, neg_ln) - 60.0) {
          if (truncation) *truncation = {terms, 0.0, tol};
          return LogValue::zero();
        }
      }
    }
  }
  fail(ErrorCode::no_converge,
       "centered moment series failed to certify its tail within the cap");
}

LogValue log_restricted_bell_table(unsigned k, double x) {
  require(k >= 1, ErrorCode::domain, "k must be positive");
  require(k <= kExactTableCap, ErrorCode::size,
          "table path limited to k <= " + std::to_string(kExactTableCap));
  require(std::isfinite(x) && x > 0.0, ErrorCode::domain, "x must be > 0");
  return log_row_value(log_row(TableKind::restricted, k), x);
}

LogValue log_restricted_bell_series(unsigned k, double x) {
  require(k >= 1, ErrorCode::domain, "k must be positive");
  require(k <= kLogRestrictedKCap, ErrorCode::size,
          "series path limited to k <= " + std::to_string(kLogRestrictedKCap));
  require(std::isfinite(x) && x > 0.0, ErrorCode::domain, "x must be > 0");
  if (k == 1) return LogValue::zero();  // first central moment
  const double lx = std::log(x);
  long prec = 512;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Real xv(prec), pmf(prec), tmp(prec), pos(prec), neg(prec);
    xv.set(x);
    tmp.set(x);
    tmp.negate();
    pmf = Real::exp(tmp);  // e^-x = pmf at j = 0
    long pos_e = LONG_MIN, neg_e = LONG_MIN;
    double max_ln = kNegInf;
    bool done = false;
    long long j = 0;
    for (; j <= kSeriesTermCap && !done; ++j) {
      const double d = double(j) - x;
      double ln_t = kNegInf;
      if (d != 0.0) {
        tmp.set(long(j));
        tmp -= xv;
        tmp = Real::abs(tmp);
        tmp = Real::pow_ui(tmp, k);
        tmp *= pmf;
        const bool negative = d < 0.0 && (k % 2 == 1);
        if (negative) {
          neg += tmp;
          if (!neg.is_zero()) neg_e = std::max(neg_e, neg.exponent2());
        } else {
          pos += tmp;
          if (!pos.is_zero()) pos_e = std::max(pos_e, pos.exponent2());
        }
        ln_t = k * std::log(std::fabs(d)) + double(j) * lx -
               ln_gamma(double(j) + 1.0) - x;
        max_ln = std::max(max_ln, ln_t);
      }
      pmf *= xv;
      pmf /= static_cast<unsigned long>(j + 1);
      if (d > 1.0) {
        const double ln_r =
            k * std::log1p(1.0 / d) + lx - std::log(double(j) + 1.0);
        if (ln_r <= -M_LN2) {
          const double ln_tail = ln_t + ln_r - std::log1p(-std::exp(ln_r));
          if (ln_tail <= max_ln - 40.0) {
            Real res = pos - neg;
            if (!res.is_zero() &&
                ln_tail <= double(res.exponent2()) * M_LN2 - 50.0)
              done = true;
          }
        }
      }
    }
    require(done, ErrorCode::no_converge,
            "centered series did not certify its tail within the term cap");
    Real res = pos - neg;
    if (res.is_zero()) return LogValue::zero();
    const long lost = std::max(pos_e, neg_e) - res.exponent2();
    if (prec - lost >= 80) return res.to_logvalue();
    prec = 2 * prec + std::max(lost, 0L);
  }
  fail(ErrorCode::precision,
       "centered series lost too many bits to cancellation");
}

LogValue log_restricted_bell(unsigned k, double x) {
  require(k >= 1, ErrorCode::domain, "k must be positive");
  require(k <= kLogRestrictedKCap, ErrorCode::size,
          "log_restricted_bell limited to k <= " +
              std::to_string(kLogRestrictedKCap));
  require(std::isfinite(x) && x > 0.0, ErrorCode::domain, "x must be > 0");
  if (k <= kExactTableCap) return log_restricted_bell_table(k, x);
  return log_restricted_bell_series(k, x);
}

LogValue log_bell(unsigned k, double x) {
  require(k <= kLogRestrictedKCap, ErrorCode::size,
          "log_bell limited to k <= " + std::to_string(kLogRestrictedKCap));
  require(std::isfinite(x) && x > 0.0, ErrorCode::domain, "x must be > 0");
  if (k <= kExactTableCap)
    return log_row_value(log_row(TableKind::classical, k), x);
  // Raw moment series in log-domain doubles; every term is positive so
  // no cancellation and double logs carry ample relative accuracy.
  const double lx = std::log(x);
  double sum_ln = kNegInf;
  for (long long j = 1; j <= kSeriesTermCap; ++j) {
    const double ln_t =
        k * std::log(double(j)) + double(j) * lx - ln_gamma(double(j) + 1.0) -
        x;
    sum_ln = logaddexp(sum_ln, ln_t);
    const double ln_r =
        k * std::log1p(1.0 / double(j)) + lx - std::log(double(j) + 1.0);
    if (ln_r <= -M_LN2) {
      const double ln_tail = ln_t + ln_r - std::log1p(-std::exp(ln_r));
      if (ln_tail <= sum_ln - 46.0) return LogValue{1, sum_ln};
    }
  }
  fail(ErrorCode::no_converge,
       "raw moment series did not certify its tail within the term cap");
}

}  // namespace bellcord
