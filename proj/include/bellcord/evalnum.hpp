#pragma once

#include <cstdint>

#include "bellcord/exact_polynomial.hpp"
#include "bellcord/log_value.hpp"

namespace bellcord {

// Bookkeeping for a truncated series evaluation.  On success the
// certified bound is relative to the returned value and never exceeds
// the tolerance that was asked for.
struct SeriesTruncation {
  long long terms_used = 0;
  double tail_bound = 0.0;
  double requested_tol = 0.0;
};

inline constexpr unsigned kSeriesKCap = 2000;
inline constexpr unsigned kLogRestrictedKCap = 100000;

// p(x) by Horner in high-precision arithmetic (precision_bits >= 64,
// default 256), returned in the log domain.  Cancellation for negative x
// is detected and retried at doubled precision so the result carries
// relative error <= 2^-(precision_bits/2).
LogValue eval_exact_poly(const ExactPolynomial& p, double x,
                         long precision_bits = 256);

// k-th raw moment of Poisson(x) by the weighted count series
// e^-x sum_j j^k x^j / j!.  Stops once the term ratio certifies a
// geometric tail at or below tol (relative).  k <= 2000.
LogValue poisson_moment_series(unsigned k, double x, double tol,
                               SeriesTruncation* truncation = nullptr);

// k-th central moment of Poisson(x): e^-x sum_j (j-x)^k x^j / j!.
// Signs alternate below j = x, so positive and negative streams are
// summed separately and subtracted once.
LogValue centered_poisson_moment_series(unsigned k, double x, double tol,
                                        SeriesTruncation* truncation = nullptr);

// ln of the no-singleton partition polynomial value at x, valid for
// k <= 100000.  Up to the exact-table cap the row recurrence is carried
// in log-domain doubles; beyond it the centered-moment series runs in
// adaptive high precision.  Relative error on the log <= 1e-9.
LogValue log_restricted_bell(unsigned k, double x);

// The two backends of log_restricted_bell, exposed for cross-checks.
LogValue log_restricted_bell_table(unsigned k, double x);
LogValue log_restricted_bell_series(unsigned k, double x);

// ln of the full Bell polynomial value at x for k <= 100000; table
// recurrence in log-domain doubles up to the cap, raw moment series in
// the log domain beyond (all terms positive, no precision escalation
// needed).
LogValue log_bell(unsigned k, double x);

}  // namespace bellcord
