#pragma once

#include <vector>

#include "bellcord/log_value.hpp"

namespace bellcord {

// Which sum the moment describes: all n individuals, or the n-1 potential
// partners of a fixed one.  The per-trial success probability is rho/n in
// both conventions, so the two means differ by a factor (n-1)/n.
enum class CountConvention { n, n_minus_1 };
const char* count_convention_name(CountConvention c) noexcept;
CountConvention count_convention_from_name(const char* name);

// A sum of independent Bernoulli(rho/n) indicators.  `centered` selects
// moments about the mean instead of about zero.
struct BernoulliSumSpec {
  unsigned long n = 1;
  double rho = 1.0;
  bool centered = false;
  CountConvention count = CountConvention::n;
};

inline constexpr unsigned kMomentOrderCap = 500;
inline constexpr unsigned long kMomentPopulationCap = 10'000'000;
inline constexpr unsigned kMomentMinPrecisionBits = 64;
inline constexpr unsigned kMomentMaxPrecisionBits = 8192;

// E (X - c)^k for X = sum of the indicators, c = E X if centered else 0.
// Computed by high-precision pmf summation over a window around the mean,
// with a certified geometric bound on both truncated tails; the certified
// relative error is at most 2^-(precision_bits/4).  Provably-zero cases
// (k = 1 centered; odd centered moments of the symmetric rho = n/2 law)
// return an exact zero.
LogValue exact_binomial_moment(const BernoulliSumSpec& spec, unsigned k,
                               unsigned precision_bits = 256);

struct GapPair {
  double raw_gap = 0.0;       // |M_k / B_k(rho) - 1|
  double centered_gap = 0.0;  // |M~_k / B~_k(rho) - 1|
};

// Relative distance between the exact k-th moments of a sum of n
// Bernoulli(rho/n) indicators and the limiting polynomial values B_k(rho)
// (raw) and B~_k(rho) (centered).  Both gaps are O(k^2 rho^k / n) inside
// the validity window k^2 < n, k rho < n.  The k = 1 centered pair is 0/0
// (both sides vanish identically) and is reported as gap 0.
GapPair lemma21_gap(unsigned long n, double rho, unsigned k,
                    unsigned precision_bits = 256);

struct PmfRatioReport {
  std::vector<double> ratio;  // ratio[k] = P(X_n = k) / P(Poisson(rho) = k)
  double max_deviation = 0.0;  // max_k |ratio[k] - 1|
};

// Pointwise pmf comparison of Binomial(n, rho/n) against Poisson(rho) for
// k = 0..k_max.  Requires k_max^2 <= n; rho may be as large as n (the
// ratios are then far from 1, which is the point of the report).
PmfRatioReport pmf_ratio_check(unsigned long n, double rho, unsigned k_max);

// m-th central moment of a Bernoulli(theta) variable, divided by theta:
// (1-theta)^m - (-theta)^(m-1) (1-theta).  Bounded by (1+2 theta)^m.
double bernoulli_centered_factor(unsigned m, double theta);

}  // namespace bellcord
