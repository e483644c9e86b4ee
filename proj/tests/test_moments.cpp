#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <cmath>
#include <vector>

#include "bellcord/errors.hpp"
#include "bellcord/moments.hpp"

using namespace bellcord;

namespace {

// Independent oracle: the full pmf summation in exact rationals, feasible
// for small populations.  Shares no code with the library path.
mpq_class oracle_moment(unsigned long n, double rho, bool centered,
                        CountConvention count, unsigned k) {
  const unsigned long m = count == CountConvention::n ? n : n - 1;
  const mpq_class p = mpq_class(rho) / mpq_class(static_cast<long>(n));
  const mpq_class q = 1 - p;
  mpq_class c = 0;
  if (centered) c = mpq_class(static_cast<long>(m)) * p;
  mpq_class total = 0;
  for (unsigned long j = 0; j <= m; ++j) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), m, j);
    mpq_class pj = 1, qj = 1, wj = 1;
    for (unsigned long i = 0; i < j; ++i) pj *= p;
    for (unsigned long i = 0; i < m - j; ++i) qj *= q;
    const mpq_class d = mpq_class(static_cast<long>(j)) - c;
    for (unsigned i = 0; i < k; ++i) wj *= d;
    total += wj * mpq_class(binom) * pj * qj;
  }
  return total;
}

void check_against(const LogValue& got, const mpq_class& want, double tol) {
  const int ws = sgn(want);
  REQUIRE(got.sign == ws);
  if (ws == 0) return;
  const double lw = std::log(std::fabs(want.get_d()));
  CHECK(got.log_abs == doctest::Approx(lw).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_CASE("closed-form moment examples") {
  BernoulliSumSpec mean{10, 2.0, false, CountConvention::n};
  CHECK(exact_binomial_moment(mean, 1).to_double() ==
        doctest::Approx(2.0).epsilon(1e-14));
  BernoulliSumSpec var{10, 2.0, true, CountConvention::n};
  CHECK(exact_binomial_moment(var, 2).to_double() ==
        doctest::Approx(1.6).epsilon(1e-14));
  // Partner-count convention drops one summand: mean (n-1) rho / n.
  BernoulliSumSpec partner{10, 2.0, false, CountConvention::n_minus_1};
  CHECK(exact_binomial_moment(partner, 1).to_double() ==
        doctest::Approx(1.8).epsilon(1e-14));
  // Order zero is the total probability mass.
  CHECK(exact_binomial_moment(mean, 0).to_double() == 1.0);
}

TEST_CASE("identically-zero cases return exact zeros") {
  BernoulliSumSpec c1{1000, 3.0, true, CountConvention::n};
  CHECK(exact_binomial_moment(c1, 1).sign == 0);
  // n = 1 with the partner convention is an empty sum.
  BernoulliSumSpec empty{1, 0.5, false, CountConvention::n_minus_1};
  CHECK(exact_binomial_moment(empty, 3).sign == 0);
  // Success rate exactly 1/2: the law is symmetric about its mean, so odd
  // central moments vanish.
  BernoulliSumSpec sym{1000000, 500000.0, true, CountConvention::n};
  CHECK(exact_binomial_moment(sym, 3).sign == 0);
  CHECK(exact_binomial_moment(sym, 5).sign == 0);
}

TEST_CASE("exact-rational oracle agreement") {
  for (unsigned long n : {7ul, 23ul, 60ul})
    for (double rho : {0.5, 2.5, 6.25})
      for (bool centered : {false, true})
        for (CountConvention count :
             {CountConvention::n, CountConvention::n_minus_1})
          for (unsigned k = 1; k <= 8; ++k) {
            CAPTURE(n);
            CAPTURE(rho);
            CAPTURE(centered);
            CAPTURE(k);
            BernoulliSumSpec spec{n, rho, centered, count};
            check_against(exact_binomial_moment(spec, k),
                          oracle_moment(n, rho, centered, count, k), 1e-12);
          }
}

TEST_CASE("third central moment closed form") {
  // Independent summands: the third central moment is the sum of the n
  // per-summand third cumulants, rho (1 - rho/n) (1 - 2 rho/n).
  for (unsigned long n : {1000ul, 100000ul}) {
    for (double rho : {2.0, 5.0}) {
      BernoulliSumSpec spec{n, rho, true, CountConvention::n};
      const double want = rho * (1.0 - rho / double(n)) *
                          (1.0 - 2.0 * rho / double(n));
      CHECK(exact_binomial_moment(spec, 3).to_double() ==
            doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("wide-distribution moments at large n") {
  // Success rate 1/2 at n = 10^6 exercises the widest pmf window.
  const unsigned long n = 1000000;
  const double mpq_prod = 0.25 * double(n);  // m p q
  BernoulliSumSpec spec{n, 500000.0, true, CountConvention::n};
  CHECK(exact_binomial_moment(spec, 2).to_double() ==
        doctest::Approx(mpq_prod).epsilon(1e-12));
  // Fourth central moment of a binomial: m p q (1 + 3 (m-2) p q).
  const double want4 = mpq_prod * (1.0 + 3.0 * double(n - 2) * 0.25);
  CHECK(exact_binomial_moment(spec, 4).to_double() ==
        doctest::Approx(want4).epsilon(1e-12));
  // Narrow window at the population cap.
  BernoulliSumSpec tall{10000000, 3.0, true, CountConvention::n};
  const double want2 = 3.0 * (1.0 - 3.0 / 1e7);
  CHECK(exact_binomial_moment(tall, 2).to_double() ==
        doctest::Approx(want2).epsilon(1e-12));
}

TEST_CASE("polynomial-limit gaps") {
  // k = 1: both raw sides equal rho exactly; the centered pair is 0 vs 0.
  GapPair g1 = lemma21_gap(10000, 3.0, 1);
  CHECK(g1.raw_gap <= 1e-15);
  CHECK(g1.centered_gap == 0.0);

  // Closed forms at k = 2: variance rho (1 - rho/n) against rho, and raw
  // second moment rho (1 - rho/n) + rho^2 against rho + rho^2.
  GapPair g2 = lemma21_gap(1000, 2.0, 2);
  CHECK(g2.centered_gap == doctest::Approx(0.002).epsilon(1e-10));
  CHECK(g2.raw_gap == doctest::Approx(0.002 * 2.0 / 6.0).epsilon(1e-9));

  // Both gaps fall as n grows at fixed k, rho.
  GapPair prev{1e9, 1e9};
  for (unsigned long n : {100ul, 1000ul, 10000ul}) {
    GapPair g = lemma21_gap(n, 3.0, 6);
    CHECK(g.raw_gap > 0.0);
    CHECK(g.raw_gap < prev.raw_gap);
    CHECK(g.centered_gap > 0.0);
    CHECK(g.centered_gap < prev.centered_gap);
    prev = g;
  }

  // O(1/n) scaling: doubling n roughly halves the raw gap.
  const double a = lemma21_gap(1024, 3.0, 6).raw_gap;
  const double b = lemma21_gap(2048, 3.0, 6).raw_gap;
  const double c = lemma21_gap(4096, 3.0, 6).raw_gap;
  CHECK(b / a > 0.35);
  CHECK(b / a < 0.65);
  CHECK(c / b > 0.35);
  CHECK(c / b < 0.65);
}

TEST_CASE("pmf ratio report") {
  PmfRatioReport rep = pmf_ratio_check(1000000, 2.0, 10);
  REQUIRE(rep.ratio.size() == 11);
  CHECK(rep.max_deviation > 0.0);
  CHECK(rep.max_deviation < 5e-4);
  for (double r : rep.ratio) CHECK(r == doctest::Approx(1.0).epsilon(5e-4));

  // k = 0 closed form: both pmfs at zero.
  PmfRatioReport small = pmf_ratio_check(100, 3.0, 5);
  CHECK(small.ratio[0] ==
        doctest::Approx(std::pow(0.97, 100.0) * std::exp(3.0))
            .epsilon(1e-12));

  // rho = n: the sum is deterministic, every small-k ratio collapses to 0.
  PmfRatioReport det = pmf_ratio_check(10, 10.0, 3);
  for (double r : det.ratio) CHECK(r == 0.0);
  CHECK(det.max_deviation == 1.0);

  // n = 1, rho = 1: P(X = 1) = 1 against Poisson(1) at 1.
  PmfRatioReport one = pmf_ratio_check(1, 1.0, 1);
  CHECK(one.ratio[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("centered Bernoulli factor") {
  CHECK(bernoulli_centered_factor(1, 0.3) == doctest::Approx(0.0));
  CHECK(bernoulli_centered_factor(2, 0.3) == doctest::Approx(0.7));
  CHECK(bernoulli_centered_factor(3, 0.25) ==
        doctest::Approx(0.75 * 0.5).epsilon(1e-14));
  for (unsigned m = 1; m <= 20; ++m) {
    for (double theta : {0.001, 0.01, 0.1}) {
      CAPTURE(m);
      CAPTURE(theta);
      const double qm = bernoulli_centered_factor(m, theta);
      CHECK(qm <= std::pow(1.0 + 2.0 * theta, double(m)));
      // Cross-check against the defining expectation E(a - theta)^m / theta
      // for a ~ Bernoulli(theta).
      const double direct =
          (theta * std::pow(1.0 - theta, double(m)) +
           (1.0 - theta) * std::pow(-theta, double(m))) /
          theta;
      CHECK(qm == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("argument validation") {
  BernoulliSumSpec ok{100, 2.0, false, CountConvention::n};
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  CHECK(code_of([&] { exact_binomial_moment(ok, 501); }) == ErrorCode::size);
  CHECK(code_of([&] { exact_binomial_moment(ok, 2, 32); }) ==
        ErrorCode::precision);
  CHECK(code_of([&] { exact_binomial_moment(ok, 2, 1 << 20); }) ==
        ErrorCode::size);
  BernoulliSumSpec big{20000000, 2.0, false, CountConvention::n};
  CHECK(code_of([&] { exact_binomial_moment(big, 2); }) == ErrorCode::size);
  BernoulliSumSpec bad_rho{100, 100.0, false, CountConvention::n};
  CHECK(code_of([&] { exact_binomial_moment(bad_rho, 2); }) ==
        ErrorCode::domain);
  CHECK(code_of([&] { lemma21_gap(100, 2.0, 10); }) == ErrorCode::domain);
  CHECK(code_of([&] { lemma21_gap(100, 60.0, 2); }) == ErrorCode::domain);
  CHECK(code_of([&] { pmf_ratio_check(100, 2.0, 11); }) == ErrorCode::domain);
  CHECK(code_of([&] { bernoulli_centered_factor(0, 0.1); }) ==
        ErrorCode::domain);
  CHECK(code_of([&] { bernoulli_centered_factor(3, 1.0); }) ==
        ErrorCode::domain);
  CHECK(count_convention_from_name("n_minus_1") ==
        CountConvention::n_minus_1);
  CHECK(code_of([&] { count_convention_from_name("m"); }) ==
        ErrorCode::invalid);
}

TEST_CASE("repeat calls are bit-identical") {
  BernoulliSumSpec spec{4096, 3.0, true, CountConvention::n};
  const LogValue a = exact_binomial_moment(spec, 6);
  const LogValue b = exact_binomial_moment(spec, 6);
  CHECK(a.sign == b.sign);
  CHECK(a.log_abs == b.log_abs);
}
