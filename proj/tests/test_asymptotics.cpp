#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bellcord/asymptotics.hpp"
#include "bellcord/errors.hpp"
#include "bellcord/lambert.hpp"

using namespace bellcord;

TEST_CASE("regime classification") {
  CHECK(classify_regime(100, 1.0).regime == Regime::sublinear);
  CHECK(classify_regime(100, 100.0).regime == Regime::linear);
  CHECK(classify_regime(100, 5000.0).regime == Regime::superlinear);
  CHECK(classify_regime(100, 100.0).chi == doctest::Approx(1.0));
  // Boundaries are half-open: chi exactly at a cutoff is linear.
  CHECK(classify_regime(100, 5.0).regime == Regime::linear);
  CHECK(classify_regime(100, 2000.0).regime == Regime::linear);
  RegimeThresholds custom{0.5, 2.0};
  CHECK(classify_regime(100, 10.0, custom).regime == Regime::sublinear);
  CHECK(classify_regime(100, 300.0, custom).regime == Regime::superlinear);
  CHECK_THROWS_AS(classify_regime(0, 1.0), Error);
  CHECK_THROWS_AS(classify_regime(5, -1.0), Error);
}

TEST_CASE("frozen estimate values, full family") {
  AsymptoticEstimate e = estimate_bell(100, 100.0, "2.13");
  CHECK(e.log_value_per_k ==
        doctest::Approx(std::log(100.0) + 0.3303661).epsilon(1e-6));
  CHECK(e.formula_id == "2.13");
  CHECK(e.in_home_regime);

  CHECK(estimate_bell(100, 1e4, "2.14").log_value_per_k ==
        doctest::Approx(std::log(1e4)).epsilon(1e-12));
  CHECK(estimate_bell(50, 1.0, "2.9").log_value_per_k ==
        doctest::Approx(1.5479684).epsilon(1e-6));
  // Alias: "2.10" names the same evaluation as "2.13".
  CHECK(estimate_bell(77, 31.0, "2.10").log_value_per_k ==
        estimate_bell(77, 31.0, "2.13").log_value_per_k);
  CHECK(estimate_bell(77, 31.0, "2.10").formula_id == "2.13");
}

TEST_CASE("frozen estimate values, no-singleton family") {
  // u(e^u - 1) = 1 has root 0.8064659942.
  AsymptoticEstimate e = estimate_restricted_bell(100, 100.0, "2.19");
  CHECK(e.log_value_per_k == doctest::Approx(4.2537756263).epsilon(1e-9));
  CHECK(e.log_value_per_k ==
        doctest::Approx(std::log(100.0) - 0.3513945597).epsilon(1e-9));

  CHECK(estimate_restricted_bell(64, 512.0, "2.20").log_value_per_k ==
        doctest::Approx(std::log(512.0) + (std::log(64.0 / 512.0) - 1.0) / 2.0)
            .epsilon(1e-12));
  CHECK(estimate_restricted_bell(64, 512.0, "4.37").formula_id == "2.20");
  CHECK(estimate_restricted_bell(50, 1.0, "2.15").log_value_per_k ==
        estimate_bell(50, 1.0, "2.9").log_value_per_k);
}

TEST_CASE("psi/h consistency identity") {
  // At x = chi k the linear-regime estimate is exactly
  // ln(k chi) + h(u) with u e^u = 1/chi.
  for (double chi : {0.25, 1.0, 4.0}) {
    const unsigned k = 100;
    const double x = chi * k;
    const double u = solve_lambert(1.0 / chi, LambertKind::classical, 1e-14).u;
    const double want = std::log(double(k) * chi) + h_of_u(u);
    CHECK(estimate_bell(k, x, "2.13").log_value_per_k ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("superlinear gap between the families") {
  // Restricted values trail the full family by (ln(k/x) - 1)/2 in the
  // superlinear regime, by construction of the two formulas.
  for (double x : {512.0, 4096.0}) {
    const double d = estimate_restricted_bell(64, x, "2.20").log_value_per_k -
                     estimate_bell(64, x, "2.14").log_value_per_k;
    CHECK(d == doctest::Approx((std::log(64.0 / x) - 1.0) / 2.0)
                   .epsilon(1e-12));
  }
}

TEST_CASE("out-of-regime evaluation proceeds with a flag") {
  AsymptoticEstimate e = estimate_bell(100, 5000.0, "2.13");
  CHECK_FALSE(e.in_home_regime);
  CHECK(std::isfinite(e.log_value_per_k));
  CHECK(estimate_bell(100, 100.0, "2.14").in_home_regime == false);
}

TEST_CASE("comparison records") {
  ComparisonRecord rec = compare_exact_vs_asymptotic(12, 1.0, Family::bell);
  CHECK(rec.exact_log_per_k == doctest::Approx(1.2711523).epsilon(1e-6));
  CHECK(rec.exact_log_per_k ==
        doctest::Approx(std::log(4213597.0) / 12.0).epsilon(1e-10));
  CHECK(rec.regime.chi == doctest::Approx(1.0 / 12.0));
  CHECK(rec.regime.regime == Regime::linear);
  bool saw_29 = false;
  for (const auto& f : rec.formulas)
    if (f.formula_id == "2.9") {
      saw_29 = true;
      CHECK(f.abs_gap == doctest::Approx(std::fabs(f.log_value_per_k -
                                                   rec.exact_log_per_k)));
    }
  CHECK(saw_29);

  ComparisonRecord rr = compare_exact_vs_asymptotic(2, 1.0, Family::restricted);
  CHECK(rr.exact_log_per_k == doctest::Approx(0.0));
  // x >= k rules the sublinear formula out; the rest must be present.
  ComparisonRecord big = compare_exact_vs_asymptotic(64, 512.0, Family::restricted);
  for (const auto& f : big.formulas) CHECK(f.formula_id != "2.15");
  CHECK(big.formulas.size() == 3);
}

TEST_CASE("linear-regime gap shrinks with k") {
  double prev = 1e9;
  for (unsigned k : {25u, 50u, 100u, 200u}) {
    ComparisonRecord rec =
        compare_exact_vs_asymptotic(k, double(k), Family::bell);
    double gap = -1.0;
    for (const auto& f : rec.formulas)
      if (f.formula_id == "2.13") gap = f.abs_gap;
    CHECK(gap >= 0.0);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("refined saddle form beats the bare one") {
  for (unsigned k : {25u, 50u, 100u}) {
    ComparisonRecord rec =
        compare_exact_vs_asymptotic(k, double(k), Family::bell);
    double bare = -1.0, refined = -1.0;
    for (const auto& f : rec.formulas) {
      if (f.formula_id == "2.13") bare = f.abs_gap;
      if (f.formula_id == "4.20") refined = f.abs_gap;
    }
    CHECK(refined >= 0.0);
    CHECK(refined < bare);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(estimate_bell(100, 1.0, "9.99"), Error);
  CHECK_THROWS_AS(estimate_bell(100, 1.0, "2.19"), Error);  // wrong family
  CHECK_THROWS_AS(estimate_restricted_bell(100, 1.0, "2.13"), Error);
  CHECK_THROWS_AS(estimate_bell(0, 1.0, "2.13"), Error);
  CHECK_THROWS_AS(estimate_bell(100, 0.0, "2.13"), Error);
  // Sublinear form undefined at x >= k.
  CHECK_THROWS_AS(estimate_bell(50, 50.0, "2.9"), Error);
  CHECK_THROWS_AS(compare_exact_vs_asymptotic(1, 1.0, Family::restricted),
                  Error);
  CHECK(family_from_name("restricted") == Family::restricted);
  CHECK_THROWS_AS(family_from_name("wat"), Error);
}
