#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "bellcord/errors.hpp"
#include "bellcord/evalnum.hpp"
#include "bellcord/rng.hpp"
#include "bellcord/tailsim.hpp"

using namespace bellcord;

TEST_CASE("moment bound closed forms") {
  // Chebyshev at unit variance: B~_2(1)/s^2.
  TailBoundQuery q;
  q.n = 100;
  q.rho = 1.0;
  q.s = 10.0;
  q.strategy = KStrategy::fixed_k;
  q.fixed_k = 1;
  TailBoundResult r = markov_bound(q);
  CHECK(r.k == 1);
  CHECK(r.value.to_double() == doctest::Approx(0.01).epsilon(1e-12));

  // The union version adds exactly ln n in the log domain.
  TailBoundQuery qu = q;
  qu.union_bound = true;
  CHECK(markov_bound(qu).value.log_abs ==
        r.value.log_abs + std::log(100.0));

  // Exponent multiplier m: fixed k=2, m=3 evaluates order 12.
  TailBoundQuery qm = q;
  qm.fixed_k = 2;
  qm.multiplier = 3;
  const LogValue b12 = log_restricted_bell(12, 1.0);
  CHECK(markov_bound(qm).value.log_abs ==
        doctest::Approx(b12.log_abs - 12.0 * std::log(10.0)).epsilon(1e-14));
}

TEST_CASE("bound at the reference experiment scale") {
  const double rho = 2.0 * std::log(1e5);
  const double s_rel = 1.5 * 0.4780102215;
  TailBoundQuery q;
  q.n = 100000;
  q.rho = rho;
  q.s = s_rel * rho;
  q.strategy = KStrategy::floor_log_n;
  TailBoundResult r = markov_bound(q);
  CHECK(r.k == 11);
  CHECK(r.value.to_double() < 1.0);
  CHECK(r.value.to_double() > 0.0);

  // Decays as n grows along the same schedule.
  TailBoundQuery q4;
  q4.n = 10000;
  q4.rho = 2.0 * std::log(1e4);
  q4.s = s_rel * q4.rho;
  q4.strategy = KStrategy::floor_log_n;
  CHECK(markov_bound(q4).value.to_double() > r.value.to_double());

  // Cross-check against the centered series path: same moment value
  // reached through an unrelated evaluation route.
  const LogValue m22 = centered_poisson_moment_series(22, rho, 1e-13);
  const double direct = m22.log_abs - 22.0 * std::log(q.s);
  CHECK(r.value.log_abs == doctest::Approx(direct).epsilon(1e-9));

  // Optimizing over k can only improve on the floor-log-n choice.
  TailBoundQuery qo = q;
  qo.strategy = KStrategy::optimize_over_k;
  TailBoundResult ro = markov_bound(qo);
  CHECK(ro.value.log_abs <= r.value.log_abs);
  CHECK(ro.k >= 1);
}

TEST_CASE("exact-moment bound variant") {
  TailBoundQuery q;
  q.n = 1000;
  q.rho = 1.0;
  q.s = 10.0;
  q.strategy = KStrategy::fixed_k;
  q.fixed_k = 1;
  const double p = 1.0 / 1000.0;
  const double var = 999.0 * p * (1.0 - p);
  TailBoundResult r = markov_bound_exact(q, CountConvention::n_minus_1);
  CHECK(r.value.to_double() == doctest::Approx(var / 100.0).epsilon(1e-12));
  // The polynomial-limit version is close but not identical.
  const double approx = markov_bound(q).value.to_double();
  CHECK(r.value.to_double() != approx);
  CHECK(r.value.to_double() == doctest::Approx(approx).epsilon(5e-3));
}

TEST_CASE("edge pair mapping") {
  // Exhaustive for n = 5: the ten indices enumerate the ten pairs in order.
  const std::vector<std::pair<unsigned long, unsigned long>> want = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
      {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  for (unsigned long long idx = 0; idx < 10; ++idx) {
    unsigned long i = 0, j = 0;
    edge_pair_of_index(idx, 5, i, j);
    CHECK(i == want[idx].first);
    CHECK(j == want[idx].second);
  }
  // Corners at the population cap.
  const unsigned long n = 10000000;
  const unsigned long long total =
      static_cast<unsigned long long>(n) * (n - 1) / 2;
  unsigned long i = 0, j = 0;
  edge_pair_of_index(0, n, i, j);
  CHECK(i == 0);
  CHECK(j == 1);
  edge_pair_of_index(total - 1, n, i, j);
  CHECK(i == n - 2);
  CHECK(j == n - 1);
  // Round trip on random indices.
  std::mt19937_64 rng(0x5eed);
  for (int t = 0; t < 1000; ++t) {
    const unsigned long long idx = rng() % total;
    edge_pair_of_index(idx, n, i, j);
    REQUIRE(i < j);
    REQUIRE(j < n);
    const unsigned long long off =
        static_cast<unsigned long long>(i) * (2ull * n - i - 1) / 2;
    CHECK(off + (j - i - 1) == idx);
  }
}

TEST_CASE("single-vertex sampler distribution") {
  // n = 2: the degree is a single Bernoulli(1/2) indicator.
  unsigned long ones = 0;
  const unsigned long trials = 40000;
  for (unsigned long t = 0; t < trials; ++t)
    ones += sample_measure_once(Measure::single_vertex, 2, 1.0, 7u, t);
  CHECK(double(ones) / double(trials) ==
        doctest::Approx(0.5).epsilon(0.025));

  // Mean within 4 sigma / sqrt(trials) of (n-1) rho / n.
  const unsigned long n = 1000;
  const double rho = 3.0;
  const double p = rho / double(n);
  double sum = 0.0;
  const unsigned long trials2 = 20000;
  for (unsigned long t = 0; t < trials2; ++t)
    sum += double(sample_measure_once(Measure::single_vertex, n, rho, 11u, t));
  const double mean = sum / double(trials2);
  const double sigma = std::sqrt(double(n - 1) * p * (1.0 - p));
  CHECK(std::fabs(mean - double(n - 1) * p) <=
        4.0 * sigma / std::sqrt(double(trials2)));
}

TEST_CASE("vanishing-rho max-degree experiment") {
  ExperimentConfig cfg;
  cfg.n_values = {100};
  cfg.rho_rule = RhoRule::fixed;
  cfg.rho_value = 1e-9;
  cfg.trials = 10;
  cfg.seed = 3;
  cfg.thresholds = {1.0, 1.5};
  cfg.measure = Measure::max_degree;
  ExperimentResult res = sample_degree_experiment(cfg);
  REQUIRE(res.rows.size() == 2);
  // Empty graph: every deviation is |0/rho - 1| = 1 exactly.
  CHECK(res.rows[0].count == 10);
  CHECK(res.rows[1].count == 0);
  CHECK(res.deviations[0].qmax == 1.0);
}

TEST_CASE("survival counts are monotone in the threshold") {
  ExperimentConfig cfg;
  cfg.n_values = {500};
  cfg.rho_rule = RhoRule::fixed;
  cfg.rho_value = 5.0;
  cfg.trials = 2000;
  cfg.seed = 99;
  cfg.thresholds = {0.2, 0.5, 1.0};
  cfg.measure = Measure::single_vertex;
  ExperimentResult res = sample_degree_experiment(cfg);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].count >= res.rows[1].count);
  CHECK(res.rows[1].count >= res.rows[2].count);
  for (const ExperimentRow& row : res.rows) {
    CHECK(row.empirical_frequency ==
          double(row.count) / double(row.trials));
    CHECK(row.bound_value.sign == 1);
    // The embedded bound is exactly the floor-log-n query.
    TailBoundQuery q;
    q.n = row.n;
    q.rho = row.rho;
    q.s = row.threshold * row.rho;
    q.strategy = KStrategy::floor_log_n;
    CHECK(row.bound_value.log_abs == markov_bound(q).value.log_abs);
    CHECK(row.seed == cfg.seed);
  }
  REQUIRE(res.deviations.size() == 1);
  CHECK(res.deviations[0].q50 <= res.deviations[0].q90);
  CHECK(res.deviations[0].q90 <= res.deviations[0].q99);
  CHECK(res.deviations[0].q99 <= res.deviations[0].qmax);
}

TEST_CASE("worker count does not affect results") {
  ExperimentConfig cfg;
  cfg.n_values = {300};
  cfg.rho_rule = RhoRule::fixed;
  cfg.rho_value = 4.0;
  cfg.trials = 60;
  cfg.seed = 123456789;
  cfg.thresholds = {0.5};
  cfg.measure = Measure::max_degree;
  ExperimentResult a = sample_degree_experiment(cfg, 1);
  ExperimentResult b = sample_degree_experiment(cfg, 3);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].count == b.rows[i].count);
    CHECK(a.rows[i].empirical_frequency == b.rows[i].empirical_frequency);
  }
  CHECK(a.deviations[0].q50 == b.deviations[0].q50);
  CHECK(a.deviations[0].qmax == b.deviations[0].qmax);
}

TEST_CASE("work budget refusal") {
  ExperimentConfig cfg;
  cfg.n_values = {1000000};
  cfg.rho_rule = RhoRule::fixed;
  cfg.rho_value = 100.0;
  cfg.trials = 1000000;
  cfg.thresholds = {0.5};
  cfg.measure = Measure::max_degree;
  try {
    sample_degree_experiment(cfg);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget);
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig cfg;
  cfg.n_values = {1000, 10000};
  cfg.rho_rule = RhoRule::chi_log_n;
  cfg.rho_value = 2.0;
  cfg.trials = 5000;
  cfg.seed = 20260822;
  cfg.thresholds = {0.52581, 0.71702, 0.95602};
  cfg.measure = Measure::single_vertex;
  const std::string text = experiment_config_to_json(cfg);
  ExperimentConfig back = experiment_config_from_json(text);
  CHECK(experiment_config_to_json(back) == text);
  CHECK(back.n_values == cfg.n_values);
  CHECK(back.rho_rule == cfg.rho_rule);
  CHECK(back.seed == cfg.seed);
  CHECK(back.thresholds == cfg.thresholds);

  auto code_of = [](const std::string& s) {
    try {
      experiment_config_from_json(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  CHECK(code_of("not json") == ErrorCode::invalid);
  CHECK(code_of("{}") == ErrorCode::invalid);  // missing fields
  CHECK(code_of(R"({"n_values":[10],"rho_rule":{"kind":"fixed","value":1},)"
                R"("trials":1,"seed":1,"thresholds":[0.5],)"
                R"("measure":"single_vertex","surprise":1})") ==
        ErrorCode::invalid);  // unknown field
  CHECK(code_of(R"({"n_values":[10],"rho_rule":{"kind":"wat","value":1},)"
                R"("trials":1,"seed":1,"thresholds":[0.5],)"
                R"("measure":"single_vertex"})") == ErrorCode::invalid);
}

TEST_CASE("verdict report") {
  ExperimentConfig cfg;
  cfg.n_values = {500, 1000};
  cfg.rho_rule = RhoRule::chi_log_n;
  cfg.rho_value = 2.0;
  cfg.trials = 500;
  cfg.seed = 42;
  cfg.thresholds = {0.3, 0.9};
  cfg.measure = Measure::single_vertex;
  ExperimentResult res = sample_degree_experiment(cfg);
  VerdictReport rep = theorem_verdict(cfg, res);
  REQUIRE(rep.rows.size() == 4);
  // u(e^u - 1) = 1/2 has e^{h~(u)} = 0.4780102215.
  CHECK(rep.critical_threshold ==
        doctest::Approx(0.4780102215).epsilon(1e-8));
  CHECK_FALSE(rep.rows[0].in_theorem_scope);  // 0.3 below critical
  CHECK(rep.rows[0].note == "outside theorem scope");
  CHECK(rep.rows[1].in_theorem_scope);  // 0.9 above critical
  for (const VerdictRow& v : rep.rows) CHECK(v.bound_respected);

  // Growing-chi schedule exposes sqrt(chi_n)-scaled quantiles.
  ExperimentConfig grow = cfg;
  grow.rho_rule = RhoRule::chi_n_log_n;
  grow.rho_value = 1.0;
  ExperimentResult res2 = sample_degree_experiment(grow);
  VerdictReport rep2 = theorem_verdict(grow, res2);
  REQUIRE(rep2.scaled_deviations.size() == 2);
  const double chi0 = std::log(500.0);
  CHECK(rep2.scaled_deviations[0].q99 ==
        doctest::Approx(res2.deviations[0].q99 * std::sqrt(chi0)));
  for (const VerdictRow& v : rep2.rows) CHECK(v.in_theorem_scope);

  // Fixed-rho runs carry no asymptotic schedule.
  ExperimentConfig fixed = cfg;
  fixed.rho_rule = RhoRule::fixed;
  fixed.rho_value = 5.0;
  ExperimentResult res3 = sample_degree_experiment(fixed);
  VerdictReport rep3 = theorem_verdict(fixed, res3);
  CHECK_FALSE(rep3.rows[0].in_theorem_scope);
  CHECK(rep3.rows[0].note.find("bound comparison") != std::string::npos);

  // Mismatched results are rejected.
  res.rows[0].n = 777;
  CHECK_THROWS_AS(theorem_verdict(cfg, res), Error);
}

TEST_CASE("stream addressing") {
  Xoshiro256pp a = Xoshiro256pp::for_stream(5, 17);
  Xoshiro256pp b = Xoshiro256pp::for_stream(5, 17);
  for (int i = 0; i < 5; ++i) CHECK(a.next() == b.next());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t t = 0; t < 8; ++t)
    firsts.insert(Xoshiro256pp::for_stream(5, t).next());
  CHECK(firsts.size() == 8);
  const double u = Xoshiro256pp::for_stream(5, 0).next_unit();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}

TEST_CASE("experiment validation") {
  ExperimentConfig cfg;
  cfg.n_values = {100};
  cfg.rho_rule = RhoRule::fixed;
  cfg.rho_value = 2.0;
  cfg.trials = 10;
  cfg.thresholds = {0.5};
  auto code_of = [](ExperimentConfig c) {
    try {
      sample_degree_experiment(c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  {
    ExperimentConfig c = cfg;
    c.n_values = {};
    CHECK(code_of(c) == ErrorCode::invalid);
  }
  {
    ExperimentConfig c = cfg;
    c.n_values = {1};
    CHECK(code_of(c) == ErrorCode::domain);
  }
  {
    ExperimentConfig c = cfg;
    c.rho_value = 200.0;  // rho >= n
    CHECK(code_of(c) == ErrorCode::domain);
  }
  {
    ExperimentConfig c = cfg;
    c.trials = 0;
    CHECK(code_of(c) == ErrorCode::domain);
  }
  {
    ExperimentConfig c = cfg;
    c.thresholds = {-0.5};
    CHECK(code_of(c) == ErrorCode::domain);
  }
  {
    ExperimentConfig c = cfg;
    c.rho_value = 5001.0;
    c.n_values = {10000};
    CHECK(code_of(c) == ErrorCode::size);  // single-vertex walk cap
  }
  CHECK_THROWS_AS(markov_bound(TailBoundQuery{2, 5.0, 1.0}), Error);
  CHECK_THROWS_AS(
      sample_measure_once(Measure::single_vertex, 1, 0.5, 1, 0), Error);
}
