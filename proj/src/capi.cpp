#include "bellcord.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bellcord/asymptotics.hpp"
#include "bellcord/errors.hpp"
#include "bellcord/evalnum.hpp"
#include "bellcord/exact_polynomial.hpp"
#include "bellcord/lambert.hpp"
#include "bellcord/moments.hpp"
#include "bellcord/partitions.hpp"
#include "bellcord/stirling_table.hpp"
#include "bellcord/tailsim.hpp"
#include "bellcord/verify.hpp"

using nlohmann::json;

struct bc_poly {
  bellcord::ExactPolynomial poly;
};

struct bc_table {
  bellcord::StirlingTable table;
};

namespace {

thread_local std::string g_last_error;

bc_status status_of(bellcord::ErrorCode c) {
  using EC = bellcord::ErrorCode;
  switch (c) {
    case EC::domain: return BC_ERR_DOMAIN;
    case EC::size: return BC_ERR_SIZE;
    case EC::precision: return BC_ERR_PRECISION;
    case EC::no_converge: return BC_ERR_NOCONV;
    case EC::budget: return BC_ERR_BUDGET;
    case EC::invalid: return BC_ERR_INVALID;
    case EC::internal: return BC_ERR_INTERNAL;
  }
  return BC_ERR_INTERNAL;
}

// Run the body, translating the library's exception taxonomy into
// status codes.  Nothing may escape the C boundary.
template <class F>
bc_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return BC_OK;
  } catch (const bellcord::Error& e) {
    // what() is "<code name>: <message>"; the status already carries the
    // code, so keep only the message.
    const std::string prefix =
        std::string(bellcord::error_code_name(e.code())) + ": ";
    const std::string what = e.what();
    g_last_error = what.rfind(prefix, 0) == 0 ? what.substr(prefix.size())
                                              : what;
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return BC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr)
    throw bellcord::Error(bellcord::ErrorCode::internal, "out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(bool cond, const char* what) {
  bellcord::require(cond, bellcord::ErrorCode::invalid, what);
}

bellcord::CountConvention count_of(const char* name) {
  return bellcord::count_convention_from_name(name == nullptr ? "n" : name);
}

// Log-domain outputs always travel as a (sign, ln|value|) pair.
void put_log(const bellcord::LogValue& v, int* sign, double* log_abs) {
  need(sign != nullptr && log_abs != nullptr, "null output pointer");
  *sign = v.sign;
  *log_abs = v.log_abs;
}

json log_to_json(const bellcord::LogValue& v, const char* prefix) {
  json j;
  j[std::string(prefix) + "_log10"] =
      v.sign == 0 ? 0.0 : v.log_abs / std::log(10.0);
  j[std::string(prefix) + "_sign"] = v.sign;
  return j;
}

json result_to_json(const bellcord::ExperimentResult& res) {
  json j;
  j["measure"] = bellcord::measure_name(res.measure);
  j["rows"] = json::array();
  for (const bellcord::ExperimentRow& row : res.rows) {
    json r{{"n", row.n},
           {"rho", row.rho},
           {"threshold", row.threshold},
           {"count", row.count},
           {"trials", row.trials},
           {"empirical_frequency", row.empirical_frequency},
           {"bound_k", row.bound_k},
           {"seed", row.seed}};
    r.update(log_to_json(row.bound_value, "bound"));
    j["rows"].push_back(std::move(r));
  }
  j["deviations"] = json::array();
  for (const bellcord::DeviationSummary& d : res.deviations)
    j["deviations"].push_back(json{{"n", d.n},
                                   {"rho", d.rho},
                                   {"q50", d.q50},
                                   {"q90", d.q90},
                                   {"q99", d.q99},
                                   {"qmax", d.qmax}});
  return j;
}

bellcord::ExperimentResult result_from_json(const std::string& text) {
  bellcord::ExperimentResult res;
  try {
    const json j = json::parse(text);
    res.measure =
        bellcord::measure_from_name(j.at("measure").get<std::string>().c_str());
    for (const json& r : j.at("rows")) {
      bellcord::ExperimentRow row;
      row.n = r.at("n").get<unsigned long>();
      row.rho = r.at("rho").get<double>();
      row.threshold = r.at("threshold").get<double>();
      row.count = r.at("count").get<unsigned long>();
      row.trials = r.at("trials").get<unsigned long>();
      row.empirical_frequency = r.at("empirical_frequency").get<double>();
      row.bound_value.sign = r.at("bound_sign").get<int>();
      row.bound_value.log_abs =
          r.at("bound_log10").get<double>() * std::log(10.0);
      row.bound_k = r.at("bound_k").get<unsigned>();
      row.seed = r.at("seed").get<std::uint64_t>();
      res.rows.push_back(row);
    }
    for (const json& d : j.at("deviations")) {
      bellcord::DeviationSummary s;
      s.n = d.at("n").get<unsigned long>();
      s.rho = d.at("rho").get<double>();
      s.q50 = d.at("q50").get<double>();
      s.q90 = d.at("q90").get<double>();
      s.q99 = d.at("q99").get<double>();
      s.qmax = d.at("qmax").get<double>();
      res.deviations.push_back(s);
    }
  } catch (const bellcord::Error&) {
    throw;
  } catch (const std::exception& e) {
    bellcord::fail(bellcord::ErrorCode::invalid,
                   std::string("malformed result document: ") + e.what());
  }
  return res;
}

}  // namespace

extern "C" {

const char* bc_status_name(bc_status s) {
  switch (s) {
    case BC_OK: return "ok";
    case BC_ERR_DOMAIN: return "domain";
    case BC_ERR_SIZE: return "size";
    case BC_ERR_PRECISION: return "precision";
    case BC_ERR_NOCONV: return "no_converge";
    case BC_ERR_BUDGET: return "budget";
    case BC_ERR_INVALID: return "invalid";
    case BC_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

const char* bc_last_error(void) { return g_last_error.c_str(); }

void bc_string_free(char* s) { std::free(s); }

const char* bc_version(void) { return "1.0.0"; }

bc_status bc_poly_build(const char* family, unsigned k, bc_poly** out) {
  return guarded([&] {
    need(family != nullptr && out != nullptr, "null argument");
    bellcord::ExactPolynomial p;
    const std::string fam = family;
    if (fam == "bell") {
      p = bellcord::bell_polynomial(k);
    } else if (fam == "restricted") {
      p = bellcord::restricted_bell_polynomial(k);
    } else if (fam == "even_block") {
      p = bellcord::even_block_bell_polynomial(k);
    } else {
      need(false, "family must be bell, restricted, or even_block");
    }
    *out = new bc_poly{std::move(p)};
  });
}

int bc_poly_degree(const bc_poly* p) {
  return p == nullptr ? -1 : p->poly.degree();
}

bc_status bc_poly_coeff(const bc_poly* p, unsigned j, char** out) {
  return guarded([&] {
    need(p != nullptr && out != nullptr, "null argument");
    *out = dup_string(p->poly.coeff(j).get_str());
  });
}

void bc_poly_free(bc_poly* p) { delete p; }

bc_status bc_table_build(const char* kind, unsigned k_max, bc_table** out) {
  return guarded([&] {
    need(kind != nullptr && out != nullptr, "null argument");
    *out = new bc_table{
        bellcord::StirlingTable::build(bellcord::table_kind_from_name(kind),
                                       k_max)};
  });
}

bc_status bc_table_entry(const bc_table* t, unsigned k, unsigned r,
                         char** out) {
  return guarded([&] {
    need(t != nullptr && out != nullptr, "null argument");
    bellcord::require(k <= t->table.max_k(), bellcord::ErrorCode::domain,
                      "row index beyond the table");
    *out = dup_string(r > k ? std::string("0")
                            : t->table.at(k, r).get_str());
  });
}

void bc_table_free(bc_table* t) { delete t; }

bc_status bc_log_poly_value(unsigned k, double x, int restricted, int* sign,
                            double* log_abs) {
  return guarded([&] {
    put_log(restricted != 0 ? bellcord::log_restricted_bell(k, x)
                            : bellcord::log_bell(k, x),
            sign, log_abs);
  });
}

bc_status bc_poisson_moment(unsigned k, double x, int centered, double tol,
                            int* sign, double* log_abs,
                            long long* terms_used) {
  return guarded([&] {
    bellcord::SeriesTruncation trunc;
    const bellcord::LogValue v =
        centered != 0
            ? bellcord::centered_poisson_moment_series(k, x, tol, &trunc)
            : bellcord::poisson_moment_series(k, x, tol, &trunc);
    put_log(v, sign, log_abs);
    if (terms_used != nullptr) *terms_used = trunc.terms_used;
  });
}

bc_status bc_lambert_solve(double beta, const char* kind, double tol,
                           double* u, double* residual, int* iterations) {
  return guarded([&] {
    need(kind != nullptr && u != nullptr, "null argument");
    const bellcord::LambertSolution sol =
        bellcord::solve_lambert(beta, bellcord::lambert_kind_from_name(kind),
                                tol);
    *u = sol.u;
    if (residual != nullptr) *residual = sol.residual;
    if (iterations != nullptr) *iterations = sol.iterations;
  });
}

bc_status bc_lambert_expansion(double beta, const char* kind, double* out) {
  return guarded([&] {
    need(kind != nullptr && out != nullptr, "null argument");
    *out = bellcord::lambert_expansion(
        beta, bellcord::lambert_kind_from_name(kind));
  });
}

bc_status bc_profile_h(double u, double* out) {
  return guarded([&] {
    need(out != nullptr, "null argument");
    *out = bellcord::h_of_u(u);
  });
}

bc_status bc_profile_h_tilde(double u, double* out) {
  return guarded([&] {
    need(out != nullptr, "null argument");
    *out = bellcord::h_tilde_of_u(u);
  });
}

bc_status bc_asymptotic_estimate(const char* family, unsigned k, double x,
                                 const char* formula, double* log_per_k,
                                 char** canonical_id, int* in_home_regime) {
  return guarded([&] {
    need(family != nullptr && formula != nullptr && log_per_k != nullptr,
         "null argument");
    const bellcord::Family fam = bellcord::family_from_name(family);
    const bellcord::AsymptoticEstimate est =
        fam == bellcord::Family::bell
            ? bellcord::estimate_bell(k, x, formula)
            : bellcord::estimate_restricted_bell(k, x, formula);
    *log_per_k = est.log_value_per_k;
    if (canonical_id != nullptr) *canonical_id = dup_string(est.formula_id);
    if (in_home_regime != nullptr) *in_home_regime = est.in_home_regime;
  });
}

bc_status bc_asymptotic_compare(const char* family, unsigned k, double x,
                                char** out) {
  return guarded([&] {
    need(family != nullptr && out != nullptr, "null argument");
    const bellcord::ComparisonRecord rec = bellcord::compare_exact_vs_asymptotic(
        k, x, bellcord::family_from_name(family));
    json j{{"family", bellcord::family_name(rec.family)},
           {"k", rec.k},
           {"x", rec.x},
           {"regime", bellcord::regime_name(rec.regime.regime)},
           {"chi", rec.regime.chi},
           {"exact_log_per_k", rec.exact_log_per_k}};
    j["formulas"] = json::array();
    for (const bellcord::FormulaGap& g : rec.formulas)
      j["formulas"].push_back(json{{"formula_id", g.formula_id},
                                   {"log_value_per_k", g.log_value_per_k},
                                   {"abs_gap", g.abs_gap},
                                   {"in_home_regime", g.in_home_regime}});
    *out = dup_string(j.dump(2));
  });
}

bc_status bc_binomial_moment(unsigned long n, double rho, int centered,
                             const char* count_convention, unsigned k,
                             unsigned precision_bits, int* sign,
                             double* log_abs) {
  return guarded([&] {
    bellcord::BernoulliSumSpec spec;
    spec.n = n;
    spec.rho = rho;
    spec.centered = centered != 0;
    spec.count = count_of(count_convention);
    put_log(bellcord::exact_binomial_moment(
                spec, k, precision_bits == 0 ? 256 : precision_bits),
            sign, log_abs);
  });
}

bc_status bc_moment_limit_gap(unsigned long n, double rho, unsigned k,
                              double* raw_gap, double* centered_gap) {
  return guarded([&] {
    need(raw_gap != nullptr && centered_gap != nullptr, "null argument");
    const bellcord::GapPair g = bellcord::lemma21_gap(n, rho, k);
    *raw_gap = g.raw_gap;
    *centered_gap = g.centered_gap;
  });
}

bc_status bc_markov_bound(unsigned long n, double rho, double s,
                          const char* strategy, unsigned fixed_k,
                          unsigned multiplier, int union_bound, int exact,
                          const char* count_convention, int* sign,
                          double* log_abs, unsigned* k_used) {
  return guarded([&] {
    need(strategy != nullptr, "null argument");
    bellcord::TailBoundQuery q;
    q.n = n;
    q.rho = rho;
    q.s = s;
    q.strategy = bellcord::k_strategy_from_name(strategy);
    q.fixed_k = fixed_k;
    q.multiplier = multiplier;
    q.union_bound = union_bound != 0;
    const bellcord::TailBoundResult r =
        exact != 0 ? bellcord::markov_bound_exact(q, count_of(count_convention))
                   : bellcord::markov_bound(q);
    put_log(r.value, sign, log_abs);
    if (k_used != nullptr) *k_used = r.k;
  });
}

bc_status bc_experiment_run(const char* config_json, unsigned threads,
                            char** result_json) {
  return guarded([&] {
    need(config_json != nullptr && result_json != nullptr, "null argument");
    const bellcord::ExperimentConfig cfg =
        bellcord::experiment_config_from_json(config_json);
    const bellcord::ExperimentResult res =
        bellcord::sample_degree_experiment(cfg, threads);
    *result_json = dup_string(result_to_json(res).dump(2));
  });
}

bc_status bc_theorem_verdict(const char* config_json, const char* result_json,
                             char** verdict_json) {
  return guarded([&] {
    need(config_json != nullptr && result_json != nullptr &&
             verdict_json != nullptr,
         "null argument");
    const bellcord::ExperimentConfig cfg =
        bellcord::experiment_config_from_json(config_json);
    const bellcord::ExperimentResult res = result_from_json(result_json);
    const bellcord::VerdictReport rep = bellcord::theorem_verdict(cfg, res);
    json j{{"critical_threshold", rep.critical_threshold},
           {"trend_decreasing", rep.trend_decreasing}};
    j["rows"] = json::array();
    for (const bellcord::VerdictRow& v : rep.rows) {
      json r{{"n", v.n},
             {"rho", v.rho},
             {"threshold", v.threshold},
             {"empirical_frequency", v.empirical_frequency},
             {"in_theorem_scope", v.in_theorem_scope},
             {"bound_respected", v.bound_respected},
             {"note", v.note}};
      r.update(log_to_json(v.bound_value, "bound"));
      j["rows"].push_back(std::move(r));
    }
    j["scaled_deviations"] = json::array();
    for (const bellcord::DeviationSummary& d : rep.scaled_deviations)
      j["scaled_deviations"].push_back(json{{"n", d.n},
                                            {"rho", d.rho},
                                            {"q50", d.q50},
                                            {"q90", d.q90},
                                            {"q99", d.q99},
                                            {"qmax", d.qmax}});
    *verdict_json = dup_string(j.dump(2));
  });
}

bc_status bc_verify_names(char** csv) {
  return guarded([&] {
    need(csv != nullptr, "null argument");
    std::ostringstream os;
    bool first = true;
    for (const std::string& n : bellcord::acceptance_criterion_names()) {
      if (!first) os << ',';
      os << n;
      first = false;
    }
    *csv = dup_string(os.str());
  });
}

bc_status bc_verify_run(const char* names_csv, unsigned threads,
                        bc_verify_callback on_result, void* user,
                        int* all_passed) {
  return guarded([&] {
    std::vector<std::string> names;
    if (names_csv != nullptr) {
      std::istringstream is(names_csv);
      std::string item;
      while (std::getline(is, item, ','))
        if (!item.empty()) names.push_back(item);
    }
    bool ok = true;
    auto progress = [&](const bellcord::CriterionResult& r) {
      ok = ok && r.passed;
      if (on_result != nullptr)
        on_result(r.name.c_str(), r.passed ? 1 : 0, r.seconds,
                  r.detail.c_str(), user);
    };
    bellcord::run_acceptance(names, threads, progress);
    if (all_passed != nullptr) *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
