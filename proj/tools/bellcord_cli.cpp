// bellcord command-line tool.  All mathematics flows through the C API
// in bellcord.h; this file only parses flags, shapes records, and prints
// CSV or JSON.
//
// Exit codes: 0 success, 2 usage error, 1 computation error.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bellcord.h"

using ordered_json = nlohmann::ordered_json;

namespace {

// ---- process-level helpers ---------------------------------------------

[[noreturn]] void die_usage(const std::string& msg) {
  std::cerr << "bellcord: usage: " << msg << '\n';
  std::exit(2);
}

[[noreturn]] void die_api(bc_status st) {
  std::cerr << "bellcord: " << bc_status_name(st) << ": " << bc_last_error()
            << '\n';
  std::exit(1);
}

void check_api(bc_status st) {
  if (st != BC_OK) die_api(st);
}

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  bc_string_free(s);
  return out;
}

unsigned env_threads() {
  const char* raw = std::getenv("BELLCORD_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (end == nullptr || *end != '\0' || v == 0 || v > 4096)
    die_usage("BELLCORD_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

// ---- record emission ----------------------------------------------------

std::string chars_of(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_quote(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return chars_of(v.get<double>());
  return v.dump();  // integers
}

// One flat table: fixed column list, one JSON object per row.  CSV
// prints the header then the cells; JSON prints the array of objects.
struct RecordTable {
  std::vector<std::string> columns;
  ordered_json rows = ordered_json::array();

  ordered_json& add_row() {
    rows.push_back(ordered_json::object());
    return rows.back();
  }

  void emit(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      os << rows.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << csv_quote(columns[i]);
    os << '\n';
    for (const ordered_json& row : rows) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        const auto it = row.find(columns[i]);
        os << (i ? "," : "")
           << (it == row.end() ? "" : csv_cell(*it));
      }
      os << '\n';
    }
  }
};

void write_out(const RecordTable& table, const std::string& format,
               const std::string& out_path) {
  if (out_path.empty()) {
    table.emit(std::cout, format);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) die_api(BC_ERR_INTERNAL);  // unlikely; message below is generic
  table.emit(f, format);
}

void put_log10(ordered_json& row, const char* prefix, int sign,
               double log_abs) {
  row[std::string(prefix) + "_sign"] = sign;
  if (sign == 0)
    row[std::string(prefix) + "_log10"] = nullptr;
  else
    row[std::string(prefix) + "_log10"] = log_abs / std::log(10.0);
}

std::string dash_to_underscore(std::string s) {
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
}

// ---- shared option state -------------------------------------------------

struct Common {
  std::string format = "csv";
  std::string out_path;
  unsigned threads = env_threads();
};

// ---- subcommand bodies ---------------------------------------------------

void run_table(const Common& c, const std::string& kind, unsigned k_max) {
  bc_table* t = nullptr;
  check_api(bc_table_build(dash_to_underscore(kind).c_str(), k_max, &t));
  RecordTable out;
  out.columns = {"kind", "k", "r", "count"};
  for (unsigned k = 0; k <= k_max; ++k)
    for (unsigned r = 0; r <= k; ++r) {
      char* e = nullptr;
      check_api(bc_table_entry(t, k, r, &e));
      ordered_json& row = out.add_row();
      row["kind"] = kind;
      row["k"] = k;
      row["r"] = r;
      row["count"] = take(e);
    }
  bc_table_free(t);
  write_out(out, c.format, c.out_path);
}

void run_poly(const Common& c, const std::string& family, unsigned k) {
  bc_poly* p = nullptr;
  check_api(bc_poly_build(dash_to_underscore(family).c_str(), k, &p));
  RecordTable out;
  out.columns = {"k"};
  for (unsigned j = 0; j <= k; ++j) out.columns.push_back("c" + std::to_string(j));
  ordered_json& row = out.add_row();
  row["k"] = k;
  for (unsigned j = 0; j <= k; ++j) {
    char* coeff = nullptr;
    check_api(bc_poly_coeff(p, j, &coeff));
    row["c" + std::to_string(j)] = take(coeff);
  }
  bc_poly_free(p);
  write_out(out, c.format, c.out_path);
}

void run_eval(const Common& c, const std::string& family, unsigned k, double x,
              const std::string& method, double tol) {
  const bool restricted = family == "restricted";
  int sign = 0;
  double la = 0.0;
  long long terms = -1;
  if (method == "series")
    check_api(bc_poisson_moment(k, x, restricted ? 1 : 0, tol, &sign, &la,
                                &terms));
  else
    check_api(bc_log_poly_value(k, x, restricted ? 1 : 0, &sign, &la));
  RecordTable out;
  out.columns = {"family", "k",        "x",          "method", "sign",
                 "ln_value", "log10_value", "terms"};
  ordered_json& row = out.add_row();
  row["family"] = family;
  row["k"] = k;
  row["x"] = x;
  row["method"] = method;
  row["sign"] = sign;
  if (sign == 0) {
    row["ln_value"] = nullptr;
    row["log10_value"] = nullptr;
  } else {
    row["ln_value"] = la;
    row["log10_value"] = la / std::log(10.0);
  }
  if (terms >= 0) row["terms"] = terms;
  write_out(out, c.format, c.out_path);
}

void run_lambert(const Common& c, double beta, const std::string& kind,
                 double tol) {
  double u = 0.0, resid = 0.0;
  int iters = 0;
  check_api(bc_lambert_solve(beta, kind.c_str(), tol, &u, &resid, &iters));
  RecordTable out;
  out.columns = {"kind", "beta",       "tol",      "u",
                 "residual", "iterations", "expansion"};
  ordered_json& row = out.add_row();
  row["kind"] = kind;
  row["beta"] = beta;
  row["tol"] = tol;
  row["u"] = u;
  row["residual"] = resid;
  row["iterations"] = iters;
  double expansion = 0.0;
  if (bc_lambert_expansion(beta, kind.c_str(), &expansion) == BC_OK)
    row["expansion"] = expansion;
  else
    row["expansion"] = nullptr;  // only defined for beta > e^2
  write_out(out, c.format, c.out_path);
}

void run_asymptotics(const Common& c, const std::string& family, unsigned k,
                     double x, const std::string& formula) {
  RecordTable out;
  if (!formula.empty()) {
    double lpk = 0.0;
    char* id = nullptr;
    int home = 0;
    check_api(bc_asymptotic_estimate(family.c_str(), k, x, formula.c_str(),
                                     &lpk, &id, &home));
    out.columns = {"family", "k", "x", "formula_id", "log_value_per_k",
                   "in_home_regime"};
    ordered_json& row = out.add_row();
    row["family"] = family;
    row["k"] = k;
    row["x"] = x;
    row["formula_id"] = take(id);
    row["log_value_per_k"] = lpk;
    row["in_home_regime"] = home != 0;
    write_out(out, c.format, c.out_path);
    return;
  }
  char* doc = nullptr;
  check_api(bc_asymptotic_compare(family.c_str(), k, x, &doc));
  const ordered_json rec = ordered_json::parse(take(doc));
  out.columns = {"family",     "k",          "x",
                 "regime",     "chi",        "exact_log_per_k",
                 "formula_id", "log_value_per_k", "abs_gap",
                 "in_home_regime"};
  for (const ordered_json& f : rec.at("formulas")) {
    ordered_json& row = out.add_row();
    row["family"] = rec.at("family");
    row["k"] = rec.at("k");
    row["x"] = rec.at("x");
    row["regime"] = rec.at("regime");
    row["chi"] = rec.at("chi");
    row["exact_log_per_k"] = rec.at("exact_log_per_k");
    row["formula_id"] = f.at("formula_id");
    row["log_value_per_k"] = f.at("log_value_per_k");
    row["abs_gap"] = f.at("abs_gap");
    row["in_home_regime"] = f.at("in_home_regime");
  }
  write_out(out, c.format, c.out_path);
}

void run_moments(const Common& c, unsigned long n, double rho, unsigned k,
                 bool centered, const std::string& count, unsigned bits,
                 bool gap) {
  RecordTable out;
  if (gap) {
    double raw = 0.0, cen = 0.0;
    check_api(bc_moment_limit_gap(n, rho, k, &raw, &cen));
    out.columns = {"n", "rho", "k", "raw_gap", "centered_gap"};
    ordered_json& row = out.add_row();
    row["n"] = n;
    row["rho"] = rho;
    row["k"] = k;
    row["raw_gap"] = raw;
    row["centered_gap"] = cen;
    write_out(out, c.format, c.out_path);
    return;
  }
  int sign = 0;
  double la = 0.0;
  check_api(bc_binomial_moment(n, rho, centered ? 1 : 0,
                               dash_to_underscore(count).c_str(), k, bits,
                               &sign, &la));
  out.columns = {"n",    "rho",     "k",       "centered", "count",
                 "sign", "ln_value", "log10_value"};
  ordered_json& row = out.add_row();
  row["n"] = n;
  row["rho"] = rho;
  row["k"] = k;
  row["centered"] = centered;
  row["count"] = count;
  row["sign"] = sign;
  if (sign == 0) {
    row["ln_value"] = nullptr;
    row["log10_value"] = nullptr;
  } else {
    row["ln_value"] = la;
    row["log10_value"] = la / std::log(10.0);
  }
  write_out(out, c.format, c.out_path);
}

void run_bound(const Common& c, unsigned long n, double rho, double rho_chi,
               double s, double s_rel, const std::string& k_token,
               unsigned multiplier, bool union_bound,
               const std::string& basis, const std::string& count) {
  const double rho_eff =
      std::isnan(rho) ? rho_chi * std::log(static_cast<double>(n)) : rho;
  const double s_eff = std::isnan(s) ? s_rel * rho_eff : s;
  std::string strategy;
  unsigned fixed_k = 0;
  if (k_token == "floor-log-n") {
    strategy = "floor_log_n";
  } else if (k_token == "optimize") {
    strategy = "optimize_over_k";
  } else {
    char* end = nullptr;
    const unsigned long v = std::strtoul(k_token.c_str(), &end, 10);
    if (end == nullptr || *end != '\0' || v == 0)
      die_usage("--k takes floor-log-n, optimize, or a positive integer");
    strategy = "fixed";
    fixed_k = static_cast<unsigned>(v);
  }
  int sign = 0;
  double la = 0.0;
  unsigned k_used = 0;
  check_api(bc_markov_bound(n, rho_eff, s_eff, strategy.c_str(), fixed_k,
                            multiplier, union_bound ? 1 : 0,
                            basis == "exact" ? 1 : 0,
                            dash_to_underscore(count).c_str(), &sign, &la,
                            &k_used));
  RecordTable out;
  out.columns = {"n",          "rho",   "s",           "strategy",
                 "k",          "multiplier", "union_bound", "basis",
                 "bound_sign", "bound_log10"};
  ordered_json& row = out.add_row();
  row["n"] = n;
  row["rho"] = rho_eff;
  row["s"] = s_eff;
  row["strategy"] = k_token;
  row["k"] = k_used;
  row["multiplier"] = multiplier;
  row["union_bound"] = union_bound;
  row["basis"] = basis;
  put_log10(row, "bound", sign, la);
  write_out(out, c.format, c.out_path);
}

void run_simulate(const Common& c, const std::string& config_path,
                  bool have_seed, unsigned long long seed, bool verdict,
                  bool deviations, bool timings) {
  std::ifstream f(config_path, std::ios::binary);
  if (!f) die_usage("cannot read config file " + config_path);
  std::stringstream buf;
  buf << f.rdbuf();
  std::string config_text = buf.str();
  if (have_seed) {
    // Only the seed is touched; everything else passes through to the
    // library's own validation.
    try {
      nlohmann::json cfg = nlohmann::json::parse(config_text);
      cfg["seed"] = seed;
      config_text = cfg.dump(2);
    } catch (const std::exception&) {
      std::cerr << "bellcord: invalid: config file is not valid JSON\n";
      std::exit(1);
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  char* result_raw = nullptr;
  check_api(bc_experiment_run(config_text.c_str(), c.threads, &result_raw));
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const std::string result_text = take(result_raw);
  const ordered_json res = ordered_json::parse(result_text);

  RecordTable out;
  if (verdict) {
    char* verdict_raw = nullptr;
    check_api(bc_theorem_verdict(config_text.c_str(), result_text.c_str(),
                                 &verdict_raw));
    const ordered_json rep = ordered_json::parse(take(verdict_raw));
    out.columns = {"measure",     "critical_threshold",
                   "trend_decreasing", "n",
                   "rho",         "threshold",
                   "empirical_frequency", "bound_sign",
                   "bound_log10", "in_theorem_scope",
                   "bound_respected", "note"};
    for (const ordered_json& r : rep.at("rows")) {
      ordered_json& row = out.add_row();
      row["measure"] = res.at("measure");
      row["critical_threshold"] = rep.at("critical_threshold");
      row["trend_decreasing"] = rep.at("trend_decreasing");
      for (const char* key :
           {"n", "rho", "threshold", "empirical_frequency", "bound_sign",
            "bound_log10", "in_theorem_scope", "bound_respected", "note"})
        row[key] = r.at(key);
    }
  } else if (deviations) {
    out.columns = {"measure", "n", "rho", "q50", "q90", "q99", "qmax"};
    for (const ordered_json& d : res.at("deviations")) {
      ordered_json& row = out.add_row();
      row["measure"] = res.at("measure");
      for (const char* key : {"n", "rho", "q50", "q90", "q99", "qmax"})
        row[key] = d.at(key);
    }
  } else {
    out.columns = {"measure",   "n",           "rho",
                   "threshold", "count",       "trials",
                   "empirical_frequency", "bound_sign",
                   "bound_log10", "bound_k",   "seed"};
    if (timings) out.columns.push_back("wall_seconds");
    for (const ordered_json& r : res.at("rows")) {
      ordered_json& row = out.add_row();
      row["measure"] = res.at("measure");
      for (const char* key :
           {"n", "rho", "threshold", "count", "trials",
            "empirical_frequency", "bound_sign", "bound_log10", "bound_k",
            "seed"})
        row[key] = r.at(key);
      if (timings) row["wall_seconds"] = wall;
    }
  }
  write_out(out, c.format, c.out_path);
}

int run_verify(const Common& c, const std::vector<std::string>& names) {
  char* csv = nullptr;
  check_api(bc_verify_names(&csv));
  const std::string known_csv = take(csv);
  for (const std::string& n : names)
    if (("," + known_csv + ",").find("," + n + ",") == std::string::npos)
      die_usage("unknown check '" + n + "'; available: " + known_csv);
  std::string joined;
  for (const std::string& n : names)
    joined += (joined.empty() ? "" : ",") + n;

  RecordTable out;
  out.columns = {"name", "passed", "seconds", "detail"};
  auto cb = [](const char* name, int passed, double seconds,
               const char* detail, void* user) {
    RecordTable* table = static_cast<RecordTable*>(user);
    ordered_json& row = table->add_row();
    row["name"] = name;
    row["passed"] = passed != 0;
    row["seconds"] = seconds;
    row["detail"] = detail;
  };
  int all_passed = 0;
  check_api(bc_verify_run(joined.empty() ? nullptr : joined.c_str(),
                          c.threads, cb, &out, &all_passed));
  write_out(out, c.format, c.out_path);
  return all_passed == 1 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bellcord: set-partition counts, Poisson moments, degree tail bounds, "
      "and the sampling experiments around them.\n"
      "Output is CSV (headers always) or JSON (--format json), to stdout or "
      "--out PATH.\nThe only environment variable consulted is "
      "BELLCORD_THREADS (worker cap for simulate/verify).\n"
      "Exit codes: 0 success, 2 usage error, 1 computation error."};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", common.out_path, "Write output to PATH");
  app.add_option("--threads", common.threads,
                 "Worker cap (overrides BELLCORD_THREADS)")
      ->check(CLI::Range(1u, 4096u));

  // table
  auto* sub_table = app.add_subcommand(
      "table",
      "Partition-count triangle S(k, r).  Columns: kind,k,r,count");
  sub_table->fallthrough();
  std::string table_kind = "classical";
  unsigned table_kmax = 10;
  sub_table->add_option("--kind", table_kind, "Block-size restriction")
      ->check(CLI::IsMember({"classical", "restricted", "even-block"}))
      ->capture_default_str();
  sub_table->add_option("--k-max", table_kmax, "Largest row")
      ->required();

  // poly
  auto* sub_poly = app.add_subcommand(
      "poly",
      "Weighted partition-count polynomial.  Columns: k,c0,...,ck");
  sub_poly->fallthrough();
  std::string poly_family;
  unsigned poly_k = 0;
  sub_poly->add_option("--family", poly_family, "Partition family")
      ->check(CLI::IsMember({"bell", "restricted", "even-block"}))
      ->required();
  sub_poly->add_option("--k", poly_k, "Ground-set size")->required();

  // eval
  auto* sub_eval = app.add_subcommand(
      "eval",
      "Polynomial value at x in the log domain.  Columns: "
      "family,k,x,method,sign,ln_value,log10_value,terms");
  sub_eval->fallthrough();
  std::string eval_family, eval_method = "auto";
  unsigned eval_k = 0;
  double eval_x = 0.0, eval_tol = 1e-12;
  sub_eval->add_option("--family", eval_family, "bell or restricted")
      ->check(CLI::IsMember({"bell", "restricted"}))
      ->required();
  sub_eval->add_option("--k", eval_k, "Order")->required();
  sub_eval->add_option("--x", eval_x, "Evaluation point")->required();
  sub_eval->add_option("--method", eval_method,
                       "auto (tables/adaptive) or series (weighted count)")
      ->check(CLI::IsMember({"auto", "series"}))
      ->capture_default_str();
  sub_eval->add_option("--tol", eval_tol, "Series tolerance")
      ->capture_default_str();

  // lambert
  auto* sub_lambert = app.add_subcommand(
      "lambert",
      "Positive root of u e^u = beta (classical) or u(e^u-1) = beta "
      "(modified).  Columns: kind,beta,tol,u,residual,iterations,expansion");
  sub_lambert->fallthrough();
  double lambert_beta = 0.0, lambert_tol = 1e-12;
  std::string lambert_kind;
  sub_lambert->add_option("--beta", lambert_beta, "Right-hand side")
      ->required();
  sub_lambert->add_option("--kind", lambert_kind, "Equation kind")
      ->check(CLI::IsMember({"classical", "modified"}))
      ->required();
  sub_lambert->add_option("--tol", lambert_tol, "Residual tolerance")
      ->capture_default_str();

  // asymptotics
  auto* sub_asym = app.add_subcommand(
      "asymptotics",
      "Limit formulas vs the exact value on the (1/k)ln scale.  Columns: "
      "family,k,x,regime,chi,exact_log_per_k,formula_id,log_value_per_k,"
      "abs_gap,in_home_regime (or a single-formula row with --formula)");
  sub_asym->fallthrough();
  std::string asym_family, asym_formula;
  unsigned asym_k = 0;
  double asym_x = 0.0;
  sub_asym->add_option("--family", asym_family, "bell or restricted")
      ->check(CLI::IsMember({"bell", "restricted"}))
      ->required();
  sub_asym->add_option("--k", asym_k, "Order")->required();
  sub_asym->add_option("--x", asym_x, "Evaluation point")->required();
  sub_asym->add_option("--formula", asym_formula,
                       "Evaluate one formula id instead of comparing all");

  // moments
  auto* sub_moments = app.add_subcommand(
      "moments",
      "Exact Bernoulli-sum moments.  Columns: "
      "n,rho,k,centered,count,sign,ln_value,log10_value; with --gap: "
      "n,rho,k,raw_gap,centered_gap");
  sub_moments->fallthrough();
  unsigned long mom_n = 0;
  double mom_rho = 0.0;
  unsigned mom_k = 0, mom_bits = 0;
  bool mom_centered = false, mom_gap = false;
  std::string mom_count = "n";
  sub_moments->add_option("--n", mom_n, "Population size")->required();
  sub_moments->add_option("--rho", mom_rho, "Mean parameter")->required();
  sub_moments->add_option("--k", mom_k, "Moment order")->required();
  sub_moments->add_flag("--centered", mom_centered, "Central moment");
  sub_moments->add_option("--count", mom_count, "Number of summands")
      ->check(CLI::IsMember({"n", "n-minus-1"}))
      ->capture_default_str();
  sub_moments->add_option("--precision-bits", mom_bits,
                          "Working precision (0 = default 256)");
  sub_moments->add_flag("--gap", mom_gap,
                        "Report relative gaps to the polynomial limits");

  // bound
  auto* sub_bound = app.add_subcommand(
      "bound",
      "Moment tail bound on P(|D - rho| >= s).  Columns: "
      "n,rho,s,strategy,k,multiplier,union_bound,basis,bound_sign,"
      "bound_log10");
  sub_bound->fallthrough();
  unsigned long bound_n = 0;
  double bound_rho = NAN, bound_rho_chi = NAN, bound_s = NAN,
         bound_s_rel = NAN;
  std::string bound_k = "floor-log-n", bound_basis = "bell-approx",
              bound_count = "n";
  unsigned bound_mult = 1;
  bool bound_union = false;
  sub_bound->add_option("--n", bound_n, "Population size")->required();
  auto* rho_group = sub_bound->add_option_group("rho", "Mean parameter");
  rho_group->add_option("--rho", bound_rho, "Mean directly");
  rho_group->add_option("--rho-chi", bound_rho_chi,
                        "Mean as chi * ln(n)");
  rho_group->require_option(1);
  auto* s_group = sub_bound->add_option_group("s", "Deviation threshold");
  s_group->add_option("--s", bound_s, "Absolute threshold");
  s_group->add_option("--s-rel", bound_s_rel, "Threshold as s_rel * rho");
  s_group->require_option(1);
  sub_bound
      ->add_option("--k", bound_k,
                   "floor-log-n, optimize, or a fixed positive integer")
      ->capture_default_str();
  sub_bound->add_option("--multiplier", bound_mult,
                        "Evaluate moment order 2*multiplier*k")
      ->check(CLI::Range(1u, 64u))
      ->capture_default_str();
  sub_bound->add_flag("--union", bound_union, "Multiply the bound by n");
  sub_bound->add_option("--basis", bound_basis,
                        "bell-approx (polynomial-limit moment) or exact")
      ->check(CLI::IsMember({"bell-approx", "exact"}))
      ->capture_default_str();
  sub_bound->add_option("--count", bound_count,
                        "Summand convention for --basis exact")
      ->check(CLI::IsMember({"n", "n-minus-1"}))
      ->capture_default_str();

  // simulate
  auto* sub_sim = app.add_subcommand(
      "simulate",
      "Degree-deviation experiment from a JSON config.  Columns: "
      "measure,n,rho,threshold,count,trials,empirical_frequency,bound_sign,"
      "bound_log10,bound_k,seed; --deviations: quantile table; --verdict: "
      "bound/trend report.  --timings appends wall_seconds (breaks "
      "byte-for-byte reproducibility).\nConfig fields: n_values (array), "
      "rho_rule {kind: fixed|chi_log_n|chi_n_log_n, value}, trials, seed, "
      "thresholds (array), measure (single_vertex|max_degree), "
      "max_total_edges (optional)");
  sub_sim->fallthrough();
  std::string sim_config;
  unsigned long long sim_seed = 0;
  bool sim_verdict = false, sim_dev = false, sim_timings = false;
  sub_sim->add_option("--config", sim_config, "JSON config path")
      ->check(CLI::ExistingFile)
      ->required();
  auto* seed_opt =
      sub_sim->add_option("--seed", sim_seed, "Override the config's seed");
  sub_sim->add_flag("--verdict", sim_verdict,
                    "Emit the bound/trend verdict table");
  sub_sim->add_flag("--deviations", sim_dev,
                    "Emit the deviation quantile table");
  sub_sim->add_flag("--timings", sim_timings, "Append wall_seconds");

  // verify
  auto* sub_verify = app.add_subcommand(
      "verify",
      "Acceptance battery (all checks, or the named subset).  Columns: "
      "name,passed,seconds,detail.  Exit 1 if any check fails.");
  sub_verify->fallthrough();
  std::vector<std::string> verify_names;
  sub_verify->add_option("names", verify_names, "Subset of check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    std::cerr << "bellcord: usage: " << msg << '\n';
    return 2;
  }

  if (sub_table->parsed()) run_table(common, table_kind, table_kmax);
  if (sub_poly->parsed()) run_poly(common, poly_family, poly_k);
  if (sub_eval->parsed())
    run_eval(common, eval_family, eval_k, eval_x, eval_method, eval_tol);
  if (sub_lambert->parsed())
    run_lambert(common, lambert_beta, lambert_kind, lambert_tol);
  if (sub_asym->parsed())
    run_asymptotics(common, asym_family, asym_k, asym_x, asym_formula);
  if (sub_moments->parsed())
    run_moments(common, mom_n, mom_rho, mom_k, mom_centered, mom_count,
                mom_bits, mom_gap);
  if (sub_bound->parsed())
    run_bound(common, bound_n, bound_rho, bound_rho_chi, bound_s,
              bound_s_rel, bound_k, bound_mult, bound_union, bound_basis,
              bound_count);
  if (sub_sim->parsed())
    run_simulate(common, sim_config, seed_opt->count() > 0, sim_seed,
                 sim_verdict, sim_dev, sim_timings);
  if (sub_verify->parsed()) return run_verify(common, verify_names);
  return 0;
}
