#include "bellcord/asymptotics.hpp"

#include <cmath>
#include <cstring>

#include "bellcord/errors.hpp"
#include "bellcord/evalnum.hpp"
#include "bellcord/lambert.hpp"

namespace bellcord {

const char* family_name(Family f) noexcept {
  return f == Family::bell ? "bell" : "restricted";
}

Family family_from_name(const char* name) {
  require(name != nullptr, ErrorCode::invalid, "family name is null");
  if (std::strcmp(name, "bell") == 0) return Family::bell;
  if (std::strcmp(name, "restricted") == 0) return Family::restricted;
  fail(ErrorCode::invalid, std::string("unknown family '") + name +
                               "' (expected bell or restricted)");
}

const char* regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::sublinear: return "sublinear";
    case Regime::linear: return "linear";
    case Regime::superlinear: return "superlinear";
  }
  return "linear";
}

RegimeTag classify_regime(unsigned k, double x,
                          const RegimeThresholds& thresholds) {
  require(k >= 1, ErrorCode::domain, "k must be positive");
  require(std::isfinite(x) && x > 0.0, ErrorCode::domain, "x must be > 0");
  require(thresholds.sublinear_max > 0.0 &&
              thresholds.superlinear_min > thresholds.sublinear_max,
          ErrorCode::invalid, "regime thresholds must satisfy 0 < lo < hi");
  RegimeTag tag;
  tag.chi = x / double(k);
  if (tag.chi < thresholds.sublinear_max)
    tag.regime = Regime::sublinear;
  else if (tag.chi > thresholds.superlinear_min)
    tag.regime = Regime::superlinear;
  else
    tag.regime = Regime::linear;
  return tag;
}

namespace {

struct FormulaInfo {
  const char* canonical;
  Regime home;
};

// Alias resolution: ids denoting the same limit share one evaluation.
FormulaInfo formula_info(Family family, const std::string& id) {
  if (family == Family::bell) {
    if (id == "2.9") return {"2.9", Regime::sublinear};
    if (id == "2.10" || id == "2.13") return {"2.13", Regime::linear};
    if (id == "2.14") return {"2.14", Regime::superlinear};
    if (id == "4.20") return {"4.20", Regime::linear};
  } else {
    if (id == "2.15") return {"2.15", Regime::sublinear};
    if (id == "2.16" || id == "2.19") return {"2.19", Regime::linear};
    if (id == "2.20" || id == "4.37") return {"2.20", Regime::superlinear};
    if (id == "4.35") return {"4.35", Regime::linear};
  }
  fail(ErrorCode::invalid, "unknown formula id '" + id + "' for family " +
                               family_name(family));
}

double sublinear_value(unsigned k, double x) {
  const double gap = std::log(double(k)) - std::log(x);
  require(gap > 0.0, ErrorCode::domain,
          "sublinear formula needs x < k (ln k - ln x must be positive)");
  return std::log(double(k)) - 1.0 - std::log(gap);
}

double evaluate(Family family, const char* id, unsigned k, double x) {
  const double kd = double(k);
  if (family == Family::bell) {
    if (std::strcmp(id, "2.9") == 0) return sublinear_value(k, x);
    if (std::strcmp(id, "2.13") == 0) {
      const double u = solve_lambert(kd / x, LambertKind::classical).u;
      return std::log(x) + h_of_u(u);
    }
    if (std::strcmp(id, "2.14") == 0) return std::log(x);
    // "4.20": x^k / sqrt(u+1) * exp{k(u - 1 + 1/u) - x} on the per-k
    // log scale.
    const double u = solve_lambert(kd / x, LambertKind::classical).u;
    return std::log(x) + (u - 1.0 + 1.0 / u) - x / kd -
           std::log(u + 1.0) / (2.0 * kd);
  }
  if (std::strcmp(id, "2.15") == 0) return sublinear_value(k, x);
  if (std::strcmp(id, "2.19") == 0) {
    const double u = solve_lambert(kd / x, LambertKind::modified).u;
    return std::log(x) + h_tilde_of_u(u);
  }
  if (std::strcmp(id, "2.20") == 0)
    return std::log(x) + 0.5 * (std::log(kd / x) - 1.0);
  // "4.35": sqrt(2 pi k / (2 pi x u ((u+1)e^u - 1))) (k/(e u))^k
  //         e^{x(e^u - u - 1)} on the per-k log scale.
  const double u = solve_lambert(kd / x, LambertKind::modified).u;
  const double eu_u_1 = std::expm1(u) - u;         // e^u - u - 1
  const double slope = u * std::exp(u) + std::expm1(u);  // (u+1)e^u - 1
  return std::log(kd / (M_E * u)) + x / kd * eu_u_1 +
         std::log(kd / (x * u * slope)) / (2.0 * kd);
}

AsymptoticEstimate make_estimate(Family family, unsigned k, double x,
                                 const std::string& formula,
                                 const RegimeThresholds& thresholds) {
  require(k >= 1, ErrorCode::domain, "k must be positive");
  require(std::isfinite(x) && x > 0.0, ErrorCode::domain, "x must be > 0");
  const FormulaInfo info = formula_info(family, formula);
  AsymptoticEstimate est;
  est.regime = classify_regime(k, x, thresholds);
  est.formula_id = info.canonical;
  est.in_home_regime = est.regime.regime == info.home;
  est.log_value_per_k = evaluate(family, info.canonical, k, x);
  require(std::isfinite(est.log_value_per_k), ErrorCode::internal,
          "formula evaluation produced a non-finite value");
  return est;
}

}  // namespace

AsymptoticEstimate estimate_bell(unsigned k, double x,
                                 const std::string& formula,
                                 const RegimeThresholds& thresholds) {
  return make_estimate(Family::bell, k, x, formula, thresholds);
}

AsymptoticEstimate estimate_restricted_bell(unsigned k, double x,
                                            const std::string& formula,
                                            const RegimeThresholds& thresholds) {
  return make_estimate(Family::restricted, k, x, formula, thresholds);
}

std::vector<std::string> formulas_for(Family family) {
  if (family == Family::bell) return {"2.9", "2.13", "2.14", "4.20"};
  return {"2.15", "2.19", "2.20", "4.35"};
}

ComparisonRecord compare_exact_vs_asymptotic(unsigned k, double x,
                                             Family family,
                                             const RegimeThresholds& thresholds) {
  require(k >= 1, ErrorCode::domain, "k must be positive");
  require(family == Family::bell || k >= 2, ErrorCode::domain,
          "restricted family needs k >= 2 for a positive exact value");
  ComparisonRecord rec;
  rec.family = family;
  rec.k = k;
  rec.x = x;
  rec.regime = classify_regime(k, x, thresholds);
  const LogValue exact =
      family == Family::bell ? log_bell(k, x) : log_restricted_bell(k, x);
  require(exact.sign == 1, ErrorCode::internal,
          "exact Bell-family value must be positive");
  rec.exact_log_per_k = exact.log_abs / double(k);
  for (const std::string& id : formulas_for(family)) {
    AsymptoticEstimate est;
    try {
      est = make_estimate(family, k, x, id, thresholds);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::domain) continue;  // not applicable here
      throw;
    }
    rec.formulas.push_back({est.formula_id, est.log_value_per_k,
                            std::fabs(est.log_value_per_k - rec.exact_log_per_k),
                            est.in_home_regime});
  }
  return rec;
}

}  // namespace bellcord
