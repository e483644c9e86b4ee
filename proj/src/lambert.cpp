#include "bellcord/lambert.hpp"

#include <cfloat>
#include <cmath>
#include <cstring>
#include <string>

#include "bellcord/errors.hpp"

namespace bellcord {

const char* lambert_kind_name(LambertKind k) noexcept {
  return k == LambertKind::classical ? "classical" : "modified";
}

LambertKind lambert_kind_from_name(const char* name) {
  require(name != nullptr, ErrorCode::invalid, "kind name is null");
  if (std::strcmp(name, "classical") == 0) return LambertKind::classical;
  if (std::strcmp(name, "modified") == 0) return LambertKind::modified;
  fail(ErrorCode::invalid, std::string("unknown kind '") + name +
                               "' (expected classical or modified)");
}

namespace {

// Root finding runs on the log of the map, g(u) = ln(map(u)) - ln(beta):
// same root, still strictly increasing, and immune to e^u overflow.
double g_value(double u, double lbeta, LambertKind kind) {
  if (kind == LambertKind::classical) return std::log(u) + u - lbeta;
  return std::log(u) + std::log(std::expm1(u)) - lbeta;
}

double g_slope(double u, LambertKind kind) {
  if (kind == LambertKind::classical) return 1.0 / u + 1.0;
  // d/du ln(e^u - 1) = e^u/(e^u - 1) = 1/(1 - e^-u).
  return 1.0 / u + 1.0 / (-std::expm1(-u));
}

double residual_value(double u, double beta, LambertKind kind) {
  if (kind == LambertKind::classical) return u * std::exp(u) - beta;
  return u * std::expm1(u) - beta;
}

}  // namespace

LambertSolution solve_lambert(double beta, LambertKind kind, double tol) {
  require(std::isfinite(beta) && beta > 0.0, ErrorCode::domain,
          "beta must be a finite positive real");
  require(std::isfinite(tol) && tol >= 1e-15, ErrorCode::precision,
          "tol must be >= 1e-15");
  const double lbeta = std::log(beta);

  // Elementary bounds bracket the root for almost all beta; the modified
  // lower endpoint overshoots for beta just under 1, so both endpoints
  // are validated against the sign of g and repaired geometrically.
  double lo, hi = 1.0 + std::log1p(beta);
  if (kind == LambertKind::classical)
    lo = beta / (1.0 + beta * M_E);
  else
    lo = std::min(std::sqrt(beta), beta);
  int guard = 0;
  while (g_value(lo, lbeta, kind) > 0.0) {
    lo *= 0.5;
    require(++guard < 2000, ErrorCode::no_converge,
            "failed to bracket the root from below");
  }
  while (g_value(hi, lbeta, kind) < 0.0) {
    hi = 2.0 * hi + 1.0;
    require(++guard < 2000, ErrorCode::no_converge,
            "failed to bracket the root from above");
  }

  LambertSolution sol;
  sol.beta = beta;
  sol.kind = kind;
  const double accept = tol * std::max(1.0, beta);
  double u = 0.5 * (lo + hi);
  for (int it = 1; it <= 200; ++it) {
    sol.iterations = it;
    const double g = g_value(u, lbeta, kind);
    if (g > 0.0)
      hi = u;
    else
      lo = u;
    const double res = residual_value(u, beta, kind);
    if (std::fabs(res) <= accept || hi - lo <= 4.0 * DBL_EPSILON * u) {
      sol.u = u;
      sol.residual = res;
      return sol;
    }
    double next = u - g / g_slope(u, kind);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  fail(ErrorCode::no_converge, "bracketed Newton exhausted its iterations");
}

double lambert_expansion(double beta, LambertKind kind) {
  (void)kind;  // both maps share the leading terms
  require(std::isfinite(beta) && beta > std::exp(2.0), ErrorCode::domain,
          "expansion valid only for beta > e^2");
  return std::log(beta) - std::log(std::log(beta));
}

double h_of_u(double u) {
  require(std::isfinite(u) && u > 0.0, ErrorCode::domain, "u must be > 0");
  // 1/u - 1/(u e^u) = (1 - e^-u)/u, stable down to u -> 0.
  return u - 1.0 + (-std::expm1(-u)) / u;
}

double h_tilde_of_u(double u) {
  require(std::isfinite(u) && u > 0.0, ErrorCode::domain, "u must be > 0");
  if (u >= 1e-3) {
    const double m = std::expm1(u);
    // 1/u - 1/m written as (m-u)/(u m) to avoid the reciprocal cancel.
    return std::log(m) - 1.0 + (m - u) / (u * m);
  }
  // Near zero both ln(e^u-1) and 1/u - 1/(e^u-1) need the series of
  // (e^u - 1 - u)/u = u*c; then h~ = ln u + log1p(u c) - 1 + u c / m.
  const double c = 0.5 + u / 6.0 + u * u / 24.0 + u * u * u / 120.0;
  const double m = std::expm1(u);
  return std::log(u) + std::log1p(u * c) - 1.0 + (u * c) / m;
}

}  // namespace bellcord
