#pragma once

namespace bellcord {

// Which strictly increasing map is inverted on u > 0.
enum class LambertKind {
  classical,  // u e^u = beta
  modified,   // u (e^u - 1) = beta
};

const char* lambert_kind_name(LambertKind k) noexcept;
LambertKind lambert_kind_from_name(const char* name);

struct LambertSolution {
  double u = 0.0;
  double beta = 0.0;
  LambertKind kind = LambertKind::classical;
  double residual = 0.0;  // map(u) - beta at the returned u
  int iterations = 0;
};

// Unique positive root of the chosen map, by bracketed Newton: a Newton
// step is taken only while it stays inside the current sign-change
// bracket, otherwise the step bisects.  |residual| <= tol * max(1, beta)
// on return.  tol >= 1e-15, default 1e-12.
LambertSolution solve_lambert(double beta, LambertKind kind,
                              double tol = 1e-12);

// Leading terms ln(beta) - ln(ln(beta)) of the large-beta expansion of
// the root; identical for both kinds (their maps agree to relative
// e^-u).  Requires beta > e^2; error order O(ln ln beta / ln beta).
double lambert_expansion(double beta, LambertKind kind);

// Per-k log-scale profile of the full Bell value in the linear regime,
// as a function of the classical root u: h(u) = u - 1 + 1/u - 1/(u e^u).
double h_of_u(double u);

// Companion profile for the no-singleton family, as a function of the
// modified root u:  h~(u) = ln(e^u - 1) - 1 + 1/u - 1/(e^u - 1).
// Derived by saddle point from the generating function exp{x(e^u-u-1)}:
// with k = x u (e^u - 1), (1/k) ln value -> ln x + h~(u).  It glues to
// the neighbouring regimes (h~(u) ~ ln u - 1/2 + 5u/12 as u -> 0, and
// h~ -> the classical profile as u -> inf) which fixes the form.
double h_tilde_of_u(double u);

}  // namespace bellcord
