#pragma once

#include <string>
#include <vector>

#include "bellcord/log_value.hpp"

namespace bellcord {

enum class Family { bell, restricted };
const char* family_name(Family f) noexcept;
Family family_from_name(const char* name);

// Growth regime of x relative to k.
enum class Regime { sublinear, linear, superlinear };
const char* regime_name(Regime r) noexcept;

// chi = x/k cutoffs separating the regimes at finite (k, x).
struct RegimeThresholds {
  double sublinear_max = 0.05;
  double superlinear_min = 20.0;
};

struct RegimeTag {
  Regime regime = Regime::linear;
  double chi = 0.0;  // x/k
};

RegimeTag classify_regime(unsigned k, double x,
                          const RegimeThresholds& thresholds = {});

// One limiting-formula evaluation on the (1/k)ln scale.  formula_id is
// the canonical identifier of the formula that was computed;
// in_home_regime records whether (k, x) sits in the regime the formula
// was derived for (evaluation proceeds either way).
struct AsymptoticEstimate {
  double log_value_per_k = 0.0;
  std::string formula_id;
  RegimeTag regime;
  bool in_home_regime = false;
};

// Formula identifiers accepted for the full Bell family:
//   "2.9"            sublinear:   ln k - 1 - ln(ln k - ln x)
//   "2.10" / "2.13"  linear:      ln x + h(u),  u e^u = k/x
//   "2.14"           superlinear: ln x
//   "4.20"           linear, refined by the 1/sqrt(u+1) prefactor and
//                    the e^-x factor of the saddle form
AsymptoticEstimate estimate_bell(unsigned k, double x,
                                 const std::string& formula,
                                 const RegimeThresholds& thresholds = {});

// Formula identifiers for the no-singleton family:
//   "2.15"           sublinear:   same form as "2.9"
//   "2.16" / "2.19"  linear:      ln x + h~(u),  u(e^u - 1) = k/x
//   "2.20" / "4.37"  superlinear: ln x + (ln(k/x) - 1)/2
//   "4.35"           linear, refined (full saddle form with prefactor)
AsymptoticEstimate estimate_restricted_bell(unsigned k, double x,
                                            const std::string& formula,
                                            const RegimeThresholds& thresholds = {});

// Canonical formula ids compared by compare_exact_vs_asymptotic.
std::vector<std::string> formulas_for(Family family);

struct FormulaGap {
  std::string formula_id;
  double log_value_per_k = 0.0;
  double abs_gap = 0.0;  // |estimate - exact| on the per-k log scale
  bool in_home_regime = false;
};

struct ComparisonRecord {
  Family family = Family::bell;
  unsigned k = 0;
  double x = 0.0;
  RegimeTag regime;
  double exact_log_per_k = 0.0;
  std::vector<FormulaGap> formulas;
};

// Exact (1/k)ln value via the log-domain evaluators plus every
// applicable canonical formula's estimate and absolute gap.  Formulas
// whose expression is undefined at (k, x) (the sublinear form needs
// x < k) are skipped.  The restricted family needs k >= 2 for a
// positive exact value.
ComparisonRecord compare_exact_vs_asymptotic(unsigned k, double x,
                                             Family family,
                                             const RegimeThresholds& thresholds = {});

}  // namespace bellcord
