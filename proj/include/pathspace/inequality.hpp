#pragma once

#include <string>

#include "pathspace/cylinder.hpp"
#include "pathspace/estimators.hpp"
#include "pathspace/scenario.hpp"

namespace pathspace {

enum class Verdict { Holds, HoldsWithinError, Violated };

std::string verdict_name(Verdict v);

// Three-way call on lhs <= rhs under Monte Carlo noise. Violated means the
// gap survives three combined standard errors: lhs - 3 se > rhs. Holds means
// the margin rhs - lhs clears the same three-sigma bar; everything in between
// is holds-within-error.
Verdict classify_margin(double margin, double combined_se);

struct InequalityReport {
  std::string kind;  // "lsi" or "poincare"
  std::string function_name;
  EstimateWithError lhs;          // entropy of F^2, or variance of F
  EstimateWithError form;         // weighted quadratic form, no constant
  EstimateWithError rhs;          // constant * form
  EstimateWithError damped_form;  // 2 E sum |damped D F|^2 dt (lsi only)
  EstimateWithError plain_form;   // E sum |D F|^2 dt, unit weights
  double constant = 0;            // multiplier applied to the form
  double margin = 0;              // rhs - lhs
  double combined_se = 0;
  Verdict verdict = Verdict::Holds;
  bool constant_grid_fallback = false;  // poincare constant was grid-maximized
};

// Entropy bound on path space:
//   Ent(F^2) <= c E[ sum_k |D_k F|^2 A_k dt + sum_k |D_k F|^2 B_k dl_k ]
// with the Malliavin gradient, path weights from the curvature bounds, and
// c = 2 when factor2 is set (the provable constant), 1 otherwise. The damped
// form 2 E sum |damped D F|^2 dt is reported alongside as the chain link the
// weighted form dominates. Throws std::invalid_argument when the stated
// bounds are not satisfied by the model's exact curvature.
InequalityReport verify_lsi(const ScenarioConfig& cfg,
                            const CylinderPointwise& F);

// Spectral-gap bound:
//   Var(F) <= sup_t Lambda(t, T) E[ sum_k |D_k F|^2 dt ]
// same gradient and sampling conventions; the constant comes from
// sup_lambda and the grid-fallback flag is forwarded.
InequalityReport verify_poincare(const ScenarioConfig& cfg,
                                 const CylinderPointwise& F);

}  // namespace pathspace
