#pragma once

#include <optional>

#include "critpoint/oracle.hpp"
#include "critpoint/restarted.hpp"
#include "critpoint/types.hpp"

namespace critpoint {

// Inputs when no gradient Lipschitz constant is available.  ell_override
// replaces the derived eigenvalue cutoff; it still has to clear the derived
// feasibility bounds.
struct ReductionParams {
  double delta = 0.0;
  double eps = 0.0;
  double L2 = 0.0;
  double Delta = 0.0;
  double n_H = 1.0;
  std::optional<double> ell_override;
  double inner_delta_factor = 4.0;
  // Constant-relaxation factor handed to the inner runs; 1 = faithful.
  double scale = 1.0;
};

// Derived cutoff geometry:
//   ell_hat   pilot cutoff max((800 Delta/eps^2)(3 L2 Delta/eps + delta)^2, 2 delta)
//   c_delta   delta + Delta L2 / (n_H eps)
//   Delta_out suboptimality bound at the restricted solver's output
//   R_out     movement bound of the restricted solver
//   ell       final cutoff ell_hat * log2^19(ell_hat / c_delta)
struct ReductionDerived {
  double ell_hat = 0.0;
  double c_delta = 0.0;
  double Delta_out = 0.0;
  double R_out = 0.0;
  double ell = 0.0;
};

ReductionDerived reduction_derive(const ReductionParams& p);

struct ReductionOptions {
  bool record_trace = true;
};

struct ReductionReport {
  Vec x_out;  // output after the stiff-directions correction
  TermReason terminated = TermReason::eps_critical;
  SolverReport inner;  // restricted solve, run to eps/2
  ReductionDerived derived;
  std::int64_t grad_queries = 0;
  std::int64_t hess_queries = 0;
  int subspace_dim = 0;     // rank of the kept projector
  double newton_norm = 0.0; // length of the correction step
  double final_grad_norm = 0.0;
  double tail_grad_norm = 0.0;  // gradient mass on the discarded directions
  double f_final = 0.0;
};

// Splits the spectrum of one Hessian estimate at x0 by |eigenvalue| <= ell,
// solves the problem restricted to the soft subspace (reusing that estimate
// as the restricted solver's first one), then cancels the gradient on the
// stiff directions with a single pseudo-inverse step.
ReductionReport reduction_solve(OracleIface& oracle, const Vec& x0,
                                const ReductionParams& par,
                                const ReductionOptions& opt = {});

}  // namespace critpoint
