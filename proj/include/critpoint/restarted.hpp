#pragma once

#include <optional>
#include <string>
#include <vector>

#include "critpoint/agd.hpp"
#include "critpoint/oracle.hpp"
#include "critpoint/types.hpp"

namespace critpoint {

// Outer solver inputs.  delta is the oracle's certified Hessian accuracy,
// Delta bounds f(x0) - inf f, and n_H caps the number of Hessian queries.
struct RestartedParams {
  double delta = 0.0;
  double eps = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  double Delta = 0.0;
  double n_H = 1.0;
  // The inner run sees this multiple of delta_tilde as its accuracy level.
  double inner_delta_factor = 4.0;
  // Constant-relaxation factor handed to the inner runs; 1 = faithful.
  double scale = 1.0;
};

// Derived restart geometry:
//   R           refresh radius
//   delta_tilde min(delta + L2 * R, 2 * L1), the stale-Hessian accuracy
//   p_tilde     max(ceil(log2(L1 / delta_tilde)), 16)
//   iter_cap    ceil(p_tilde^12 * Delta * sqrt(L2 / eps^3)) + 1
struct RestartedDerived {
  double R = 0.0;
  double delta_tilde = 0.0;
  int p_tilde = 0;
  double iter_cap = 0.0;
};

RestartedDerived restarted_derive(const RestartedParams& p);

enum class TermReason { eps_critical, iter_cap, budget_breach };
std::string to_string(TermReason r);

struct OuterStep {
  long long t = 0;
  std::string kind;  // "ncd", "inner_triggered" or "inner_averaged"
  double grad_norm = 0.0;
  double f_value = 0.0;  // f at the iterate before the step (when traced)
  double movement = 0.0;
  long long inner_grads = 0;
  long long hess_used = 0;
};

struct SolverReport {
  Vec x_out;
  TermReason terminated = TermReason::eps_critical;
  long long outer_iterations = 0;
  long long refreshes = 0;
  std::int64_t grad_queries = 0;
  std::int64_t hess_queries = 0;
  double final_grad_norm = 0.0;
  double f_final = 0.0;
  RestartedDerived derived;
  std::vector<OuterStep> trace;
};

struct RestartedOptions {
  // Reuse of an earlier Hessian estimate at x0: the estimate itself plus the
  // number of budget units it already consumed.
  std::optional<Mat> initial_hessian;
  int initial_hess_used = 0;
  bool record_trace = true;
};

// Alternates negative-curvature jumps and momentum runs against a Hessian
// estimate that is refreshed only when the iterate leaves a ball of radius R,
// keeping the total Hessian queries within n_H.
SolverReport restarted_solve(OracleIface& oracle, const Vec& x0,
                             const RestartedParams& par,
                             const RestartedOptions& opt = {});

}  // namespace critpoint
