#pragma once

#include "critpoint/types.hpp"

namespace critpoint {

// Gradient-evaluation budgets of published critical-point methods, plus ours
// with finite-difference Hessian estimates at the optimal budget, all
// absolute constants set to 1; d may be fractional where the comparison
// treats it as a free parameter.
double bound_vavasis(double d, double eps);
double bound_li_lin(double L1, double L2, double Delta, double eps);
double bound_nesterov_polyak(double d, double L2, double Delta, double eps);
double bound_doikov(double d, double L2, double Delta, double eps);
double bound_jiang(double d, double L1, double L2, double Delta, double eps);
double bound_ours_fd(double d, double L2, double Delta, double eps);

// Explicit-constant budgets for the two branches of our solver.
double bound_ours_restarted(double L1, double L2, double Delta, double eps, double n_H,
                            double delta);
double bound_ours_reduction(double L2, double Delta, double eps, double n_H,
                            double delta);

// Worst-case ratio of the better of the d-dependent and L1-dependent budgets
// to their geometric mean.
struct RatioSample {
  double A = 0.0;      // sqrt(d L2) Delta eps^{-3/2}
  double B = 0.0;      // sqrt(L1) L2^{1/4} Delta eps^{-7/4}
  double G = 0.0;      // sqrt(A B)
  double ratio = 0.0;  // min(A + d, B) / G
};
RatioSample b1_ratio(double d, double L1, double L2, double Delta, double eps);
double b1_limit();  // sqrt((1 + sqrt 5) / 2)

// Finite-difference planning: delta(n_H) = Delta L2 / (n_H eps), total cost
// n_g(n_H) + 2 d n_H gradient evaluations.
double fd_delta(double L2, double Delta, double eps, double n_H);
double fd_total_cost(double d, double L2, double Delta, double eps, double n_H);

struct FdPlan {
  double n_H = 1.0;
  double delta = 0.0;
  double grad_bound = 0.0;
  double total_cost = 0.0;
};

// Scans n_H over {1, ..., 64 * ceil(d^{2/3})} and keeps the cheapest plan
// (ties resolved toward fewer Hessian estimates).
FdPlan fd_pipeline(double d, double L2, double Delta, double eps);

// Leading-order total-work trend in n_H with logs dropped.
double trend_n_g(double L2, double Delta, double eps, double n_H);

}  // namespace critpoint
