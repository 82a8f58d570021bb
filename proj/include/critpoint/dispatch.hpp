#pragma once

#include <optional>
#include <string>

#include "critpoint/oracle.hpp"
#include "critpoint/reduction.hpp"
#include "critpoint/restarted.hpp"
#include "critpoint/types.hpp"

namespace critpoint {

enum class Branch { restarted, reduction };
std::string to_string(Branch b);

// Full problem description handed to the dispatcher.  L1 is optional; its
// absence forces the reduction branch.
struct ProblemSpec {
  double eps = 0.0;
  double L2 = 0.0;
  double Delta = 0.0;
  double n_H = 1.0;
  double delta = 0.0;
  std::optional<double> L1;
};

struct DispatchOptions {
  std::optional<Branch> force_branch;
  double inner_delta_factor = 4.0;
  // Constant-relaxation factor handed to the chosen solver; 1 = faithful.
  double scale = 1.0;
  bool record_trace = true;
};

struct DispatchReport {
  Branch branch = Branch::restarted;
  Vec x_out;
  TermReason terminated = TermReason::eps_critical;
  std::int64_t grad_queries = 0;
  std::int64_t hess_queries = 0;
  double final_grad_norm = 0.0;
  double f_final = 0.0;
  double c_ell = 0.0;       // effective curvature scale entering the budget logs
  double c_delta = 0.0;     // effective accuracy scale
  double grad_bound = 0.0;  // analytical gradient budget for these inputs
  std::optional<SolverReport> restarted;
  std::optional<ReductionReport> reduction;
};

// Admissible accuracy range; throws a regime error when eps is too large.
void check_regime(const ProblemSpec& spec);

// The restarted branch is picked when L1 is known and small enough that
// refreshing Hessians beats splitting the spectrum.
Branch choose_branch(const ProblemSpec& spec);

double effective_c_ell(const ProblemSpec& spec);
double effective_c_delta(const ProblemSpec& spec, Branch b);
double dispatch_grad_bound(const ProblemSpec& spec, Branch b);

DispatchReport solve(OracleIface& oracle, const Vec& x0, const ProblemSpec& spec,
                     const DispatchOptions& opt = {});

}  // namespace critpoint
