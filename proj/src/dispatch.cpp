#include "critpoint/dispatch.hpp"

#include <cmath>
#include <limits>

namespace critpoint {

std::string to_string(Branch b) {
  return b == Branch::restarted ? "restarted" : "reduction";
}

namespace {

void check_common(const ProblemSpec& s) {
  if (!(s.eps > 0.0) || !(s.L2 > 0.0) || !(s.Delta > 0.0))
    throw invalid_parameter_error("solve: eps, L2, Delta must be positive");
  if (!(s.n_H >= 1.0)) throw invalid_parameter_error("solve: n_H must be at least 1");
  if (!(s.delta >= 0.0)) throw invalid_parameter_error("solve: delta must be nonnegative");
  if (s.L1 && !(*s.L1 > 0.0))
    throw invalid_parameter_error("solve: L1 must be positive when given");
}

}  // namespace

void check_regime(const ProblemSpec& s) {
  check_common(s);
  double limit = std::pow(s.Delta, 2.0 / 3.0) * std::cbrt(s.L2);
  if (s.L1) limit = std::min(limit, *s.L1 * *s.L1 / s.L2);
  if (s.eps > limit * (1.0 + 1e-9))
    throw regime_error("solve: eps " + std::to_string(s.eps) +
                       " exceeds the admissible bound " + std::to_string(limit));
}

Branch choose_branch(const ProblemSpec& s) {
  check_common(s);
  if (!s.L1) return Branch::reduction;
  const double e2 = s.eps * s.eps;
  const double threshold =
      s.L2 * s.L2 * s.Delta * s.Delta * s.Delta / (e2 * e2) + s.Delta * s.delta / e2 +
      s.delta;
  return *s.L1 <= threshold ? Branch::restarted : Branch::reduction;
}

double effective_c_ell(const ProblemSpec& s) {
  check_common(s);
  const double e2 = s.eps * s.eps;
  const double cap = s.L2 * s.L2 * s.Delta * s.Delta * s.Delta / (e2 * e2) +
                     s.Delta * s.delta * s.delta / e2 + s.delta;
  return std::min(s.L1.value_or(std::numeric_limits<double>::infinity()), cap);
}

double effective_c_delta(const ProblemSpec& s, Branch b) {
  check_common(s);
  const double fresh = s.delta + s.Delta * s.L2 / (s.n_H * s.eps);
  if (b == Branch::restarted && s.L1) return std::min(*s.L1, fresh);
  return fresh;
}

double dispatch_grad_bound(const ProblemSpec& s, Branch b) {
  const double cd = effective_c_delta(s, b);
  double scale;
  if (b == Branch::restarted) {
    if (!s.L1)
      throw invalid_parameter_error("dispatch_grad_bound: restarted branch needs L1");
    scale = *s.L1;
  } else {
    const double push = 3.0 * s.L2 * s.Delta / s.eps + s.delta;
    scale = std::max(800.0 * s.Delta / (s.eps * s.eps) * push * push, 2.0 * s.delta);
  }
  return 2.0 * s.Delta * std::pow(s.L2, 0.25) * std::sqrt(cd) /
         std::pow(s.eps, 1.75) * std::pow(std::log2(scale / cd + 16.0), 18.0);
}

DispatchReport solve(OracleIface& oracle, const Vec& x0, const ProblemSpec& spec,
                     const DispatchOptions& opt) {
  check_regime(spec);
  const Branch branch = opt.force_branch ? *opt.force_branch : choose_branch(spec);
  if (branch == Branch::restarted && !spec.L1)
    throw invalid_parameter_error("solve: restarted branch needs a known L1");

  DispatchReport rep;
  rep.branch = branch;
  rep.c_ell = effective_c_ell(spec);
  rep.c_delta = effective_c_delta(spec, branch);
  rep.grad_bound = dispatch_grad_bound(spec, branch);

  if (branch == Branch::restarted) {
    RestartedParams par;
    par.delta = spec.delta;
    par.eps = spec.eps;
    par.L1 = *spec.L1;
    par.L2 = spec.L2;
    par.Delta = spec.Delta;
    par.n_H = spec.n_H;
    par.inner_delta_factor = opt.inner_delta_factor;
    par.scale = opt.scale;
    RestartedOptions ro;
    ro.record_trace = opt.record_trace;
    rep.restarted = restarted_solve(oracle, x0, par, ro);
    rep.x_out = rep.restarted->x_out;
    rep.terminated = rep.restarted->terminated;
    rep.grad_queries = rep.restarted->grad_queries;
    rep.hess_queries = rep.restarted->hess_queries;
    rep.final_grad_norm = rep.restarted->final_grad_norm;
    rep.f_final = rep.restarted->f_final;
  } else {
    ReductionParams par;
    par.delta = spec.delta;
    par.eps = spec.eps;
    par.L2 = spec.L2;
    par.Delta = spec.Delta;
    par.n_H = spec.n_H;
    par.inner_delta_factor = opt.inner_delta_factor;
    par.scale = opt.scale;
    ReductionOptions ro;
    ro.record_trace = opt.record_trace;
    rep.reduction = reduction_solve(oracle, x0, par, ro);
    rep.x_out = rep.reduction->x_out;
    rep.terminated = rep.reduction->terminated;
    rep.grad_queries = rep.reduction->grad_queries;
    rep.hess_queries = rep.reduction->hess_queries;
    rep.final_grad_norm = rep.reduction->final_grad_norm;
    rep.f_final = rep.reduction->f_final;
  }
  return rep;
}

}  // namespace critpoint
