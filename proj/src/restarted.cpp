#include "critpoint/restarted.hpp"

#include <cmath>

#include "critpoint/spectral.hpp"

namespace critpoint {

std::string to_string(TermReason r) {
  switch (r) {
    case TermReason::eps_critical: return "eps_critical";
    case TermReason::iter_cap: return "iter_cap";
    case TermReason::budget_breach: return "budget_breach";
  }
  return "?";
}

RestartedDerived restarted_derive(const RestartedParams& p) {
  if (!(p.eps > 0.0) || !(p.L1 > 0.0) || !(p.L2 > 0.0) || !(p.Delta > 0.0))
    throw invalid_parameter_error("restarted_solve: eps, L1, L2, Delta must be positive");
  if (!(p.n_H >= 1.0))
    throw invalid_parameter_error("restarted_solve: n_H must be at least 1");
  if (!(p.delta >= 0.0) || p.delta > p.L1 * (1.0 + 1e-9))
    throw invalid_parameter_error("restarted_solve: need 0 <= delta <= L1");
  if (!(p.inner_delta_factor > 0.0))
    throw invalid_parameter_error("restarted_solve: inner_delta_factor must be positive");
  if (!(p.scale > 0.0) || p.scale > 1.0)
    throw invalid_parameter_error("restarted_solve: scale must lie in (0, 1]");
  const double regime = std::min(p.L1 * p.L1 / p.L2,
                                 std::pow(p.Delta, 2.0 / 3.0) * std::cbrt(p.L2));
  if (p.eps > regime * (1.0 + 1e-9))
    throw regime_error("restarted_solve: eps " + std::to_string(p.eps) +
                       " exceeds the admissible bound min(L1^2/L2, Delta^(2/3) L2^(1/3)) = " +
                       std::to_string(regime));

  RestartedDerived d;
  const double load = 3.0 * p.Delta / (p.n_H * p.eps);
  d.R = load * std::pow(std::log2(p.L1 / (p.delta + p.L2 * load) + 16.0), 8.0);
  d.delta_tilde = std::min(p.delta + p.L2 * d.R, 2.0 * p.L1);
  d.p_tilde = p_max_index(p.L1, d.delta_tilde);
  d.iter_cap =
      std::ceil(std::pow(static_cast<double>(d.p_tilde), 12.0) * p.Delta *
                std::sqrt(p.L2 / (p.eps * p.eps * p.eps))) +
      1.0;
  if (!std::isfinite(d.R) || !std::isfinite(d.iter_cap))
    throw numeric_error("restarted_solve: derived restart geometry overflows");
  return d;
}

SolverReport restarted_solve(OracleIface& oracle, const Vec& x0,
                             const RestartedParams& par, const RestartedOptions& opt) {
  const RestartedDerived der = restarted_derive(par);
  if (x0.size() != oracle.dim())
    throw argument_error("restarted_solve: dimension mismatch");

  SolverReport rep;
  rep.derived = der;
  const LedgerMark at_entry = mark(oracle.ledger());

  long long hess_used = 0;
  Vec anchor = x0;
  Mat h;
  if (opt.initial_hessian) {
    if (opt.initial_hessian->rows() != oracle.dim() ||
        opt.initial_hessian->cols() != oracle.dim())
      throw argument_error("restarted_solve: initial hessian dimension mismatch");
    h = *opt.initial_hessian;
    hess_used = opt.initial_hess_used;
  } else {
    h = oracle.hessian_estimate(anchor);
    hess_used = 1;
  }
  EigenDecomp eig = jacobi_eigen(h);

  const double inner_delta = par.inner_delta_factor * der.delta_tilde;
  std::optional<NormOperator> hhat;

  AgdParams inner_par;
  inner_par.delta = inner_delta;
  inner_par.eps = par.eps;
  inner_par.L1 = par.L1;
  inner_par.L2 = par.L2;
  inner_par.scale = par.scale;

  Vec x = x0;
  const auto grad_fn = [&oracle](const Vec& z) { return oracle.gradient(z); };

  for (long long t = 0;; ++t) {
    const Vec g = oracle.gradient(x);
    const double gn = g.norm();
    if (gn <= par.eps) {
      rep.terminated = TermReason::eps_critical;
      rep.final_grad_norm = gn;
      break;
    }
    if (static_cast<double>(t) >= der.iter_cap) {
      rep.terminated = TermReason::iter_cap;
      rep.final_grad_norm = gn;
      break;
    }

    if ((x - anchor).norm() >= der.R) {
      if (hess_used + 1 > static_cast<long long>(par.n_H)) {
        rep.terminated = TermReason::budget_breach;
        rep.final_grad_norm = gn;
        break;
      }
      anchor = x;
      h = oracle.hessian_estimate(anchor);
      ++hess_used;
      ++rep.refreshes;
      eig = jacobi_eigen(h);
      hhat.reset();
    }

    OuterStep step;
    step.t = t;
    step.grad_norm = gn;
    if (opt.record_trace) step.f_value = oracle.value(x);

    if (eig.lambda[0] < -3.0 * der.delta_tilde) {
      Vec v = eig.U.col(0);
      const double rayleigh = v.dot(h * v);
      if (rayleigh > -2.0 * der.delta_tilde * (1.0 - 1e-9))
        throw invariant_error("restarted_solve: curvature direction with value " +
                              std::to_string(rayleigh) + " is not below -2*delta_tilde");
      if (v.dot(g) > 0.0) v = -v;
      x += der.R * v;
      step.kind = "ncd";
      step.movement = der.R;
    } else {
      if (!hhat) hhat.emplace(eig, inner_delta, par.L1);
      const AgdResult inner = critical_or_progress(grad_fn, x, *hhat, inner_par);
      step.kind = inner.status == AgdStatus::triggered_progress ? "inner_triggered"
                                                                : "inner_averaged";
      step.movement = (inner.x_out - x).norm();
      step.inner_grads = inner.grad_queries;
      x = inner.x_out;
    }
    step.hess_used = hess_used;
    ++rep.outer_iterations;
    if (opt.record_trace) rep.trace.push_back(std::move(step));
  }

  rep.x_out = x;
  rep.hess_queries = since(oracle.ledger(), at_entry).hess;
  rep.grad_queries = since(oracle.ledger(), at_entry).grad;
  if (opt.initial_hessian) rep.hess_queries += opt.initial_hess_used;
  rep.f_final = oracle.value(x);
  if (!rep.x_out.allFinite())
    throw numeric_error("restarted_solve: non-finite output");
  return rep;
}

}  // namespace critpoint
