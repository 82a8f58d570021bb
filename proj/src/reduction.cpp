#include "critpoint/reduction.hpp"

#include <cmath>

#include "critpoint/spectral.hpp"

namespace critpoint {

ReductionDerived reduction_derive(const ReductionParams& p) {
  if (!(p.eps > 0.0) || !(p.L2 > 0.0) || !(p.Delta > 0.0))
    throw invalid_parameter_error("reduction_solve: eps, L2, Delta must be positive");
  if (!(p.n_H >= 1.0))
    throw invalid_parameter_error("reduction_solve: n_H must be at least 1");
  if (!(p.delta >= 0.0))
    throw invalid_parameter_error("reduction_solve: delta must be nonnegative");
  if (!(p.scale > 0.0) || p.scale > 1.0)
    throw invalid_parameter_error("reduction_solve: scale must lie in (0, 1]");
  const double regime = std::pow(p.Delta, 2.0 / 3.0) * std::cbrt(p.L2);
  if (p.eps > regime * (1.0 + 1e-9))
    throw regime_error("reduction_solve: eps " + std::to_string(p.eps) +
                       " exceeds the admissible bound Delta^(2/3) L2^(1/3) = " +
                       std::to_string(regime));

  ReductionDerived d;
  const double push = 3.0 * p.L2 * p.Delta / p.eps + p.delta;
  d.ell_hat = std::max(800.0 * p.Delta / (p.eps * p.eps) * push * push, 2.0 * p.delta);
  d.c_delta = p.delta + p.Delta * p.L2 / (p.n_H * p.eps);
  if (!(d.ell_hat > d.c_delta))
    throw contract_error("reduction_solve: pilot cutoff " + std::to_string(d.ell_hat) +
                         " does not exceed c_delta " + std::to_string(d.c_delta));
  const double lg = std::log2(d.ell_hat / d.c_delta + 16.0);
  d.Delta_out = 54.0 * (p.Delta + p.delta * p.eps / p.L2) * std::pow(lg, 9.0) +
                std::pow(p.eps, 1.5) / (6.0 * std::sqrt(p.L2));
  d.R_out = 3.0 * p.Delta / p.eps * std::pow(lg, 9.0);
  d.ell = p.ell_override
              ? *p.ell_override
              : d.ell_hat * std::pow(std::log2(d.ell_hat / d.c_delta), 19.0);
  if (!std::isfinite(d.ell) || !std::isfinite(d.Delta_out))
    throw numeric_error("reduction_solve: derived cutoff overflows");

  if (p.ell_override && d.ell < 2.0 * p.delta)
    throw invalid_parameter_error("reduction_solve: ell " + std::to_string(d.ell) +
                                  " is below 2*delta");

  // Feasibility of the cutoff; each clause guards one step of the accuracy
  // argument for the corrected output.
  const double lean = p.L2 * d.R_out + p.delta;
  const double need1 = 800.0 * p.Delta / (p.eps * p.eps) * lean * lean;
  const double need2 = 48.0 * p.L2 * d.Delta_out / p.eps;
  const double need3 = 24.0 * std::cbrt(d.Delta_out) * std::pow(p.L2, 2.0 / 3.0);
  const double need4 = 2.0 * p.delta;
  const double slack = 1.0 - 1e-9;
  if (d.ell < need1 * slack || d.ell < need2 * slack || d.ell < need3 * slack ||
      d.ell < need4 * slack)
    throw contract_error(
        "reduction_solve: cutoff " + std::to_string(d.ell) +
        " violates its feasibility bounds (" + std::to_string(need1) + ", " +
        std::to_string(need2) + ", " + std::to_string(need3) + ", " +
        std::to_string(need4) + ")");
  return d;
}

ReductionReport reduction_solve(OracleIface& oracle, const Vec& x0,
                                const ReductionParams& par, const ReductionOptions& opt) {
  const ReductionDerived der = reduction_derive(par);
  if (x0.size() != oracle.dim())
    throw argument_error("reduction_solve: dimension mismatch");

  ReductionReport rep;
  rep.derived = der;
  const LedgerMark at_entry = mark(oracle.ledger());

  const Mat h0 = oracle.hessian_estimate(x0);
  const EigenDecomp eig0 = jacobi_eigen(h0);
  const Mat proj = project_interval(eig0, -der.ell, der.ell);
  rep.subspace_dim = 0;
  for (int i = 0; i < eig0.lambda.size(); ++i)
    if (std::abs(eig0.lambda[i]) <= der.ell) ++rep.subspace_dim;

  RestrictedOracle restricted(oracle, x0, proj, par.L2);

  RestartedParams inner_par;
  inner_par.delta = par.delta;
  inner_par.eps = 0.5 * par.eps;
  inner_par.L1 = der.ell;
  inner_par.L2 = par.L2;
  inner_par.Delta = par.Delta;
  inner_par.n_H = par.n_H;
  inner_par.inner_delta_factor = par.inner_delta_factor;
  inner_par.scale = par.scale;

  RestartedOptions inner_opt;
  Mat h0_low = proj * h0 * proj;
  inner_opt.initial_hessian = 0.5 * (h0_low + h0_low.transpose().eval());
  inner_opt.initial_hess_used = 1;
  inner_opt.record_trace = opt.record_trace;

  rep.inner = restarted_solve(restricted, x0, inner_par, inner_opt);
  rep.terminated = rep.inner.terminated;

  const Vec g_out = oracle.gradient(rep.inner.x_out);
  const Mat stiff_pinv = pinv_outside(eig0, der.ell);
  const Vec u = stiff_pinv * g_out;
  rep.x_out = rep.inner.x_out - u;
  rep.newton_norm = u.norm();

  const double newton_cap = 2.0 * std::sqrt(3.0 * der.Delta_out / der.ell);
  if (rep.newton_norm > newton_cap * (1.0 + 1e-9))
    throw invariant_error("reduction_solve: correction step " +
                          std::to_string(rep.newton_norm) + " exceeds its bound " +
                          std::to_string(newton_cap));

  const Vec g_final = oracle.gradient(rep.x_out);
  rep.final_grad_norm = g_final.norm();
  rep.tail_grad_norm = (g_final - proj * g_final).norm();
  rep.f_final = oracle.value(rep.x_out);

  rep.grad_queries = since(oracle.ledger(), at_entry).grad;
  rep.hess_queries = since(oracle.ledger(), at_entry).hess;
  if (!rep.x_out.allFinite()) throw numeric_error("reduction_solve: non-finite output");
  return rep;
}

}  // namespace critpoint
