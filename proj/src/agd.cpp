#include "critpoint/agd.hpp"

#include <cmath>
#include <utility>

namespace critpoint {

AgdDerived agd_derive(const AgdParams& p) {
  if (!(p.L1 > 0.0) || !(p.L2 > 0.0))
    throw invalid_parameter_error("critical_or_progress: L1 and L2 must be positive");
  if (!(p.delta > 0.0))
    throw invalid_parameter_error("critical_or_progress: delta must be positive");
  if (!(p.eps > 0.0))
    throw invalid_parameter_error("critical_or_progress: eps must be positive");
  if (!(p.scale > 0.0) || p.scale > 1.0)
    throw invalid_parameter_error("critical_or_progress: scale must lie in (0, 1]");
  // The outer solver hands down inflated deltas (up to 4 * 2L1), hence the
  // relaxed ceiling here.
  if (p.delta > 8.0 * p.L1 * (1.0 + 1e-9))
    throw contract_error("critical_or_progress: delta " + std::to_string(p.delta) +
                         " exceeds 8*L1");
  if (p.eps > p.delta * p.delta / p.L2 * (1.0 + 1e-9))
    throw contract_error("critical_or_progress: eps " + std::to_string(p.eps) +
                         " exceeds delta^2/L2 = " +
                         std::to_string(p.delta * p.delta / p.L2));

  AgdDerived d;
  d.p_max = p_max_index(p.L1, p.delta);
  d.scale = p.scale;
  const double pm8 = std::pow(static_cast<double>(d.p_max), 8.0);
  d.eps_tilde = p.eps / (p.scale * pm8);
  d.eta = 0.25;
  d.B = std::sqrt(d.eps_tilde / p.L2) / 3.0;
  const double k_raw = std::sqrt(p.delta) / std::pow(d.eps_tilde * p.L2, 0.25);
  if (!(k_raw < 4.0e18))
    throw numeric_error("critical_or_progress: iteration count " +
                        std::to_string(k_raw) + " overflows");
  d.K = std::max(1LL, static_cast<long long>(std::ceil(k_raw)));
  d.theta = 1.0 / static_cast<double>(d.K);
  d.trigger = 12.0 * p.delta * p.scale * static_cast<double>(d.p_max) * d.B * d.B;
  return d;
}

AgdResult critical_or_progress(const GradFn& grad, const Vec& x0,
                               const NormOperator& hhat, const AgdParams& p,
                               const AgdOptions& opt) {
  const AgdDerived der = agd_derive(p);
  const int d = static_cast<int>(x0.size());
  if (hhat.dim() != d) throw argument_error("critical_or_progress: dimension mismatch");

  const Mat& u = hhat.eigen().U;
  const Vec& w = hhat.phi_values();
  const long long K = der.K;
  const long long lo = K / 2;        // first index entering the suffix average
  const long long win = (3 * K) / 4; // first index eligible as argmin

  AgdResult res;
  res.derived = der;
  if (opt.record_iterates) res.trace = std::make_shared<AgdTrace>();

  Vec x_prev = x0, x = x0, xn(d);
  Vec y(d), g(d), coef(d), step(d), dx(d);
  std::vector<Vec> y_window;
  double best_m2 = 0.0;
  long long best_k = -1;
  double sum = 0.0;

  if (res.trace) res.trace->x.push_back(x);

  for (long long k = 0; k <= K; ++k) {
    y = x + (1.0 - der.theta) * (x - x_prev);
    if (k >= lo && k <= K - 1) y_window.push_back(y);
    if (res.trace) res.trace->y.push_back(y);

    g = grad(y);
    ++res.grad_queries;
    coef.noalias() = u.transpose() * g;
    coef.array() /= w.array();
    step.noalias() = u * coef;
    xn = y;
    xn.noalias() -= der.eta * step;

    dx = xn;
    dx -= x;
    coef.noalias() = u.transpose() * dx;
    const double m2 = (w.array() * coef.array().square()).sum();
    if (!std::isfinite(m2))
      throw numeric_error("critical_or_progress: non-finite movement at step " +
                          std::to_string(k));

    // Progress certificate: movement accumulated before this step, weighted
    // by the step count, crossed the decrease threshold.
    if (static_cast<double>(k) * sum >= der.trigger) {
      res.x_out = x;
      res.status = AgdStatus::triggered_progress;
      res.trigger_k = k;
      res.trigger_sum = sum;
      res.movement = (x - x0).norm();
      break;
    }

    sum += m2;
    if (k >= win && k <= K - 1 && (best_k < 0 || m2 < best_m2)) {
      best_m2 = m2;
      best_k = k;
    }

    std::swap(x_prev, x);
    std::swap(x, xn);
    if (res.trace) res.trace->x.push_back(x);
  }

  if (res.trigger_k < 0) {
    res.status = AgdStatus::averaged;
    res.k0 = best_k;
    const long long hi = std::max(best_k, lo);
    Vec avg = Vec::Zero(d);
    for (long long k = lo; k <= hi; ++k) avg += y_window[static_cast<size_t>(k - lo)];
    res.x_out = avg / static_cast<double>(hi - lo + 1);
    res.trigger_sum = sum;
    res.movement = (res.x_out - x0).norm();
  }

  if (!res.x_out.allFinite())
    throw numeric_error("critical_or_progress: non-finite output");
  // A first-step trigger returns a raw scaled-gradient step whose length
  // tracks the starting gradient, so only later exits admit a cap in B.
  if (res.status == AgdStatus::averaged || res.trigger_k >= 2) {
    const double cap = 8.0 * der.B * (1.0 + 1e-6);
    if (res.movement > cap)
      throw invariant_error("critical_or_progress: moved " +
                            std::to_string(res.movement) + ", beyond the cap " +
                            std::to_string(cap));
  }
  return res;
}

AgdResult critical_or_progress(OracleIface& oracle, const Vec& x0, const Mat& h,
                               const AgdParams& p, const AgdOptions& opt) {
  const NormOperator hhat = build_norm_operator(h, p.delta, p.L1);
  return critical_or_progress([&oracle](const Vec& z) { return oracle.gradient(z); }, x0,
                              hhat, p, opt);
}

}  // namespace critpoint
