#include "critpoint/selfcheck.hpp"

#include <cmath>
#include <sstream>

#include "critpoint/bounds.hpp"
#include "critpoint/dispatch.hpp"
#include "critpoint/rng.hpp"
#include "critpoint/spectral.hpp"
#include "critpoint/sweep.hpp"

namespace critpoint {
namespace {

CheckResult check(const std::string& name, bool ok, const std::string& detail) {
  return {name, ok, detail};
}

CheckResult eigensolver_check() {
  Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 3 + static_cast<int>(rng.uniform_int(10));
    const Mat m = rng.gaussian_symmetric(d);
    const EigenDecomp e = jacobi_eigen(m);
    const Mat rec = e.U * e.lambda.asDiagonal() * e.U.transpose();
    worst = std::max(worst, (rec - 0.5 * (m + m.transpose())).norm() / m.norm());
    worst = std::max(worst,
                     (e.U.transpose() * e.U - Mat::Identity(d, d)).norm());
  }
  return check("eigensolver", worst < 1e-10, "max defect " + std::to_string(worst));
}

CheckResult band_check() {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const double delta = rng.uniform_log(1e-4, 1.0);
    const double L1 = delta * rng.uniform_log(2.0, 1048576.0);
    const int pm = p_max_index(L1, delta);
    const double lam = rng.uniform_log(2.0 * delta, L1);
    const int p = detail::ceil_log2_ratio(lam, delta) - 1;
    if (p < 1) continue;
    const BandConstants bc = band_constants(p, pm);
    const double ratio = lam / detail::phi_banded(lam, delta, pm, 32.0);
    if (!(ratio > bc.l && ratio <= bc.r + 1e-12))
      return check("band_geometry", false,
                   "ratio " + std::to_string(ratio) + " outside band " +
                       std::to_string(p));
  }
  return check("band_geometry", true, "50 samples inside their bands");
}

CheckResult fd_check() {
  FamilyParams fp;
  fp.name = "quad_cos";
  fp.d = 5;
  fp.seed = 3;
  fp.num["rotate"] = 1.0;
  const auto obj = make_objective(fp);
  OracleConfig oc;
  oc.mode = OracleMode::finite_difference;
  oc.delta = 1e-2;
  Oracle oracle(*obj, oc);
  const Vec x = obj->start_point();
  const Mat est = oracle.hessian_estimate(x);
  const double err = operator_norm_sym(est - obj->analytic_hessian(x));
  return check("finite_difference", err <= oc.delta,
               "error " + std::to_string(err) + " vs delta " + std::to_string(oc.delta));
}

CheckResult movement_check() {
  FamilyParams fp;
  fp.name = "quad_cos";
  fp.d = 4;
  fp.seed = 5;
  fp.num["x0_radius"] = 1e-3;
  const auto obj = make_objective(fp);
  OracleConfig oc;
  Oracle oracle(*obj, oc);
  const Vec x0 = obj->start_point();
  AgdParams par;
  par.L1 = *obj->l1();
  par.L2 = obj->l2();
  par.delta = 0.5 * par.L1;
  par.eps = 0.5 * par.delta * par.delta / par.L2;
  const AgdResult res =
      critical_or_progress(oracle, x0, oracle.hessian_estimate(x0), par);
  const double cap = 8.0 * res.derived.B;
  const bool first_step_exit = res.trigger_k == 1;
  return check("movement_cap", !first_step_exit && res.movement <= cap * (1.0 + 1e-6),
               "moved " + std::to_string(res.movement) + " of " + std::to_string(cap));
}

CheckResult projector_check() {
  Rng rng(17);
  const int d = 8;
  Vec spec(d);
  for (int i = 0; i < d; ++i) spec[i] = static_cast<double>(i);
  const Mat q = rng.random_orthogonal(d);
  const Mat m = q * spec.asDiagonal() * q.transpose();
  Mat pert = 0.02 * rng.gaussian_symmetric(d);
  const Mat mt = m + pert;
  const DkReport rep = davis_kahan_check(m, mt, -0.5, 3.5, 0.45);
  if (!rep.preconditions_ok) return check("projector_perturbation", false, rep.report);
  return check("projector_perturbation", rep.lhs <= rep.rhs + 1e-9,
               "lhs " + std::to_string(rep.lhs) + " vs rhs " + std::to_string(rep.rhs));
}

CheckResult ratio_check() {
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const double d = rng.uniform_log(1e-2, 1e3);
    const double L1 = rng.uniform_log(1e-2, 1e3);
    const double L2 = rng.uniform_log(1e-2, 1e3);
    const double Delta = rng.uniform_log(1e-2, 1e3);
    const double cap = std::min({L1 * L1 / L2,
                                 std::pow(Delta, 2.0 / 3.0) * std::cbrt(L2),
                                 Delta * L2 / L1});
    const double eps = rng.uniform01() * cap;
    if (!(eps > 0.0)) continue;
    const RatioSample s = b1_ratio(d, L1, L2, Delta, eps);
    if (s.ratio > b1_limit() + 1e-9)
      return check("budget_ratio", false, "ratio " + std::to_string(s.ratio));
  }
  return check("budget_ratio", true, "1000 samples under the limit");
}

CheckResult determinism_check() {
  SweepConfig cfg;
  cfg.family.name = "quad_cos";
  cfg.family.d = 4;
  cfg.family.seed = 9;
  cfg.family.num["x0_radius"] = 0.05;
  cfg.method = "restarted";
  cfg.epsilons = {1e-2};
  cfg.budgets = {2};
  cfg.seeds = {1, 2};
  std::ostringstream a, b;
  write_csv(a, run_sweep(cfg));
  write_csv(b, run_sweep(cfg));
  return check("determinism", a.str() == b.str(),
               a.str() == b.str() ? "identical reruns" : "rerun output differs");
}

template <typename Fn>
CheckResult guarded(const char* name, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  std::vector<CheckResult> out;
  out.push_back(guarded("eigensolver", eigensolver_check));
  out.push_back(guarded("band_geometry", band_check));
  out.push_back(guarded("finite_difference", fd_check));
  out.push_back(guarded("movement_cap", movement_check));
  out.push_back(guarded("projector_perturbation", projector_check));
  out.push_back(guarded("budget_ratio", ratio_check));
  out.push_back(guarded("determinism", determinism_check));
  return out;
}

}  // namespace critpoint
