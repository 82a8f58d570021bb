// Acceptance gate: end-to-end checks of the guarantees this library
// advertises, one PASS/FAIL line per criterion.  Exit status is nonzero as
// soon as any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "critpoint/agd.hpp"
#include "critpoint/bounds.hpp"
#include "critpoint/dispatch.hpp"
#include "critpoint/objective.hpp"
#include "critpoint/oracle.hpp"
#include "critpoint/rng.hpp"
#include "critpoint/spectral.hpp"
#include "critpoint/sweep.hpp"

using namespace critpoint;

namespace {

struct Checker {
  long long total = 0;
  long long failed = 0;
  std::string first;
  std::string note;

  void expect(bool cond, const std::string& what) {
    ++total;
    if (!cond) {
      ++failed;
      if (first.empty()) first = what;
    }
  }
  std::string detail() const {
    std::string s = std::to_string(total) + " checks";
    if (failed > 0) s += ", " + std::to_string(failed) + " failed; first: " + first;
    if (!note.empty()) s += "; " + note;
    return s;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "";
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 1. Renormalized curvature weights.  Diagonal matrices whose eigenvalues
// are exact dyadic multiples of delta keep the advertised weight floor
// 12 * delta * p_max, attained exactly when 16*delta is in the spectrum;
// lambda / phi(lambda) is nondecreasing and each dyadic band brackets it.
Checker criterion_weights() {
  Checker ck;
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const double delta = rng.uniform_log(1e-4, 1.0);
    const double ratio = rng.uniform_log(2.0, 1048576.0);
    const double L1 = delta * ratio;
    const int kmax = static_cast<int>(std::floor(std::log2(ratio)));
    std::vector<double> pool = {0.0, -delta, -2.0 * delta};
    for (int k = 1; k <= kmax; ++k) pool.push_back(std::ldexp(delta, k));

    const int d = 2 + static_cast<int>(rng.uniform_int(11));
    Vec diag(d);
    for (int i = 0; i < d; ++i)
      diag[i] = pool[static_cast<size_t>(rng.uniform_int(pool.size()))];
    if (ratio >= 16.0) diag[0] = std::ldexp(delta, 4);

    const NormOperator hhat = build_norm_operator(Mat(diag.asDiagonal()), delta, L1);
    const int pm = hhat.p_max();
    for (int i = 0; i < d; ++i) {
      const double lam = hhat.eigen().lambda[i];
      const double want = detail::phi_banded(lam, delta, pm, 32.0);
      ck.expect(std::abs(hhat.phi_values()[i] - want) <= 1e-12 * want,
                "weight disagrees with the banded formula");
    }
    const double floor12 = 12.0 * delta * pm;
    ck.expect(hhat.min_phi() >= floor12 - 1e-9, "weight below the dyadic floor");
    if (ratio >= 16.0)
      ck.expect(hhat.min_phi() <= floor12 * (1.0 + 1e-9),
                "16*delta did not attain the floor");

    const Vec v = rng.gaussian_vector(d);
    ck.expect((hhat.apply(hhat.apply_inverse(v)) - v).norm() <= 1e-8 * v.norm(),
              "apply/inverse roundtrip drift");
  }

  Rng grid_rng(102);
  for (int rep = 0; rep < 20; ++rep) {
    const double delta = grid_rng.uniform_log(1e-4, 1.0);
    const double L1 = delta * grid_rng.uniform_log(2.0, 1048576.0);
    const int pm = p_max_index(L1, delta);
    double prev = -1e300;
    bool monotone = true;
    for (int i = 0; i <= 10000; ++i) {
      const double lam = -L1 + 2.0 * L1 * i / 10000.0;
      const double r = lam / detail::phi_banded(lam, delta, pm, 32.0);
      if (r < prev - 1e-12 * std::max(1.0, std::abs(prev))) monotone = false;
      prev = r;
    }
    ck.expect(monotone, "lambda/phi not nondecreasing on the grid");
  }

  Rng band_rng(103);
  for (int rep = 0; rep < 100; ++rep) {
    const double delta = band_rng.uniform_log(1e-4, 1.0);
    const double L1 = delta * band_rng.uniform_log(4.0, 1048576.0);
    const int pm = p_max_index(L1, delta);
    for (int p = 1; p <= 18; ++p) {
      if (std::ldexp(delta, p + 1) > L1) break;
      const BandConstants bc = band_constants(p, pm);
      for (const double u : {0.25, 0.5, 0.75}) {
        const double lam = std::ldexp(delta, p) * (1.0 + u);
        const double r = lam / detail::phi_banded(lam, delta, pm, 32.0);
        ck.expect(r > bc.l && r <= bc.r * (1.0 + 1e-12),
                  "band interior point escapes (l, r]");
      }
    }
  }
  return ck;
}

// 2. Interval projectors under perturbation.  With spectra kept out of the
// guard zones and a perturbation below the margin, the projector comparison
// must accept and satisfy its own bound.
Checker criterion_projectors() {
  Checker ck;
  Rng rng(202);
  const double a = 5.0, b = 11.0, gamma = 1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 6 + static_cast<int>(rng.uniform_int(15));
    const int n_in = 1 + static_cast<int>(rng.uniform_int(d - 1));
    Vec lam(d);
    for (int i = 0; i < n_in; ++i) lam[i] = rng.uniform(6.0, 10.0);
    for (int i = n_in; i < d; ++i)
      lam[i] = rng.uniform01() < 0.5 ? rng.uniform(0.0, 3.5) : rng.uniform(12.5, 15.0);
    const Mat u = rng.random_orthogonal(d);
    const Mat m = u * lam.asDiagonal() * u.transpose();

    const double target = rng.uniform(0.05, 0.4);
    Mat e = rng.gaussian_symmetric(d);
    e *= target / operator_norm_sym(e);
    const Mat mt = m + e;

    const DkReport rep = davis_kahan_check(m, mt, a, b, gamma);
    ck.expect(rep.preconditions_ok, "preconditions rejected: " + rep.report);
    ck.expect(rep.lhs <= rep.rhs + 1e-9, "projector gap exceeds xi/gamma");
    ck.expect(std::abs(rep.xi - target) <= 1e-6 * target + 1e-12,
              "measured perturbation off target");
    ck.expect(rep.count_m == n_in && rep.count_mt == n_in,
              "interval eigenvalue counts disagree");
  }
  return ck;
}

// 3. Finite-difference curvature.  Each estimate costs exactly 2d gradients
// plus the one recorded hessian query and lands within the advertised delta.
Checker criterion_fd() {
  Checker ck;
  Rng rng(303);
  const int dims[] = {5, 20, 50};
  const double deltas[] = {1e-2, 1e-1};
  for (int trial = 0; trial < 100; ++trial) {
    const int d = dims[trial % 3];
    FamilyParams fp;
    fp.name = "quad_cos";
    fp.d = d;
    fp.seed = 7000 + trial;
    fp.num["rotate"] = 1.0;
    const auto obj = make_objective(fp);

    OracleConfig oc;
    oc.mode = OracleMode::finite_difference;
    oc.delta = deltas[(trial / 3) % 2];
    Oracle oracle(*obj, oc);

    const Vec x = 0.3 * rng.gaussian_vector(d);
    const LedgerMark before = mark(oracle.ledger());
    const Mat est = oracle.hessian_estimate(x);
    const LedgerMark used = since(oracle.ledger(), before);

    ck.expect(used.grad == 2LL * d, "estimate cost is not exactly 2d gradients");
    ck.expect(used.hess == 1, "estimate not charged as one hessian query");
    const double err = operator_norm_sym(est - obj->analytic_hessian(x));
    ck.expect(err <= oc.delta, "estimate error above delta");
  }
  return ck;
}

// 4. Momentum run.  Against a noisy curvature estimate with delta as large
// as L1 itself, every run either lands at an eps-critical point or certifies
// the decrease eps^{3/2} / (sqrt(L2) p_max^12), inside the gradient and
// movement budgets.
Checker criterion_momentum() {
  Checker ck;
  for (int seed = 0; seed < 50; ++seed) {
    FamilyParams fp;
    fp.name = "quad_cos";
    fp.d = 10;
    fp.seed = 4000 + seed;
    fp.num["beta"] = 0.5;
    fp.num["a_min"] = 1.0;
    fp.num["a_max"] = 4.0;
    fp.num["rotate"] = 1.0;
    fp.num["x0_radius"] = 3e-3;
    fp.str["x0_dir"] = "random";
    const auto obj = make_objective(fp);

    OracleConfig oc;
    oc.mode = OracleMode::noisy;
    oc.delta = *obj->l1();
    oc.seed = seed;
    Oracle oracle(*obj, oc);

    AgdParams par;
    par.delta = oc.delta;
    par.eps = 1e-2;
    par.L1 = *obj->l1();
    par.L2 = obj->l2();

    const Vec x0 = obj->start_point();
    const Mat h = oracle.hessian_estimate(x0);
    const AgdResult res = critical_or_progress(oracle, x0, h, par);

    ck.expect(res.derived.p_max == 16 && res.derived.K == 2043,
              "derived schedule drifted");
    ck.expect(res.grad_queries <= res.derived.K + 1, "gradient budget exceeded");
    ck.expect(res.movement <= 7.0 * res.derived.B * (1.0 + 1e-9),
              "moved more than 7B");

    const double thresh =
        std::pow(par.eps, 1.5) / (std::sqrt(par.L2) * std::pow(16.0, 12));
    const bool critical = obj->gradient(res.x_out).norm() <= par.eps;
    const bool decreased =
        obj->value(x0) - obj->value(res.x_out) >= thresh * (1.0 - 1e-9);
    ck.expect(critical || decreased, "neither critical nor certified decrease");
  }
  return ck;
}

// 5. Restarted solver.  Exact oracle, known L1: reaches eps-criticality
// within the hessian budget, decreases f by at least
// sqrt(eps^3 / L2) / p_tilde^12 on every non-terminal step, and stays below
// the analytic gradient budget.
Checker criterion_restarted() {
  Checker ck;
  long long worst_grads = 0;
  for (const double eps : {1e-2, 1e-3})
    for (const double n_H : {1.0, 2.0, 4.0})
      for (int seed = 1; seed <= 5; ++seed) {
        FamilyParams fp;
        fp.name = "quad_cos";
        fp.d = 10;
        fp.seed = 5000 + seed;
        fp.num["a_min"] = 50.0;
        fp.num["a_max"] = 100.0;
        fp.num["beta"] = 0.1;
        fp.num["rotate"] = 1.0;
        fp.num["x0_radius"] = 2e-3;
        fp.str["x0_dir"] = "random";
        const auto obj = make_objective(fp);
        Oracle oracle(*obj, OracleConfig{});

        RestartedParams par;
        par.delta = 0.0;
        par.eps = eps;
        par.L1 = *obj->l1();
        par.L2 = obj->l2();
        const Vec x0 = obj->start_point();
        par.Delta = obj->delta_upper(x0);
        par.n_H = n_H;

        const SolverReport rep = restarted_solve(oracle, x0, par);
        worst_grads = std::max(worst_grads, (long long)rep.grad_queries);

        ck.expect(rep.terminated == TermReason::eps_critical, "did not certify");
        ck.expect(rep.final_grad_norm <= eps, "reported gradient above eps");
        ck.expect(obj->gradient(rep.x_out).norm() <= eps, "true gradient above eps");
        ck.expect(rep.hess_queries <= static_cast<long long>(n_H),
                  "hessian budget exceeded");
        ck.expect(oracle.ledger().hess_count == rep.hess_queries &&
                      oracle.ledger().grad_count == rep.grad_queries,
                  "ledger and report disagree");

        const double dec = std::sqrt(eps * eps * eps / par.L2) /
                           std::pow(rep.derived.p_tilde, 12);
        for (size_t t = 0; t + 1 < rep.trace.size(); ++t)
          ck.expect(rep.trace[t].f_value - rep.trace[t + 1].f_value >=
                        dec * (1.0 - 1e-9),
                    "non-terminal step decreased too little");
        if (!rep.trace.empty())
          ck.expect(rep.f_final <= rep.trace.back().f_value + 1e-12,
                    "final value above last traced value");

        const double budget =
            bound_ours_restarted(par.L1, par.L2, par.Delta, eps, n_H, par.delta);
        ck.expect(static_cast<double>(rep.grad_queries) <= budget,
                  "analytic gradient budget exceeded");
      }
  ck.note = "max gradient queries " + std::to_string(worst_grads);
  return ck;
}

// 6. Dispatch without L1.  A single stiff direction far above the cutoff is
// removed by the pseudo-inverse correction; the certificate is exact here
// because the instance is built on dyadic scales.
Checker criterion_reduction() {
  Checker ck;
  FamilyParams fp;
  fp.name = "quad_cos";
  fp.d = 6;
  fp.seed = 606;
  fp.num["a_min"] = 1.0;
  fp.num["a_max"] = 2.0;
  fp.num["beta"] = 0.1;
  fp.num["stiff"] = std::ldexp(1.0, 113);
  fp.num["rotate"] = 0.0;
  fp.num["x0_radius"] = 1e-18;
  fp.num["l1_known"] = 0.0;
  fp.str["x0_dir"] = "elast";
  const auto obj = make_objective(fp);
  ck.expect(!obj->l1().has_value(), "L1 unexpectedly known");

  Oracle oracle(*obj, OracleConfig{});
  const Vec x0 = obj->start_point();
  ProblemSpec spec;
  spec.eps = 0.05;
  spec.L2 = obj->l2();
  spec.Delta = obj->delta_upper(x0);
  spec.n_H = 2.0;
  spec.delta = 0.0;

  const DispatchReport rep = solve(oracle, x0, spec);
  ck.expect(rep.branch == Branch::reduction, "did not pick the reduction branch");
  ck.expect(rep.terminated == TermReason::eps_critical, "did not certify");
  ck.expect(rep.final_grad_norm == 0.0, "stiff gradient not cancelled exactly");
  ck.expect(rep.x_out.norm() == 0.0, "output not exactly the minimizer");
  ck.expect(rep.hess_queries == 1 && rep.grad_queries == 3, "query counts drifted");
  ck.expect(static_cast<double>(rep.grad_queries) <= rep.grad_bound,
            "analytic gradient budget exceeded");

  ck.expect(rep.reduction.has_value(), "reduction report missing");
  if (rep.reduction) {
    const ReductionReport& red = *rep.reduction;
    ck.expect(red.subspace_dim == 5, "soft subspace has wrong rank");
    ck.expect(red.newton_norm == 1e-18, "correction step length drifted");
    const double cap =
        2.0 * std::sqrt(3.0 * red.derived.Delta_out / red.derived.ell);
    ck.expect(red.newton_norm <= cap * (1.0 + 1e-9), "correction step above cap");
    ck.expect(red.tail_grad_norm == 0.0, "gradient mass left on stiff directions");
  }

  bool threw = false;
  try {
    Oracle fresh(*obj, OracleConfig{});
    DispatchOptions opt;
    opt.force_branch = Branch::restarted;
    solve(fresh, x0, spec, opt);
  } catch (const invalid_parameter_error&) {
    threw = true;
  }
  ck.expect(threw, "forcing the L1 branch without L1 did not throw");
  return ck;
}

// 7. Sweep medians.  Larger hessian budgets never cost more gradients at
// fixed accuracy, and the plot carries the reference slope.
Checker criterion_sweep() {
  Checker ck;
  SweepConfig cfg;
  cfg.family.name = "quad_cos";
  cfg.family.d = 4;
  cfg.family.seed = 2;
  cfg.family.num = {{"a_min", 50.0}, {"a_max", 100.0}, {"beta", 0.1},
                    {"x0_radius", 1e-3}, {"rotate", 1.0}};
  cfg.family.str = {{"x0_dir", "random"}};
  cfg.epsilons = {3e-2};
  cfg.budgets = {1.0, 2.0, 4.0, 8.0};
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.threads = 1;

  const auto records = run_sweep(cfg);
  ck.expect(records.size() == 20, "unexpected sweep size");
  for (const auto& r : records) {
    ck.expect(r.terminated == "eps_critical", "sweep run did not certify");
    ck.expect(r.final_grad_norm <= r.epsilon, "sweep run above eps");
    ck.expect(r.hess_queries <= static_cast<long long>(r.n_H),
              "sweep run over hessian budget");
  }
  std::vector<double> med;
  for (const double nh : cfg.budgets) {
    std::vector<double> vals;
    for (const auto& r : records)
      if (r.n_H == nh) vals.push_back(static_cast<double>(r.grad_queries));
    med.push_back(median(vals));
  }
  for (size_t i = 0; i + 1 < med.size(); ++i)
    ck.expect(med[i + 1] <= med[i], "median gradient cost grew with the budget");

  const auto path = (std::filesystem::temp_directory_path() /
                     "critpoint_acceptance_sweep.svg")
                        .string();
  write_sweep_svg(path, records);
  const std::string svg = read_file(path);
  std::remove(path.c_str());
  ck.expect(svg.find("<svg") != std::string::npos, "plot is not an svg");
  ck.expect(svg.find("slope -1/2") != std::string::npos, "reference slope missing");
  return ck;
}

// 8. Budget ratio cap.  Over admissible random instances the ratio of the
// better budget to the geometric mean never exceeds sqrt((1 + sqrt 5) / 2).
Checker criterion_ratio() {
  Checker ck;
  Rng rng(31415);
  double worst = 0.0;
  for (int trial = 0; trial < 100000; ++trial) {
    const double d = rng.uniform_log(1.0, 1e6);
    const double L1 = rng.uniform_log(1e-3, 1e3);
    const double L2 = rng.uniform_log(1e-3, 1e3);
    const double Delta = rng.uniform_log(1e-2, 1e4);
    const double lim = std::min({L1 * L1 / L2,
                                 std::pow(Delta, 2.0 / 3.0) * std::cbrt(L2),
                                 Delta * L2 / L1});
    const double eps = lim * rng.uniform_log(1e-6, 1.0);
    const RatioSample s = b1_ratio(d, L1, L2, Delta, eps);
    ck.expect(std::isfinite(s.ratio) && s.ratio > 0.0, "ratio not finite");
    worst = std::max(worst, s.ratio);
  }
  ck.expect(worst <= b1_limit() + 1e-9, "ratio exceeds the analytic cap");
  ck.note = "max ratio " + std::to_string(worst) + " vs cap " +
            std::to_string(b1_limit());
  return ck;
}

// 9. Reproducibility.  Repeated sweeps serialize to identical bytes and
// match the checked-in reference output.
Checker criterion_reproducible() {
  Checker ck;
  SweepConfig cfg;
  cfg.family.name = "quad_cos";
  cfg.family.d = 3;
  cfg.family.seed = 1;
  cfg.family.num = {{"a_min", 50.0}, {"a_max", 100.0}, {"beta", 0.1},
                    {"x0_radius", 1e-3}, {"rotate", 1.0}};
  cfg.family.str = {{"x0_dir", "random"}};
  cfg.epsilons = {3e-2, 1.5e-2};
  cfg.budgets = {1.0, 2.0};
  cfg.seeds = {1, 2, 3};
  cfg.threads = 1;

  std::stringstream first, second;
  write_csv(first, run_sweep(cfg));
  write_csv(second, run_sweep(cfg));
  ck.expect(first.str() == second.str(), "repeated sweeps differ");

  const std::string golden =
      read_file(std::string(CRITPOINT_SOURCE_DIR) + "/tests/golden/sweep_small.csv");
  ck.expect(!golden.empty(), "reference csv missing");
  ck.expect(first.str() == golden, "sweep differs from the reference csv");
  return ck;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Checker (*fn)();
  };
  const Criterion table[] = {
      {"curvature reweighting keeps the dyadic floor and band order",
       criterion_weights},
      {"interval projectors are stable under hessian perturbation",
       criterion_projectors},
      {"finite-difference curvature meets delta at exactly 2d gradients",
       criterion_fd},
      {"momentum run yields a critical point or a certified decrease",
       criterion_momentum},
      {"restarted solver certifies criticality within the hessian budget",
       criterion_restarted},
      {"dispatch without L1 cancels stiff directions via the cutoff reduction",
       criterion_reduction},
      {"median gradient cost never grows with the hessian budget",
       criterion_sweep},
      {"budget ratio stays below its analytic cap on admissible instances",
       criterion_ratio},
      {"sweeps are bit-reproducible and match the reference output",
       criterion_reproducible},
  };

  bool all_ok = true;
  int rank = 0;
  for (const auto& c : table) {
    ++rank;
    Checker ck;
    try {
      ck = c.fn();
    } catch (const std::exception& e) {
      ck.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const bool ok = ck.failed == 0 && ck.total > 0;
    std::printf("%s  %d/9  %s (%s)\n", ok ? "PASS" : "FAIL", rank, c.name,
                ck.detail().c_str());
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
