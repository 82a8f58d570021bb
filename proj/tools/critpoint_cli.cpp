#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "critpoint/bounds.hpp"
#include "critpoint/config.hpp"
#include "critpoint/selfcheck.hpp"
#include "critpoint/svg.hpp"
#include "critpoint/sweep.hpp"

namespace {

using namespace critpoint;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Same contract as the ini keys: faithful pins scale to 1, practical requires
// an explicit scale in (0, 1].
double resolve_scale(const std::string& mode, bool scale_given, double scale) {
  if (mode == "faithful") {
    if (scale_given && scale != 1.0)
      throw config_error("--scale " + num(scale) + " requires --mode practical");
    return 1.0;
  }
  if (mode == "practical") {
    if (!scale_given) throw config_error("--mode practical requires --scale");
    if (!(scale > 0.0) || scale > 1.0)
      throw config_error("scale must lie in (0, 1], got " + num(scale));
    return scale;
  }
  throw config_error("unknown mode '" + mode + "'");
}

struct SolveArgs {
  std::string family;
  int d = 2;
  double eps = 0.0;
  double nh = 1.0;
  std::string oracle = "exact";
  double delta = 0.0;
  std::string mode = "faithful";
  double scale = 1.0;
  bool scale_given = false;
  std::uint64_t seed = 0;
  std::uint64_t family_seed = 0;
  std::string method = "dispatch";
  std::vector<std::string> params;
};

int cmd_solve(const SolveArgs& a) {
  SweepConfig cfg;
  cfg.family.name = a.family;
  cfg.family.d = a.d;
  cfg.family.seed = a.family_seed;
  for (const std::string& kv : a.params) {
    const auto pos = kv.find('=');
    if (pos == std::string::npos || pos == 0)
      throw config_error("--param expects key=value, got '" + kv + "'");
    const std::string key = trim(kv.substr(0, pos));
    const std::string value = trim(kv.substr(pos + 1));
    if (key == "x0_dir")
      cfg.family.str[key] = value;
    else
      cfg.family.num[key] = parse_double(value);
  }
  if (a.method != "dispatch" && a.method != "restarted" && a.method != "reduction")
    throw config_error("unknown method '" + a.method + "'");
  cfg.method = a.method;
  cfg.epsilons = {a.eps};
  cfg.budgets = {a.nh};
  cfg.seeds = {a.seed};
  cfg.oracle_mode = parse_oracle_mode(a.oracle);
  cfg.oracle_delta = a.delta;
  cfg.scale = resolve_scale(a.mode, a.scale_given, a.scale);

  const RunRecord r = run_single(cfg, a.eps, a.nh, a.seed, 0);

  std::printf("family           %s (d = %d)\n", r.family.c_str(), r.d);
  std::printf("method           %s\n", r.method.c_str());
  std::printf("oracle           %s (delta = %s)\n", r.oracle_mode.c_str(), num(r.delta).c_str());
  const std::string mode_str =
      cfg.scale == 1.0 ? "faithful" : "practical (scale = " + num(cfg.scale) + ")";
  std::printf("mode             %s\n", mode_str.c_str());
  std::printf("epsilon          %s\n", num(r.epsilon).c_str());
  std::printf("n_H              %s\n", num(r.n_H).c_str());
  std::printf("terminated       %s\n", r.terminated.c_str());
  std::printf("final_grad_norm  %.12g\n", r.final_grad_norm);
  std::printf("f_final          %.12g\n", r.f_final);
  std::printf("grad_queries     %lld\n", r.grad_queries);
  std::printf("hess_queries     %lld\n", r.hess_queries);
  std::printf("iterations       %lld\n", r.iterations);
  std::printf("wall_ms          %.3f\n", r.wall_measured_ms);

  if (r.terminated != "eps_critical") {
    std::fprintf(stderr, "error: run stopped with %s before reaching epsilon\n",
                 r.terminated.c_str());
    return 3;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  const SweepConfig cfg = SweepConfig::from_ini(IniFile::load(config_path));
  const std::vector<RunRecord> records = run_sweep(cfg);
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw argument_error("cannot open '" + out_path + "' for writing");
    write_csv(out, records);
  }

  std::printf("%zu runs -> %s\n\n", records.size(), out_path.c_str());
  std::printf("%10s  %10s  %19s\n", "n_H", "runs", "median grad_queries");
  std::set<double> nh_set;
  for (const auto& r : records) nh_set.insert(r.n_H);
  for (const double nh : nh_set) {
    std::vector<double> vals;
    for (const auto& r : records)
      if (r.n_H == nh) vals.push_back(static_cast<double>(r.grad_queries));
    std::printf("%10s  %10zu  %19s\n", num(nh).c_str(), vals.size(),
                num(median(vals)).c_str());
  }
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw argument_error("cannot open '" + csv_path + "'");
  const std::vector<RunRecord> records = read_csv(in);
  if (records.empty()) {
    // Header-only CSV still produces a valid file, just with bare axes.
    SvgPlot plot;
    plot.title = "gradient queries vs hessian budget";
    plot.xlabel = "n_H";
    plot.ylabel = "median gradient queries";
    write_loglog_svg(out_path, plot);
  } else {
    write_sweep_svg(out_path, records);
  }
  std::printf("wrote %s (%zu records)\n", out_path.c_str(), records.size());
  return 0;
}

int cmd_bounds(double d, double L1, double L2, double Delta, double eps, double nh,
               double delta) {
  if (!(d > 0.0) || !(L1 > 0.0) || !(L2 > 0.0) || !(Delta > 0.0) || !(eps > 0.0))
    throw config_error("d, l1, l2, delta-subopt and eps must be positive");
  if (!(nh >= 1.0)) throw config_error("nh must be at least 1");
  if (delta < 0.0) throw config_error("delta must be nonnegative");

  std::printf("gradient-query budgets, absolute constants set to 1\n");
  std::printf("d = %s  L1 = %s  L2 = %s  Delta = %s  eps = %s  n_H = %s  delta = %s\n\n",
              num(d).c_str(), num(L1).c_str(), num(L2).c_str(), num(Delta).c_str(),
              num(eps).c_str(), num(nh).c_str(), num(delta).c_str());

  const struct {
    const char* name;
    double value;
  } rows[] = {
      {"vavasis", bound_vavasis(d, eps)},
      {"li_lin", bound_li_lin(L1, L2, Delta, eps)},
      {"nesterov_polyak", bound_nesterov_polyak(d, L2, Delta, eps)},
      {"doikov", bound_doikov(d, L2, Delta, eps)},
      {"jiang", bound_jiang(d, L1, L2, Delta, eps)},
      {"ours_fd", bound_ours_fd(d, L2, Delta, eps)},
      {"ours_restarted", bound_ours_restarted(L1, L2, Delta, eps, nh, delta)},
      {"ours_reduction", bound_ours_reduction(L2, Delta, eps, nh, delta)},
  };
  for (const auto& row : rows) std::printf("%-16s %14s\n", row.name, num(row.value).c_str());

  const RatioSample s = b1_ratio(d, L1, L2, Delta, eps);
  std::printf("\ntrade-off ratio min(A + d, B) / sqrt(A B) = %s (cap %s)\n",
              num(s.ratio).c_str(), num(b1_limit()).c_str());

  const FdPlan plan = fd_pipeline(d, L2, Delta, eps);
  std::printf("cheapest finite-difference plan: n_H = %s, delta = %s, cost = %s\n",
              num(plan.n_H).c_str(), num(plan.delta).c_str(), num(plan.total_cost).c_str());
  return 0;
}

int cmd_selfcheck() {
  const std::vector<CheckResult> results = run_selfcheck();
  bool all = true;
  for (const auto& r : results) {
    std::printf("%s  %s", r.passed ? "PASS" : "FAIL", r.name.c_str());
    if (!r.detail.empty()) std::printf("  (%s)", r.detail.c_str());
    std::printf("\n");
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "selfcheck passed" : "selfcheck FAILED");
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epsilon-critical points of nonconvex functions from gradient and "
               "approximate-Hessian queries"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "run one solve and print the report");
  solve->add_option("--family", sa.family, "objective family name")->required();
  solve->add_option("--d", sa.d, "problem dimension");
  solve->add_option("--eps", sa.eps, "target gradient norm")->required();
  solve->add_option("--nh", sa.nh, "Hessian-query budget n_H");
  solve->add_option("--oracle", sa.oracle, "oracle mode: exact | zero | noisy | fd");
  solve->add_option("--delta", sa.delta, "oracle accuracy for noisy / fd modes");
  solve->add_option("--mode", sa.mode, "constant mode: faithful | practical");
  CLI::Option* scale_opt =
      solve->add_option("--scale", sa.scale, "constant relaxation in (0, 1], practical mode");
  solve->add_option("--seed", sa.seed, "run seed (noise stream and instance mix)");
  solve->add_option("--family-seed", sa.family_seed, "base seed of the instance family");
  solve->add_option("--method", sa.method, "dispatch | restarted | reduction");
  solve->add_option("--param", sa.params, "extra family key=value, repeatable");

  std::string sweep_config, sweep_out = "results.csv";
  CLI::App* sweep = app.add_subcommand("sweep", "run a config-driven grid to CSV");
  sweep->add_option("--config", sweep_config, "ini experiment file")->required();
  sweep->add_option("--out", sweep_out, "output CSV path");

  std::string plot_csv, plot_out = "tradeoff.svg";
  CLI::App* plot = app.add_subcommand("plot", "render a sweep CSV as a log-log SVG");
  plot->add_option("--csv", plot_csv, "input CSV from sweep")->required();
  plot->add_option("--out", plot_out, "output SVG path");

  double bd = 0.0, bl1 = 0.0, bl2 = 0.0, bdelta_sub = 0.0, beps = 0.0, bnh = 1.0,
         bdelta = 0.0;
  CLI::App* bounds = app.add_subcommand("bounds", "print the query-budget comparison");
  bounds->add_option("--d", bd, "dimension")->required();
  bounds->add_option("--l1", bl1, "gradient Lipschitz constant")->required();
  bounds->add_option("--l2", bl2, "Hessian Lipschitz constant")->required();
  bounds->add_option("--delta-subopt", bdelta_sub, "suboptimality bound Delta")->required();
  bounds->add_option("--eps", beps, "target gradient norm")->required();
  bounds->add_option("--nh", bnh, "Hessian-query budget for our rows");
  bounds->add_option("--delta", bdelta, "Hessian oracle accuracy for our rows");

  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "run the internal consistency battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    sa.scale_given = scale_opt->count() > 0;
    if (solve->parsed()) return cmd_solve(sa);
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
    if (plot->parsed()) return cmd_plot(plot_csv, plot_out);
    if (bounds->parsed()) return cmd_bounds(bd, bl1, bl2, bdelta_sub, beps, bnh, bdelta);
    if (selfcheck->parsed()) return cmd_selfcheck();
  } catch (const config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const argument_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const invalid_parameter_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const unsupported_mode_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const invariant_error& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 3;
  }
  return 0;
}
